#include "fgm/superop.hpp"

#include <stdexcept>

namespace fgm {

namespace {

constexpr int kDimCap = 32;

void check_dim(int dim) {
  if (dim <= 0 || dim > kDimCap)
    throw std::invalid_argument("superop: dimension out of range (cap 32)");
}

CMatrix basis_unit(int n, int k, int l) {
  CMatrix e = CMatrix::Zero(n, n);
  e(k, l) = 1.0;
  return e;
}

}  // namespace

SuperOperator superop_from_action(
    int dim, const std::function<CMatrix(const CMatrix&)>& action) {
  check_dim(dim);
  SuperOperator t;
  t.dim = dim;
  t.choi = CMatrix::Zero(dim * dim, dim * dim);
  for (int k = 0; k < dim; ++k)
    for (int l = 0; l < dim; ++l) {
      const CMatrix out = action(basis_unit(dim, k, l));
      if (out.rows() != dim || out.cols() != dim)
        throw std::invalid_argument("superop: action changed dimensions");
      t.choi.block(k * dim, l * dim, dim, dim) = out;
    }
  return t;
}

SuperOperator identity_superop(int dim) {
  return superop_from_action(dim, [](const CMatrix& x) { return x; });
}

SuperOperator transpose_superop(int dim) {
  return superop_from_action(
      dim, [](const CMatrix& x) { return CMatrix(x.transpose()); });
}

SuperOperator superop_add(const SuperOperator& a, const SuperOperator& b,
                          cplx ca, cplx cb) {
  if (a.dim != b.dim) throw std::invalid_argument("superop: dimension mismatch");
  SuperOperator t;
  t.dim = a.dim;
  t.choi = ca * a.choi + cb * b.choi;
  return t;
}

SuperOperator superop_compose(const SuperOperator& a, const SuperOperator& b) {
  if (a.dim != b.dim) throw std::invalid_argument("superop: dimension mismatch");
  const int n = a.dim;
  SuperOperator t;
  t.dim = n;
  t.choi = CMatrix::Zero(n * n, n * n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      t.choi.block(k * n, l * n, n, n) =
          a.apply(b.choi.block(k * n, l * n, n, n));
  return t;
}

CMatrix SuperOperator::apply(const CMatrix& x) const {
  const int n = dim;
  if (x.rows() != n || x.cols() != n)
    throw std::invalid_argument("superop apply: dimension mismatch");
  CMatrix out = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      if (x(k, l) != cplx(0.0, 0.0))
        out += x(k, l) * choi.block(k * n, l * n, n, n);
  return out;
}

SuperOperator circ_map(const SuperOperator& t) {
  SuperOperator c;
  c.dim = t.dim;
  c.choi = t.choi.adjoint();
  return c;
}

SuperOperator adjoint_map(const SuperOperator& t) {
  const int n = t.dim;
  SuperOperator a;
  a.dim = n;
  a.choi = CMatrix::Zero(n * n, n * n);
  // T*(E_cd)(k,l) = Tr(T(E_lk) E_cd) = J[(l,d),(k,c)].
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          a.choi(c * n + k, d * n + l) = t.choi(l * n + d, k * n + c);
  return a;
}

SuperOperator hs_adjoint(const SuperOperator& t) {
  const int n = t.dim;
  SuperOperator a;
  a.dim = n;
  a.choi = CMatrix::Zero(n * n, n * n);
  // T'(E_cd)(k,l) = conj(T(E_kl)(c,d)) = conj(J[(k,c),(l,d)]).
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          a.choi(c * n + k, d * n + l) = std::conj(t.choi(k * n + c, l * n + d));
  return a;
}

CpResult is_completely_positive(const SuperOperator& t, double tol) {
  if (tol < 0.0) throw std::invalid_argument("is_completely_positive: tol < 0");
  CpResult r;
  const CMatrix herm = (t.choi + t.choi.adjoint()) / 2.0;
  r.witness = min_eig_hermitian(herm);
  const double defect = (t.choi - t.choi.adjoint()).cwiseAbs().maxCoeff();
  r.cp = defect <= 1e-10 && r.witness >= -tol;
  return r;
}

SuperOperator tensor_with_identity(const SuperOperator& t, int m) {
  if (m < 1) throw std::invalid_argument("tensor_with_identity: m < 1");
  const int n = t.dim;
  check_dim(m * n);
  if (m == 1) return t;
  const int big = m * n;
  SuperOperator out;
  out.dim = big;
  out.choi = CMatrix::Zero(big * big, big * big);
  // (id (x) T)(E_ij (x) E_ab) = E_ij (x) T(E_ab); composite index i*n + a.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const int row_in = i * n + a, col_in = j * n + b;
          for (int ap = 0; ap < n; ++ap)
            for (int bp = 0; bp < n; ++bp)
              out.choi(row_in * big + i * n + ap, col_in * big + j * n + bp) =
                  t.choi(a * n + ap, b * n + bp);
        }
  return out;
}

}  // namespace fgm
