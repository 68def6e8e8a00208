#include "fgm/cmatrix.hpp"

#include <cmath>
#include <stdexcept>

namespace fgm {

bool is_hermitian(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double operator_norm(const CMatrix& a) {
  if (a.size() == 0) throw std::invalid_argument("operator_norm: empty matrix");
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

double schatten_norm(const CMatrix& a, double p, double weight) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("schatten_norm: matrix must be square");
  if (!(p >= 1.0)) throw std::invalid_argument("schatten_norm: p must be >= 1");
  if (!(weight > 0.0))
    throw std::invalid_argument("schatten_norm: weight must be positive");
  if (std::isinf(p)) return operator_norm(a);
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& sv = svd.singularValues();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::pow(sv(i), p);
  return std::pow(weight * acc, 1.0 / p);
}

CMatrix partial_trace(const CMatrix& a, int dim_a, int dim_b, bool over_first) {
  const int n = dim_a * dim_b;
  if (a.rows() != n || a.cols() != n)
    throw std::invalid_argument("partial_trace: dimension mismatch");
  if (over_first) {
    CMatrix out = CMatrix::Zero(dim_b, dim_b);
    for (int x = 0; x < dim_a; ++x)
      for (int b = 0; b < dim_b; ++b)
        for (int c = 0; c < dim_b; ++c)
          out(b, c) += a(x * dim_b + b, x * dim_b + c);
    return out;
  }
  CMatrix out = CMatrix::Zero(dim_a, dim_a);
  for (int x = 0; x < dim_b; ++x)
    for (int b = 0; b < dim_a; ++b)
      for (int c = 0; c < dim_a; ++c)
        out(b, c) += a(b * dim_b + x, c * dim_b + x);
  return out;
}

namespace {

CMatrix require_hermitian(const CMatrix& a, const char* who) {
  if (!is_hermitian(a, 1e-10))
    throw std::invalid_argument(std::string(who) + ": input is not Hermitian");
  return (a + a.adjoint()) / 2.0;
}

}  // namespace

double min_eig_hermitian(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(require_hermitian(a, "min_eig_hermitian"),
                                            Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eig_hermitian(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(require_hermitian(a, "max_eig_hermitian"),
                                            Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

void hermitian_eigen(const CMatrix& a, Eigen::VectorXd& values, CMatrix& vectors) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(require_hermitian(a, "hermitian_eigen"));
  values = es.eigenvalues();
  vectors = es.eigenvectors();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = cplx(u(rng), u(rng));
  return out;
}

CMatrix random_hermitian(int n, std::mt19937_64& rng) {
  const CMatrix a = random_matrix(n, n, rng);
  return (a + a.adjoint()) / 2.0;
}

CMatrix random_psd(int n, std::mt19937_64& rng) {
  const CMatrix a = random_matrix(n, n, rng);
  return (a * a.adjoint()) / static_cast<double>(n);
}

}  // namespace fgm
