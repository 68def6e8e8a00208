#ifndef FGM_ENSEMBLES_HPP
#define FGM_ENSEMBLES_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "fgm/amen.hpp"
#include "fgm/cmatrix.hpp"
#include "fgm/group.hpp"
#include "fgm/schur.hpp"
#include "fgm/superop.hpp"
#include "fgm/vn.hpp"

// Seeded input families for verification runs. Real and imaginary parts are
// drawn independently and uniformly from [-1, 1]; the targeted families
// (positive definite, self-circ-adjoint, completely positive, covariant)
// realize their defining structure by construction rather than by rejection,
// so every draw satisfies the hypothesis exactly.
namespace fgm {

inline CVector random_coeffs(const FiniteGroup& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CVector f(g.order);
  for (int s = 0; s < g.order; ++s) f(s) = cplx(u(rng), u(rng));
  return f;
}

inline GroupSymbol random_symbol(const FiniteGroup& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(g.order);
  for (auto& x : v) x = cplx(u(rng), u(rng));
  return make_symbol(g, v);
}

// phi(s) = sum_t xi(s t) conj(xi(t)): a Gram construction, positive definite
// with phi(e) = |xi|^2.
inline GroupSymbol random_pd_symbol(const FiniteGroup& g,
                                    std::mt19937_64& rng) {
  const CVector xi = random_coeffs(g, rng);
  std::vector<cplx> v(g.order);
  for (int s = 0; s < g.order; ++s) {
    cplx acc{0.0, 0.0};
    for (int t = 0; t < g.order; ++t) acc += xi(g.op(s, t)) * std::conj(xi(t));
    v[s] = acc;
  }
  return make_symbol(g, v);
}

// Symmetrized so that phi(s^-1) = conj(phi(s)); the hypothesis of the Jordan
// decomposition program.
inline GroupSymbol random_selfadjoint_symbol(const FiniteGroup& g,
                                             std::mt19937_64& rng) {
  const GroupSymbol a = random_symbol(g, rng);
  std::vector<cplx> v(g.order);
  for (int s = 0; s < g.order; ++s)
    v[s] = 0.5 * (a.values[s] + std::conj(a.values[g.inv(s)]));
  return make_symbol(g, v);
}

inline VnElement random_vn(const FiniteGroup& g, std::mt19937_64& rng) {
  return lambda(g, random_coeffs(g, rng));
}

// a* a for random a in VN(G): positive inside the group algebra.
inline VnElement random_psd_vn(const FiniteGroup& g, std::mt19937_64& rng) {
  const VnElement a = random_vn(g, rng);
  return vn_mul(vn_adjoint(a), a);
}

// A generic superoperator: every Choi entry drawn independently.
inline SuperOperator random_superop(int dim, std::mt19937_64& rng) {
  SuperOperator t;
  t.dim = dim;
  t.choi = random_matrix(dim * dim, dim * dim, rng);
  return t;
}

// Kraus form sum_k A_k x A_k^*: completely positive by construction.
inline SuperOperator random_cp_superop(int dim, std::mt19937_64& rng,
                                       int kraus = 2) {
  std::vector<CMatrix> as;
  as.reserve(kraus);
  for (int k = 0; k < kraus; ++k) as.push_back(random_matrix(dim, dim, rng));
  SuperOperator t;
  t.dim = dim;
  t.choi = CMatrix::Zero(dim * dim, dim * dim);
  for (int k = 0; k < dim; ++k)
    for (int l = 0; l < dim; ++l) {
      CMatrix blk = CMatrix::Zero(dim, dim);
      for (const CMatrix& a : as) blk += a.col(k) * a.col(l).adjoint();
      t.choi.block(k * dim, l * dim, dim, dim) = blk;
    }
  return t;
}

// A right-covariant superoperator: the Choi matrix depends on ((k,a),(l,b))
// only through the right-translation invariants (k a^-1, l b^-1, a b^-1), so
// J[(k,a),(l,b)] = B_{a b^-1}(k a^-1, l b^-1) for freely drawn matrices B_g.
// Right covariance holds exactly, and so does covariance of the trace dual.
inline SuperOperator random_covariant_superop(const FiniteGroup& g,
                                              std::mt19937_64& rng) {
  const int n = g.order;
  std::vector<CMatrix> b(n);
  for (int s = 0; s < n; ++s) b[s] = random_matrix(n, n, rng);
  SuperOperator t;
  t.dim = n;
  t.choi = CMatrix(n * n, n * n);
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int l = 0; l < n; ++l)
        for (int bb = 0; bb < n; ++bb)
          t.choi(k * n + a, l * n + bb) =
              b[g.op(a, g.inv(bb))](g.op(k, g.inv(a)), g.op(l, g.inv(bb)));
  return t;
}

inline BiSymbol random_bisymbol(const FiniteGroup& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(static_cast<size_t>(g.order) * g.order);
  for (auto& x : v) x = cplx(u(rng), u(rng));
  return make_bisymbol(g, v);
}

// psi = A^* A as a |G| x |G| matrix: positive semidefinite, so the Schur
// multiplier with this bi-symbol is completely positive.
inline BiSymbol random_psd_bisymbol(const FiniteGroup& g,
                                    std::mt19937_64& rng) {
  const int n = g.order;
  const CMatrix a = random_matrix(n, n, rng);
  const CMatrix m = a.adjoint() * a;
  std::vector<cplx> v(static_cast<size_t>(n) * n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) v[static_cast<size_t>(s) * n + t] = m(s, t);
  return make_bisymbol(g, v);
}

// A normalized density supported on `support_size` distinct carrier points
// (always including the identity, so smoothing stays inside a doubled ball).
// With `index_cap` > 0 the support is drawn from carrier indices below the
// cap — for ball carriers, the radius-first ordering makes [0, cap) a ball.
inline DensityFn random_density(const Carrier& c, int support_size,
                                std::mt19937_64& rng, int index_cap = 0) {
  const int hi = index_cap > 0 ? index_cap : c.size();
  std::uniform_int_distribution<int> pick(0, hi - 1);
  std::vector<int> support{c.identity()};
  while (static_cast<int>(support.size()) < support_size) {
    const int cand = pick(rng);
    bool seen = false;
    for (int s : support) seen = seen || s == cand;
    if (!seen) support.push_back(cand);
  }
  std::sort(support.begin(), support.end());
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> w(support.size());
  double total = 0.0;
  for (double& x : w) {
    x = u(rng);
    total += x;
  }
  for (double& x : w) x /= total;
  return make_density(c, std::move(support), std::move(w));
}

}  // namespace fgm

#endif  // FGM_ENSEMBLES_HPP
