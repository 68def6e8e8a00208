#include "fgm/isotypic.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace fgm {

namespace {

// Attempts the decomposition with one random draw; returns false when the
// draw was degenerate (eigenvalue collision across inequivalent classes).
bool try_decompose(const FiniteGroup& g, unsigned seed,
                   IsotypicDecomposition& out) {
  const int n = g.order;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  // Generic Hermitian element of the commutant of lambda: R = sum_r c_r rho_r,
  // Hermitized (rho_r^* = rho_{r^-1} keeps the algebra stable).
  CMatrix r = CMatrix::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    const cplx c(unif(rng), unif(rng));
    r += c * right_translation_matrix(g, s);
  }
  const CMatrix radj = r.adjoint();
  r = (r + radj) / 2.0;

  Eigen::SelfAdjointEigenSolver<CMatrix> es(r);
  if (es.info() != Eigen::Success) return false;
  const Eigen::VectorXd vals = es.eigenvalues();
  const CMatrix vecs = es.eigenvectors();

  // Cluster eigenvalues; each cluster spans one invariant subspace.
  const double scale = std::max(1.0, std::max(std::abs(vals(0)),
                                              std::abs(vals(n - 1))));
  const double gap = 1e-7 * scale;
  std::vector<std::pair<int, int>> clusters;  // [begin, end)
  int begin = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || vals(i) - vals(i - 1) > gap) {
      clusters.emplace_back(begin, i);
      begin = i;
    }
  }

  std::vector<CMatrix> lambdas(n);
  for (int s = 0; s < n; ++s) lambdas[s] = lambda_matrix(g, s);

  struct Candidate {
    CMatrix basis;
    int dim;
    std::vector<CMatrix> rep;
    std::vector<cplx> character;
  };
  std::vector<Candidate> cands;
  const double tol = 1e-8;
  for (const auto& [b, e] : clusters) {
    Candidate c;
    c.dim = e - b;
    c.basis = vecs.middleCols(b, c.dim);
    c.rep.resize(n);
    c.character.resize(n);
    double char_norm_sq = 0.0;
    for (int s = 0; s < n; ++s) {
      const CMatrix image = lambdas[s] * c.basis;
      c.rep[s] = c.basis.adjoint() * image;
      // Invariance: lambda_s maps the subspace into itself.
      if ((image - c.basis * c.rep[s]).cwiseAbs().maxCoeff() > tol)
        return false;
      // Unitarity of the restricted representation.
      if ((c.rep[s].adjoint() * c.rep[s] - CMatrix::Identity(c.dim, c.dim))
              .cwiseAbs()
              .maxCoeff() > tol)
        return false;
      c.character[s] = c.rep[s].trace();
      char_norm_sq += std::norm(c.character[s]);
    }
    // Irreducibility: the character has unit norm, (1/|G|) sum |chi|^2 = 1.
    // A cluster that merged two inequivalent classes fails this.
    if (std::abs(char_norm_sq / n - 1.0) > 1e-6) return false;
    cands.push_back(std::move(c));
  }

  // Group clusters carrying the same character into one class; inequivalent
  // irreducible characters differ by O(1), so a coarse threshold is safe.
  out.group = g;
  out.classes.clear();
  std::vector<bool> used(cands.size(), false);
  for (size_t i = 0; i < cands.size(); ++i) {
    if (used[i]) continue;
    int mult = 0;
    for (size_t j = i; j < cands.size(); ++j) {
      if (used[j] || cands[j].dim != cands[i].dim) continue;
      double diff = 0.0;
      for (int s = 0; s < n; ++s)
        diff = std::max(diff,
                        std::abs(cands[j].character[s] - cands[i].character[s]));
      if (diff < 1e-4) {
        used[j] = true;
        ++mult;
      }
    }
    IrrepClass cls;
    cls.basis = cands[i].basis;
    cls.dim = cands[i].dim;
    cls.multiplicity = mult;
    cls.rep = cands[i].rep;
    cls.character = cands[i].character;
    out.classes.push_back(std::move(cls));
  }

  // Regular-representation bookkeeping: multiplicity equals dimension and the
  // squares sum to |G|.
  int total = 0;
  for (const auto& cls : out.classes) {
    if (cls.multiplicity != cls.dim) return false;
    total += cls.dim * cls.multiplicity;
  }
  return total == n;
}

}  // namespace

IsotypicDecomposition isotypic_decomposition(const FiniteGroup& g,
                                             unsigned seed) {
  IsotypicDecomposition out;
  for (unsigned attempt = 0; attempt < 24; ++attempt) {
    if (try_decompose(g, seed + attempt, out)) return out;
  }
  throw std::runtime_error(
      "isotypic_decomposition: no generic commutant element found for group " +
      g.name);
}

bool is_right_covariant(const SuperOperator& t, const FiniteGroup& g,
                        double tol) {
  const int n = g.order;
  if (t.dim != n)
    throw std::invalid_argument(
        "is_right_covariant: superoperator dimension does not match |G|");
  const CMatrix& j = t.choi;
  const double scale = std::max(1.0, j.cwiseAbs().maxCoeff());
  const auto idx = [n](int k, int a) { return k * n + a; };
  for (int r = 1; r < n; ++r) {
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a)
        for (int l = 0; l < n; ++l)
          for (int b = 0; b < n; ++b) {
            const cplx d = j(idx(k, a), idx(l, b)) -
                           j(idx(g.op(k, r), g.op(a, r)),
                             idx(g.op(l, r), g.op(b, r)));
            if (std::abs(d) > tol * scale) return false;
          }
  }
  return true;
}

std::vector<CMatrix> covariant_blocks(const CMatrix& x,
                                      const IsotypicDecomposition& iso,
                                      double tol) {
  const FiniteGroup& g = iso.group;
  const int n = g.order;
  if (x.rows() != n * n || x.cols() != n * n)
    throw std::invalid_argument("covariant_blocks: matrix side must be |G|^2");
  SuperOperator probe;
  probe.dim = n;
  probe.choi = x;
  if (!is_right_covariant(probe, g, tol))
    throw std::invalid_argument(
        "covariant_blocks: matrix is not right-covariant");

  // Commutant coordinates: B_g(a,b) = X[(a g)n + g, b n].
  std::vector<CMatrix> bmats(n);
  for (int s = 0; s < n; ++s) {
    CMatrix b(n, n);
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) b(a, c) = x(g.op(a, s) * n + s, c * n);
    bmats[s] = std::move(b);
  }

  std::vector<CMatrix> blocks;
  blocks.reserve(iso.classes.size());
  for (const auto& cls : iso.classes) {
    const int d = cls.dim;
    CMatrix blk = CMatrix::Zero(n * d, n * d);
    for (int s = 0; s < n; ++s) blk += kron(bmats[s], cls.rep[s]);
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

}  // namespace fgm
