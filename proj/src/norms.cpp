#include "fgm/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fgm/isotypic.hpp"
#include "fgm/schur.hpp"
#include "fgm/sdp.hpp"
#include "json.hpp"

namespace fgm {

namespace {

constexpr double kGapTol = 1e-8;
constexpr double kFeasTol = 1e-8;

// Accumulates dense Hermitian contributions per block and emits the upper
// triangle as Hermitian-symmetrized triplets. Contributions must always be
// entered together with their mirror images; emit() verifies Hermitian
// structure and drops exact zeros.
class BlockAccumulator {
 public:
  explicit BlockAccumulator(const std::vector<int>& dims) {
    mats_.reserve(dims.size());
    for (int d : dims) mats_.push_back(CMatrix::Zero(d, d));
  }

  void add(int block, int r, int c, cplx v) { mats_[block](r, c) += v; }

  // Adds m at (row0, col0) and its adjoint at the mirrored position.
  void add_corner(int block, int row0, int col0, const CMatrix& m) {
    mats_[block].block(row0, col0, m.rows(), m.cols()) += m;
    mats_[block].block(col0, row0, m.cols(), m.rows()) += m.adjoint().eval();
  }

  void add_hermitian(int block, int row0, const CMatrix& m) {
    mats_[block].block(row0, row0, m.rows(), m.cols()) += m;
  }

  std::vector<SdpTriplet> emit() const {
    std::vector<SdpTriplet> out;
    for (int b = 0; b < static_cast<int>(mats_.size()); ++b) {
      const CMatrix& m = mats_[b];
      for (int r = 0; r < m.rows(); ++r) {
        if (std::abs(m(r, r).imag()) > 1e-11)
          throw std::logic_error("norm SDP assembly: non-real diagonal");
        if (m(r, r) != cplx(0.0, 0.0))
          out.push_back({b, r, r, cplx(m(r, r).real(), 0.0)});
        for (int c = r + 1; c < m.cols(); ++c) {
          if (std::abs(m(c, r) - std::conj(m(r, c))) > 1e-11)
            throw std::logic_error("norm SDP assembly: non-Hermitian block");
          if (m(r, c) != cplx(0.0, 0.0)) out.push_back({b, r, c, m(r, c)});
        }
      }
    }
    return out;
  }

 private:
  std::vector<CMatrix> mats_;
};

// Hermitian-matrix variable bookkeeping: a side-d Hermitian matrix is d^2
// real variables (diagonal entries, then Re/Im of each upper entry). The
// pattern of variable v is returned as entries (r, c, z) including mirrors,
// so that H += sum_v y_v * pattern_v stays Hermitian.
struct HermEntry {
  int r, c;
  cplx z;
};

std::vector<HermEntry> herm_var_pattern(int side, int v) {
  // Layout: v in [0, side) -> diagonal (v, v); then for each r < c in
  // row-major upper order, two variables (Re, Im).
  if (v < side) return {{v, v, cplx(1.0, 0.0)}};
  const int pair = (v - side) / 2;
  const bool imag = ((v - side) % 2) != 0;
  int seen = 0;
  for (int r = 0; r < side; ++r)
    for (int c = r + 1; c < side; ++c) {
      if (seen++ != pair) continue;
      if (!imag) return {{r, c, {1.0, 0.0}}, {c, r, {1.0, 0.0}}};
      return {{r, c, {0.0, 1.0}}, {c, r, {0.0, -1.0}}};
    }
  throw std::logic_error("herm_var_pattern: index out of range");
}

CMatrix herm_from_solution(int side, const std::vector<double>& y, int offset) {
  CMatrix h = CMatrix::Zero(side, side);
  for (int v = 0; v < side * side; ++v)
    for (const HermEntry& e : herm_var_pattern(side, v))
      h(e.r, e.c) += y[offset + v] * e.z;
  return h;
}

SdpSolution solve_or_throw(const SdpProblem& p, const char* what) {
  SdpSolution sol = solve_sdp(p, kGapTol, kFeasTol);
  if (sol.status != SdpStatus::optimal)
    throw std::runtime_error(std::string(what) +
                             ": SDP did not reach optimality (" +
                             sol.diagnostics + ")");
  return sol;
}

// ---------------------------------------------------------------------------
// Structural detection
// ---------------------------------------------------------------------------

// A Schur multiplier's Choi matrix is supported on entries
// ((k,k),(l,l)); the symbol is read off that diagonal pattern.
bool schur_pattern(const SuperOperator& t, CMatrix* symbol_out,
                   double tol = 1e-10) {
  const int n = t.dim;
  const double scale = std::max(1.0, t.choi.cwiseAbs().maxCoeff());
  for (int p = 0; p < n * n; ++p)
    for (int q = 0; q < n * n; ++q) {
      const int k = p / n, a = p % n, l = q / n, b = q % n;
      if (k == a && l == b) continue;
      if (std::abs(t.choi(p, q)) > tol * scale) return false;
    }
  if (symbol_out) {
    symbol_out->resize(n, n);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        (*symbol_out)(k, l) = t.choi(k * n + k, l * n + l);
  }
  return true;
}

bool is_zero_map(const SuperOperator& t) {
  return t.choi.size() == 0 || t.choi.cwiseAbs().maxCoeff() == 0.0;
}

// ---------------------------------------------------------------------------
// Two-corner programs on the full Choi matrix. One builder serves both the
// diamond norm (trace over the output factor) and the decomposable norm
// (trace over the input factor): minimize t with
//   [[M1, J],[J*, M2]] >= 0,  t I - ptr(M_i) >= 0.
// ---------------------------------------------------------------------------

struct TwoCornerResult {
  double value;
  CMatrix m1, m2;
  NormStats stats;
};

TwoCornerResult solve_two_corner(const CMatrix& j, int n, bool trace_first,
                                 const char* what) {
  const int nsq = n * n;
  const int per_block = nsq * nsq;
  SdpProblem p;
  p.block_dims = {2 * nsq, n, n};
  const int m = 1 + 2 * per_block;
  p.objective.assign(m, 0.0);
  p.objective[0] = 1.0;
  p.constraints.resize(m);

  {
    BlockAccumulator acc(p.block_dims);
    for (int i = 0; i < n; ++i) {
      acc.add(1, i, i, 1.0);
      acc.add(2, i, i, 1.0);
    }
    p.constraints[0] = acc.emit();
  }
  for (int side = 0; side < 2; ++side) {
    const int offset = side * nsq;        // corner of the big block
    const int trace_block = 1 + side;
    for (int v = 0; v < per_block; ++v) {
      BlockAccumulator acc(p.block_dims);
      for (const HermEntry& e : herm_var_pattern(nsq, v)) {
        acc.add(0, offset + e.r, offset + e.c, e.z);
        const int k = e.r / n, a = e.r % n, l = e.c / n, b = e.c % n;
        if (trace_first && k == l) acc.add(trace_block, a, b, -e.z);
        if (!trace_first && a == b) acc.add(trace_block, k, l, -e.z);
      }
      p.constraints[1 + side * per_block + v] = acc.emit();
    }
  }
  {
    BlockAccumulator acc(p.block_dims);
    acc.add_corner(0, 0, nsq, j);
    p.constant_term = acc.emit();
  }

  const SdpSolution sol = solve_or_throw(p, what);
  TwoCornerResult res;
  res.value = sol.primal_value;
  res.m1 = herm_from_solution(nsq, sol.y, 1);
  res.m2 = herm_from_solution(nsq, sol.y, 1 + per_block);
  res.stats.gap = sol.duality_gap;
  res.stats.iterations = sol.iterations;
  return res;
}

// ---------------------------------------------------------------------------
// Reduced diamond program for right-covariant maps. In commutant coordinates
// a covariant matrix is sum_g B_g (x) lambda_g; per irreducible class pi the
// big block becomes sum_g B_g (x) rep_pi[g] and the partial-trace constraint
// becomes t I - sum_g h(g) rep_pi[g] with h(g) = sum_r B_e(g r, r).
// ---------------------------------------------------------------------------

// Variable layout for one covariant Hermitian matrix: per group element in
// canonical order (identity and involutions: Hermitian B_g, d^2 real vars
// each over matrix entries; inverse pairs: full complex B_g, 2 d^2 vars,
// with B_{g^-1} = B_g^* implied). Total |G| * n^2 real variables.
struct CovariantVarTable {
  // Each variable: list of (group element, entry r, entry c, coefficient).
  struct Touch {
    int g, r, c;
    cplx z;
  };
  std::vector<std::vector<Touch>> vars;

  explicit CovariantVarTable(const FiniteGroup& grp) {
    const int n = grp.order;
    for (int g = 0; g < n; ++g) {
      const int gi = grp.inv(g);
      if (gi < g) continue;  // covered by its inverse
      if (gi == g) {
        // Hermitian B_g: diagonal, then Re/Im per upper entry.
        for (int r = 0; r < n; ++r) vars.push_back({{g, r, r, {1.0, 0.0}}});
        for (int r = 0; r < n; ++r)
          for (int c = r + 1; c < n; ++c) {
            vars.push_back({{g, r, c, {1.0, 0.0}}, {g, c, r, {1.0, 0.0}}});
            vars.push_back({{g, r, c, {0.0, 1.0}}, {g, c, r, {0.0, -1.0}}});
          }
      } else {
        // Free B_g, mirrored into B_{g^-1} = B_g^*.
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) {
            vars.push_back({{g, r, c, {1.0, 0.0}}, {gi, c, r, {1.0, 0.0}}});
            vars.push_back({{g, r, c, {0.0, 1.0}}, {gi, c, r, {0.0, -1.0}}});
          }
      }
    }
  }
};

double solve_reduced_diamond(const SuperOperator& dual,
                             const IsotypicDecomposition& iso,
                             NormStats* stats) {
  const FiniteGroup& grp = iso.group;
  const int n = grp.order;
  const int nclasses = static_cast<int>(iso.classes.size());

  const std::vector<CMatrix> jblocks = covariant_blocks(dual.choi, iso, 1e-8);

  // Blocks: per class c, 3c = [[Y0, J_c],[J_c*, Y1]] (side 2 n d), 3c+1 and
  // 3c+2 = the two partial-trace constraints (side d).
  SdpProblem p;
  for (int c = 0; c < nclasses; ++c) {
    const int d = iso.classes[c].dim;
    p.block_dims.push_back(2 * n * d);
    p.block_dims.push_back(d);
    p.block_dims.push_back(d);
  }

  const CovariantVarTable table(grp);
  const int per_side = static_cast<int>(table.vars.size());
  const int m = 1 + 2 * per_side;
  p.objective.assign(m, 0.0);
  p.objective[0] = 1.0;
  p.constraints.resize(m);

  {
    BlockAccumulator acc(p.block_dims);
    for (int c = 0; c < nclasses; ++c) {
      const int d = iso.classes[c].dim;
      for (int i = 0; i < d; ++i) {
        acc.add(3 * c + 1, i, i, 1.0);
        acc.add(3 * c + 2, i, i, 1.0);
      }
    }
    p.constraints[0] = acc.emit();
  }

  for (int side = 0; side < 2; ++side) {
    for (int v = 0; v < per_side; ++v) {
      BlockAccumulator acc(p.block_dims);
      for (const auto& touch : table.vars[v]) {
        for (int c = 0; c < nclasses; ++c) {
          const int d = iso.classes[c].dim;
          const CMatrix& rep = iso.classes[c].rep[touch.g];
          const int off = side * n * d;
          for (int i = 0; i < d; ++i)
            for (int jj = 0; jj < d; ++jj) {
              const cplx val = touch.z * rep(i, jj);
              if (val != cplx(0.0, 0.0))
                acc.add(3 * c, off + touch.r * d + i, off + touch.c * d + jj,
                        val);
            }
          // Partial trace over the output factor: only B_e contributes,
          // and entry (r, c) of B_e lands on rep[r c^-1].
          if (touch.g == grp.identity) {
            const int gp = grp.op(touch.r, grp.inv(touch.c));
            const CMatrix& rep_gp = iso.classes[c].rep[gp];
            for (int i = 0; i < d; ++i)
              for (int jj = 0; jj < d; ++jj) {
                const cplx val = -touch.z * rep_gp(i, jj);
                if (val != cplx(0.0, 0.0))
                  acc.add(3 * c + 1 + side, i, jj, val);
              }
          }
        }
      }
      p.constraints[1 + side * per_side + v] = acc.emit();
    }
  }

  {
    BlockAccumulator acc(p.block_dims);
    for (int c = 0; c < nclasses; ++c)
      acc.add_corner(3 * c, 0, iso.classes[c].dim * n, jblocks[c]);
    p.constant_term = acc.emit();
  }

  const SdpSolution sol = solve_or_throw(p, "cb_norm (reduced diamond)");
  if (stats) {
    stats->gap = sol.duality_gap;
    stats->iterations = sol.iterations;
  }
  return sol.primal_value;
}

// ---------------------------------------------------------------------------
// Schur-symbol two-sided program: minimize t with [[A, Psi],[Psi*, C]] >= 0
// and A(i,i) <= t, C(j,j) <= t. This is simultaneously the Haagerup
// factorization value (= cb norm) and the decomposable norm with Schur
// witnesses A, C; for Schur multipliers the two coincide.
// ---------------------------------------------------------------------------

struct SchurTwoSidedResult {
  double value;
  CMatrix a, c;
  NormStats stats;
};

SchurTwoSidedResult solve_schur_two_sided(const CMatrix& psi,
                                          const char* what) {
  const int n = static_cast<int>(psi.rows());
  SdpProblem p;
  p.block_dims.assign(1, 2 * n);
  for (int i = 0; i < 2 * n; ++i) p.block_dims.push_back(1);

  const int per_side = n * n;
  const int m = 1 + 2 * per_side;
  p.objective.assign(m, 0.0);
  p.objective[0] = 1.0;
  p.constraints.resize(m);
  {
    BlockAccumulator acc(p.block_dims);
    for (int i = 0; i < 2 * n; ++i) acc.add(1 + i, 0, 0, 1.0);
    p.constraints[0] = acc.emit();
  }
  for (int side = 0; side < 2; ++side) {
    const int offset = side * n;
    for (int v = 0; v < per_side; ++v) {
      BlockAccumulator acc(p.block_dims);
      for (const HermEntry& e : herm_var_pattern(n, v)) {
        acc.add(0, offset + e.r, offset + e.c, e.z);
        if (e.r == e.c) acc.add(1 + offset + e.r, 0, 0, -e.z);
      }
      p.constraints[1 + side * per_side + v] = acc.emit();
    }
  }
  {
    BlockAccumulator acc(p.block_dims);
    acc.add_corner(0, 0, n, psi);
    p.constant_term = acc.emit();
  }

  const SdpSolution sol = solve_or_throw(p, what);
  SchurTwoSidedResult res;
  res.value = sol.primal_value;
  res.a = herm_from_solution(n, sol.y, 1);
  res.c = herm_from_solution(n, sol.y, 1 + per_side);
  res.stats.gap = sol.duality_gap;
  res.stats.iterations = sol.iterations;
  return res;
}

SuperOperator schur_from_matrix(const CMatrix& weights) {
  const int n = static_cast<int>(weights.rows());
  SuperOperator s;
  s.dim = n;
  s.choi = CMatrix::Zero(n * n, n * n);
  s.tag = SuperOperator::Tag::schur;
  s.tag_values.resize(n * n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      s.choi(k * n + k, l * n + l) = weights(k, l);
      s.tag_values[k * n + l] = weights(k, l);
    }
  return s;
}

// ---------------------------------------------------------------------------
// Group-symbol variable helpers for the B(G) programs. A Hermitian-symmetric
// symbol (psi(g^-1) = conj psi(g)) has |G| real parameters: psi(e), one real
// parameter per involution, Re/Im per inverse pair.
// ---------------------------------------------------------------------------

struct SymbolVarTable {
  struct Touch {
    int g;
    cplx z;
  };
  std::vector<std::vector<Touch>> vars;
  int identity_var = -1;

  explicit SymbolVarTable(const FiniteGroup& grp) {
    const int n = grp.order;
    for (int g = 0; g < n; ++g) {
      const int gi = grp.inv(g);
      if (gi < g) continue;
      if (g == grp.identity) {
        identity_var = static_cast<int>(vars.size());
        vars.push_back({{g, {1.0, 0.0}}});
      } else if (gi == g) {
        vars.push_back({{g, {1.0, 0.0}}});
      } else {
        vars.push_back({{g, {1.0, 0.0}}, {gi, {1.0, 0.0}}});
        vars.push_back({{g, {0.0, 1.0}}, {gi, {0.0, -1.0}}});
      }
    }
  }

  GroupSymbol from_solution(const FiniteGroup& grp, const std::vector<double>& y,
                            int offset) const {
    std::vector<cplx> values(grp.order, cplx(0.0, 0.0));
    for (size_t v = 0; v < vars.size(); ++v)
      for (const Touch& t : vars[v])
        values[t.g] += y[offset + static_cast<int>(v)] * t.z;
    return make_symbol(grp, std::move(values));
  }
};

// Adds the Gram-pattern contribution of one symbol variable on the diagonal
// sub-block starting at (offset, offset): entries (s, s g) += z for all s.
void add_symbol_gram_pattern(BlockAccumulator& acc, const FiniteGroup& grp,
                             int block, int offset,
                             const SymbolVarTable::Touch& t) {
  for (int s = 0; s < grp.order; ++s)
    acc.add(block, offset + s, offset + grp.op(s, t.g), t.z);
}

double symbol_scale(const GroupSymbol& phi) {
  double m = 0.0;
  for (const cplx& v : phi.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// cb norm
// ---------------------------------------------------------------------------

namespace {

double cb_norm_impl(const SuperOperator& t, const FiniteGroup* grp,
                    NormStats* stats, CbRoute route) {
  const int n = t.dim;
  if (n > 16)
    throw std::invalid_argument("cb_norm: dimension cap 16 exceeded");
  if (is_zero_map(t)) {
    if (stats) *stats = {"zero", 0.0, 0};
    return 0.0;
  }

  const SuperOperator dual = adjoint_map(t);
  CMatrix psi;
  const bool schur_ok = schur_pattern(t, &psi);
  const bool covariant_ok =
      grp != nullptr && grp->order == n && is_right_covariant(t, *grp, 1e-10);

  CbRoute chosen = route;
  if (route == CbRoute::automatic) {
    if (n <= 4)
      chosen = CbRoute::full;
    else if (covariant_ok)
      chosen = CbRoute::reduced;
    else if (schur_ok)
      chosen = CbRoute::factorization;
    else if (n <= 6)
      chosen = CbRoute::full;
    else
      throw std::invalid_argument(
          "cb_norm: dimension > 6 requires a right-covariant map (pass the "
          "group) or a Schur multiplier");
  }

  switch (chosen) {
    case CbRoute::full: {
      if (n > 6)
        throw std::invalid_argument("cb_norm: full route capped at dim 6");
      TwoCornerResult r =
          solve_two_corner(dual.choi, n, /*trace_first=*/false, "cb_norm");
      if (stats) {
        r.stats.route = "diamond-full";
        *stats = r.stats;
      }
      return r.value;
    }
    case CbRoute::reduced: {
      if (!covariant_ok)
        throw std::invalid_argument(
            "cb_norm: reduced route requires the group and a right-covariant "
            "map");
      const IsotypicDecomposition iso = isotypic_decomposition(*grp);
      // The dual of a right-covariant map is right-covariant; verified here
      // because the reduction silently assumes it.
      if (!is_right_covariant(dual, *grp, 1e-8))
        throw std::runtime_error("cb_norm: dual lost right covariance");
      NormStats local;
      const double value = solve_reduced_diamond(dual, iso, &local);
      if (stats) {
        local.route = "diamond-reduced";
        *stats = local;
      }
      return value;
    }
    case CbRoute::factorization: {
      if (!schur_ok)
        throw std::invalid_argument(
            "cb_norm: factorization route requires a Schur multiplier");
      SchurTwoSidedResult r = solve_schur_two_sided(psi, "cb_norm");
      if (stats) {
        r.stats.route = "schur-factorization";
        *stats = r.stats;
      }
      return r.value;
    }
    default:
      throw std::logic_error("cb_norm: unresolved route");
  }
}

}  // namespace

double cb_norm(const SuperOperator& t, NormStats* stats, CbRoute route) {
  return cb_norm_impl(t, nullptr, stats, route);
}

double cb_norm(const SuperOperator& t, const FiniteGroup& g, NormStats* stats,
               CbRoute route) {
  if (g.order != t.dim)
    throw std::invalid_argument("cb_norm: group order does not match dim");
  return cb_norm_impl(t, &g, stats, route);
}

// ---------------------------------------------------------------------------
// dec norm
// ---------------------------------------------------------------------------

DecWitness dec_norm(const SuperOperator& t, DecRoute route) {
  const int n = t.dim;
  if (n > 8) throw std::invalid_argument("dec_norm: dimension cap 8 exceeded");

  DecWitness out;
  if (is_zero_map(t)) {
    out.value = 0.0;
    out.v1 = schur_from_matrix(CMatrix::Zero(n, n));
    out.v2 = out.v1;
    out.stats = {"zero", 0.0, 0};
    return out;
  }

  CMatrix psi;
  const bool schur_ok = schur_pattern(t, &psi);
  DecRoute chosen = route;
  if (route == DecRoute::automatic)
    chosen = schur_ok ? DecRoute::gram : DecRoute::full;

  if (chosen == DecRoute::gram) {
    if (!schur_ok)
      throw std::invalid_argument(
          "dec_norm: gram route requires a Schur multiplier");
    SchurTwoSidedResult r = solve_schur_two_sided(psi, "dec_norm");
    out.value = r.value;
    out.v1 = schur_from_matrix(r.a);
    out.v2 = schur_from_matrix(r.c);
    r.stats.route = "dec-gram";
    out.stats = r.stats;
  } else {
    // Choi matrices of v1, v2 as free Hermitian variables; the supermatrix
    // [[C1, J(T)],[J(T)*, C2]] is the Choi matrix of the 2x2 block map
    // [[v1, T],[T°, v2]] up to a basis permutation (J(T°) = J(T)^*).
    TwoCornerResult r =
        solve_two_corner(t.choi, n, /*trace_first=*/true, "dec_norm");
    out.value = r.value;
    out.v1.dim = n;
    out.v1.choi = r.m1;
    out.v2.dim = n;
    out.v2.choi = r.m2;
    r.stats.route = "dec-full";
    out.stats = r.stats;
  }

  // "v1 and v2 are completely positive" — re-verified on the returned blocks
  // (the SDP enforces it up to feasibility tolerance).
  for (const SuperOperator* v : {&out.v1, &out.v2}) {
    const CpResult cp = is_completely_positive(*v, 1e-6);
    if (!cp.cp)
      throw std::runtime_error("dec_norm: witness lost complete positivity");
  }
  return out;
}

double dec_norm_selfadjoint(const SuperOperator& t, NormStats* stats) {
  const int n = t.dim;
  if (n > 8)
    throw std::invalid_argument("dec_norm_selfadjoint: dimension cap 8");
  const double scale = std::max(1.0, t.choi.cwiseAbs().maxCoeff());
  if ((t.choi - t.choi.adjoint().eval()).cwiseAbs().maxCoeff() >
      1e-10 * scale)
    throw std::invalid_argument(
        "dec_norm_selfadjoint: T° != T (Choi matrix not Hermitian)");
  if (is_zero_map(t)) {
    if (stats) *stats = {"zero", 0.0, 0};
    return 0.0;
  }

  // T1 = C, T2 = C - J(T) as CP maps; minimize ||(T1+T2)(I)|| =
  // lambda_max(ptr_in(2C - J)).
  const int nsq = n * n;
  const int per_block = nsq * nsq;
  SdpProblem p;
  p.block_dims = {nsq, nsq, n};
  const int m = 1 + per_block;
  p.objective.assign(m, 0.0);
  p.objective[0] = 1.0;
  p.constraints.resize(m);
  {
    BlockAccumulator acc(p.block_dims);
    for (int i = 0; i < n; ++i) acc.add(2, i, i, 1.0);
    p.constraints[0] = acc.emit();
  }
  for (int v = 0; v < per_block; ++v) {
    BlockAccumulator acc(p.block_dims);
    for (const HermEntry& e : herm_var_pattern(nsq, v)) {
      acc.add(0, e.r, e.c, e.z);
      acc.add(1, e.r, e.c, e.z);
      const int k = e.r / n, a = e.r % n, l = e.c / n, b = e.c % n;
      if (k == l) acc.add(2, a, b, -2.0 * e.z);
    }
    p.constraints[1 + v] = acc.emit();
  }
  {
    BlockAccumulator acc(p.block_dims);
    const CMatrix jh = (t.choi + t.choi.adjoint().eval()) / 2.0;
    acc.add_hermitian(1, 0, (-jh).eval());
    const CMatrix ptr_in = partial_trace(jh, n, n, /*over_first=*/true);
    acc.add_hermitian(2, 0, ptr_in);
    p.constant_term = acc.emit();
  }

  const SdpSolution sol = solve_or_throw(p, "dec_norm_selfadjoint");
  if (stats) *stats = {"dec-selfadjoint", sol.duality_gap, sol.iterations};
  return sol.primal_value;
}

// ---------------------------------------------------------------------------
// B(G) norms
// ---------------------------------------------------------------------------

BgWitness bg_norm_sdp(const GroupSymbol& phi) {
  const FiniteGroup& grp = phi.group;
  const int n = grp.order;
  BgWitness out;
  if (symbol_scale(phi) == 0.0) {
    out.value = 0.0;
    out.psi1 = make_symbol(grp, std::vector<cplx>(n, cplx(0.0, 0.0)));
    out.psi2 = out.psi1;
    out.stats = {"zero", 0.0, 0};
    return out;
  }

  const SymbolVarTable table(grp);
  const int per_symbol = static_cast<int>(table.vars.size());
  SdpProblem p;
  p.block_dims = {2 * n, 1, 1};
  const int m = 1 + 2 * per_symbol;
  p.objective.assign(m, 0.0);
  p.objective[0] = 1.0;
  p.constraints.resize(m);
  {
    BlockAccumulator acc(p.block_dims);
    acc.add(1, 0, 0, 1.0);
    acc.add(2, 0, 0, 1.0);
    p.constraints[0] = acc.emit();
  }
  for (int side = 0; side < 2; ++side) {
    for (int v = 0; v < per_symbol; ++v) {
      BlockAccumulator acc(p.block_dims);
      for (const auto& touch : table.vars[v])
        add_symbol_gram_pattern(acc, grp, 0, side * n, touch);
      if (v == table.identity_var) acc.add(1 + side, 0, 0, -1.0);
      p.constraints[1 + side * per_symbol + v] = acc.emit();
    }
  }
  {
    // Off-diagonal Gram corner [phi(s^-1 t)] and its ° mirror.
    BlockAccumulator acc(p.block_dims);
    CMatrix corner(n, n);
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        corner(s, t) = phi.values[grp.op(grp.inv(s), t)];
    acc.add_corner(0, 0, n, corner);
    p.constant_term = acc.emit();
  }

  const SdpSolution sol = solve_or_throw(p, "bg_norm_sdp");
  out.value = sol.primal_value;
  out.psi1 = table.from_solution(grp, sol.y, 1);
  out.psi2 = table.from_solution(grp, sol.y, 1 + per_symbol);
  out.stats = {"bg-gram", sol.duality_gap, sol.iterations};
  return out;
}

double bg_norm_sum_form(const GroupSymbol& phi) {
  const FiniteGroup& grp = phi.group;
  const int n = grp.order;
  if (symbol_scale(phi) == 0.0) return 0.0;

  const SymbolVarTable table(grp);
  const int per_symbol = static_cast<int>(table.vars.size());
  SdpProblem p;
  p.block_dims = {2 * n};
  const int m = 2 * per_symbol;
  p.objective.assign(m, 0.0);
  p.objective[table.identity_var] = 0.5;
  p.objective[per_symbol + table.identity_var] = 0.5;
  p.constraints.resize(m);
  for (int side = 0; side < 2; ++side)
    for (int v = 0; v < per_symbol; ++v) {
      BlockAccumulator acc(p.block_dims);
      for (const auto& touch : table.vars[v])
        add_symbol_gram_pattern(acc, grp, 0, side * n, touch);
      p.constraints[side * per_symbol + v] = acc.emit();
    }
  {
    BlockAccumulator acc(p.block_dims);
    CMatrix corner(n, n);
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        corner(s, t) = phi.values[grp.op(grp.inv(s), t)];
    acc.add_corner(0, 0, n, corner);
    p.constant_term = acc.emit();
  }
  const SdpSolution sol = solve_or_throw(p, "bg_norm_sum_form");
  return sol.primal_value;
}

double bg_norm_product_form(const GroupSymbol& phi) {
  const double t = bg_norm_sdp(phi).value;
  return t * t;
}

double bg_norm_abelian(const GroupSymbol& phi) {
  const FiniteGroup& grp = phi.group;
  if (!grp.is_abelian())
    throw std::invalid_argument("bg_norm_abelian: group is not abelian");
  const int n = grp.order;
  const auto chars = abelian_characters(grp);
  double total = 0.0;
  for (int c = 0; c < n; ++c) {
    cplx coeff(0.0, 0.0);
    for (int s = 0; s < n; ++s)
      coeff += phi.values[s] * std::conj(chars[c][s]);
    total += std::abs(coeff) / static_cast<double>(n);
  }
  return total;
}

double jordan_bg_norm(const GroupSymbol& phi, NormStats* stats) {
  const FiniteGroup& grp = phi.group;
  const int n = grp.order;
  const double scale = std::max(1.0, symbol_scale(phi));
  for (int g = 0; g < n; ++g)
    if (std::abs(phi.values[grp.inv(g)] - std::conj(phi.values[g])) >
        1e-10 * scale)
      throw std::invalid_argument("jordan_bg_norm: phi-check != conj(phi)");
  if (symbol_scale(phi) == 0.0) {
    if (stats) *stats = {"zero", 0.0, 0};
    return 0.0;
  }

  const SymbolVarTable table(grp);
  const int per_symbol = static_cast<int>(table.vars.size());
  SdpProblem p;
  p.block_dims = {n, n};
  p.objective.assign(per_symbol, 0.0);
  p.objective[table.identity_var] = 2.0;
  p.constraints.resize(per_symbol);
  for (int v = 0; v < per_symbol; ++v) {
    BlockAccumulator acc(p.block_dims);
    for (const auto& touch : table.vars[v]) {
      add_symbol_gram_pattern(acc, grp, 0, 0, touch);
      add_symbol_gram_pattern(acc, grp, 1, 0, touch);
    }
    p.constraints[v] = acc.emit();
  }
  {
    BlockAccumulator acc(p.block_dims);
    const CMatrix gram = symbol_gram(phi);
    acc.add_hermitian(1, 0, (-gram).eval());
    p.constant_term = acc.emit();
  }
  const SdpSolution sol = solve_or_throw(p, "jordan_bg_norm");
  if (stats) *stats = {"jordan-gram", sol.duality_gap, sol.iterations};
  return sol.primal_value - phi.values[grp.identity].real();
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

NormReport compute_norm_report(const GroupSymbol& phi) {
  const FiniteGroup& grp = phi.group;
  NormReport r;
  {
    std::ostringstream os;
    os << grp.name << " symbol";
    r.subject = os.str();
  }

  const SuperOperator t = fourier_multiplier(phi);
  NormStats cb_stats;
  r.cb = cb_norm(t, grp, &cb_stats);
  r.solver_stats.emplace_back("cb", cb_stats);

  const DecWitness dw = dec_norm(t);
  r.dec = dw.value;
  r.solver_stats.emplace_back("dec", dw.stats);

  const BgWitness bw = bg_norm_sdp(phi);
  r.bg = bw.value;
  r.solver_stats.emplace_back("bg", bw.stats);

  if (grp.is_abelian())
    r.oracle_values.emplace_back("bg-abelian", bg_norm_abelian(phi));
  if (is_positive_definite(phi))
    r.oracle_values.emplace_back("pd-value-at-e",
                                 phi.values[grp.identity].real());

  std::ostringstream msg;
  const double tol = 1e-4;
  if (r.cb < -tol || r.dec < -tol || *r.bg < -tol) {
    r.invariants_ok = false;
    msg << "negative norm value; ";
  }
  if (r.cb > r.dec + tol) {
    r.invariants_ok = false;
    msg << "cb > dec + 1e-4; ";
  }
  if (r.dec > *r.bg + tol) {
    r.invariants_ok = false;
    msg << "dec > bg + 1e-4; ";
  }
  if (std::abs(r.dec - *r.bg) > tol * std::max(1.0, *r.bg)) {
    r.invariants_ok = false;
    msg << "|dec - bg| above isometry tolerance; ";
  }
  for (const auto& [name, value] : r.oracle_values)
    if (std::abs(value - *r.bg) > tol * std::max(1.0, *r.bg)) {
      r.invariants_ok = false;
      msg << "oracle " << name << " disagrees with bg; ";
    }
  r.invariant_message = msg.str();
  return r;
}

std::string serialize_norm_report(const NormReport& r) {
  nlohmann::json j;
  j["subject"] = r.subject;
  j["cb"] = r.cb;
  j["dec"] = r.dec;
  if (r.bg) j["bg"] = *r.bg;
  auto oracles = nlohmann::json::object();
  for (const auto& [name, value] : r.oracle_values) oracles[name] = value;
  j["oracle_values"] = oracles;
  auto stats = nlohmann::json::object();
  for (const auto& [name, s] : r.solver_stats)
    stats[name] = {{"route", s.route},
                   {"gap", s.gap},
                   {"iterations", s.iterations}};
  j["solver_stats"] = stats;
  j["invariants_ok"] = r.invariants_ok;
  j["invariant_message"] = r.invariant_message;
  return j.dump(2);
}

std::string norm_report_csv_header() {
  return "subject,cb,dec,bg,max_discrepancy";
}

std::string norm_report_csv_row(const NormReport& r) {
  std::ostringstream os;
  os.precision(12);
  double disc = std::abs(r.cb - r.dec);
  if (r.bg) {
    disc = std::max(disc, std::abs(r.dec - *r.bg));
    disc = std::max(disc, std::abs(r.cb - *r.bg));
  }
  os << '"' << r.subject << '"' << ',' << r.cb << ',' << r.dec << ',';
  if (r.bg) os << *r.bg;
  os << ',' << disc;
  return os.str();
}

}  // namespace fgm
