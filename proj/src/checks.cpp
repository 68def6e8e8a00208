#include "fgm/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fgm/ensembles.hpp"
#include "fgm/fgball.hpp"
#include "fgm/norms.hpp"
#include "fgm/projection.hpp"
#include "fgm/schur.hpp"
#include "fgm/sdp.hpp"

namespace fgm {

namespace {

// Tolerance for the "exact" clauses of the projection checks: the trace
// pairing evaluates n * phi(s) / n, which costs at most one rounding, so the
// recovered symbol can sit one ulp off the input (measured <= 2e-16).
constexpr double kExactPairingTol = 1e-13;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double symbol_deviation(const GroupSymbol& a, const GroupSymbol& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i)
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

// (id (x) T) applied blockwise on the n x n subblocks of an n^2 x n^2
// matrix; sidesteps the superoperator dimension cap.
CMatrix apply_id_tensor(const SuperOperator& t, const CMatrix& x) {
  const int n = t.dim;
  CMatrix out(x.rows(), x.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.block(i * n, j * n, n, n) = t.apply(x.block(i * n, j * n, n, n));
  return out;
}

// Generic ensembles run through the unreduced diamond program, whose cost
// explodes past dimension 4 (tens of seconds per solve at dimension 6, no
// route at all at 8); larger groups draw right-covariant inputs, which the
// block-diagonalized route norms in seconds.
SuperOperator contractive_ensemble_draw(const FiniteGroup& g,
                                        std::mt19937_64& rng, bool* covariant) {
  if (g.order <= 4) {
    *covariant = false;
    return random_superop(g.order, rng);
  }
  *covariant = true;
  return random_covariant_superop(g, rng);
}

double weight_at(const DensityFn& f, int idx) {
  const auto it = std::lower_bound(f.support.begin(), f.support.end(), idx);
  if (it == f.support.end() || *it != idx) return 0.0;
  return f.weights[static_cast<size_t>(it - f.support.begin())];
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& theorem_registry() {
  static const std::vector<std::pair<std::string, std::string>> reg = {
      {"dec-eq-bg",
       "decomposable norm of a Fourier multiplier equals the "
       "Fourier-Stieltjes norm of its symbol"},
      {"cb-eq-dec",
       "completely bounded norm equals decomposable norm for multipliers on "
       "finite groups"},
      {"pd-norm",
       "positive definite symbols have Fourier-Stieltjes norm phi(e)"},
      {"transference",
       "group-side diamond program and Haagerup factorization agree on "
       "multiplier cb norms"},
      {"kappa-contractive",
       "the Fourier projection does not increase the cb norm"},
      {"kappa-cp",
       "the Fourier projection fixes multipliers, is idempotent, and "
       "preserves complete positivity"},
      {"q-herz-schur",
       "Herz-Schur averaging is right-invariant, cb-contractive, and "
       "CP-preserving"},
      {"mxyT-pairing",
       "extracted Schur symbols reproduce the coproduct pairing; conjugating "
       "second-leg convolutions by the fundamental unitary shifts them"},
      {"lemma-cb-bound",
       "cb norm of an extracted Schur multiplier is at most "
       "cb(T) ||x||_p ||y||_p*"},
      {"disco-equality",
       "|K|^3 = sum_s |K cap sK|^2 on subgroups; doubling bound on interval "
       "balls"},
      {"layer-cake",
       "a super-level threshold realizes the layer-cake averaging bound"},
      {"smoothing-bound",
       "smoothing by f * f-check at most doubles the conjugation defect and "
       "is positive definite on finite groups"},
  };
  return reg;
}

bool is_registry_id(const std::string& id) {
  for (const auto& [rid, desc] : theorem_registry())
    if (rid == id) return true;
  return false;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                          std::uint64_t b) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (a + 1) +
                    0xbf58476d1ce4e5b9ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<CheckRow> check_norm_isometries(const FiniteGroup& g, int symbols,
                                            std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  double worst_dec_bg = 0.0;
  double worst_cb_dec = 0.0;
  std::string dec_route, cb_route;
  for (int i = 0; i < symbols; ++i) {
    const GroupSymbol phi = random_symbol(g, rng);
    const SuperOperator t = fourier_multiplier(phi);
    const DecWitness dw = dec_norm(t);
    const BgWitness bw = bg_norm_sdp(phi);
    NormStats cb_stats;
    const double cb = cb_norm(t, g, &cb_stats);
    if (i == 0) {
      dec_route = dw.stats.route;
      cb_route = cb_stats.route;
    }
    worst_dec_bg = std::max(
        worst_dec_bg, std::abs(dw.value - bw.value) / std::max(1.0, bw.value));
    worst_cb_dec = std::max(worst_cb_dec, std::abs(cb - dw.value));
  }
  CheckRow r1{"dec-eq-bg", g.name, symbols, worst_dec_bg <= tol, worst_dec_bg,
              tol, "relative to max(1, bg); routes dec=" + dec_route};
  CheckRow r2{"cb-eq-dec", g.name, symbols, worst_cb_dec <= tol, worst_cb_dec,
              tol, "route cb=" + cb_route};
  return {r1, r2};
}

CheckRow check_abelian_oracle(const FiniteGroup& g, int symbols,
                              std::uint64_t seed, double tol) {
  if (!g.is_abelian())
    throw std::invalid_argument("check_abelian_oracle: group must be abelian");
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < symbols; ++i) {
    const GroupSymbol phi = random_symbol(g, rng);
    worst = std::max(worst,
                     std::abs(bg_norm_sdp(phi).value - bg_norm_abelian(phi)));
    const GroupSymbol sa = random_selfadjoint_symbol(g, rng);
    worst =
        std::max(worst, std::abs(jordan_bg_norm(sa) - bg_norm_abelian(sa)));
  }
  std::string detail = "bg_norm_sdp and jordan_bg_norm vs character sum";
  if (g.order == 2) {
    const GroupSymbol frozen = make_symbol(g, {cplx(1.0), cplx(3.0)});
    const double by_sdp = bg_norm_sdp(frozen).value;
    const double by_jordan = jordan_bg_norm(frozen);
    const double by_chars = bg_norm_abelian(frozen);
    worst = std::max({worst, std::abs(by_sdp - 3.0), std::abs(by_jordan - 3.0),
                      std::abs(by_chars - 3.0)});
    detail += "; includes (1,3) -> 3";
  }
  return {"abelian-oracle", g.name, symbols, worst <= tol, worst, tol, detail};
}

CheckRow check_pd_norm(const FiniteGroup& g, int symbols, std::uint64_t seed,
                       double tol) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < symbols; ++i) {
    const GroupSymbol phi = random_pd_symbol(g, rng);
    const double at_e = phi.values[g.identity].real();
    worst = std::max(worst, std::abs(bg_norm_sdp(phi).value - at_e));
  }
  return {"pd-norm", g.name,          symbols,
          worst <= tol, worst,        tol,
          "Gram-constructed positive definite symbols"};
}

CheckRow check_transference(const FiniteGroup& g, int symbols,
                            std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  std::string routes;
  for (int i = 0; i < symbols; ++i) {
    const GroupSymbol phi = random_symbol(g, rng);
    const SuperOperator t = fourier_multiplier(phi);
    NormStats group_side, schur_side;
    const double by_diamond = cb_norm(t, g, &group_side);
    const double by_factorization =
        cb_norm(t, &schur_side, CbRoute::factorization);
    if (i == 0) routes = group_side.route + " vs " + schur_side.route;
    worst = std::max(worst, std::abs(by_diamond - by_factorization) /
                                std::max(1.0, by_factorization));
  }
  return {"transference", g.name, symbols, worst <= tol, worst, tol,
          "relative; routes " + routes};
}

std::vector<CheckRow> check_kappa(const FiniteGroup& g, int fixed_count,
                                  int cp_count, int contractive_count,
                                  std::uint64_t seed, double tol) {
  const int n = g.order;

  // kappa-cp: fixing, idempotence, CP preservation.
  std::mt19937_64 rng(derive_seed(seed, 1, 0));
  double worst_fix = 0.0, worst_idem = 0.0, worst_witness = 0.0;
  int cp_violations = 0;
  for (int i = 0; i < fixed_count; ++i) {
    const GroupSymbol phi = random_symbol(g, rng);
    const FourierProjection p = project_fourier(fourier_multiplier(phi), g);
    worst_fix = std::max(worst_fix, symbol_deviation(p.symbol, phi));

    const SuperOperator t = random_superop(n, rng);
    const FourierProjection once = project_fourier(t, g);
    const FourierProjection twice = project_fourier(once.multiplier, g);
    worst_idem = std::max(worst_idem,
                          symbol_deviation(once.symbol, twice.symbol));
  }
  for (int i = 0; i < cp_count; ++i) {
    const SuperOperator t = random_cp_superop(n, rng);
    const FourierProjection p = project_fourier(t, g);
    const CpResult cp = is_completely_positive(p.multiplier, 1e-8);
    worst_witness = std::min(worst_witness, cp.witness);
    if (!cp.cp || cp.witness < -1e-8) ++cp_violations;
  }
  CheckRow cp_row{
      "kappa-cp",
      g.name,
      fixed_count + cp_count,
      worst_fix <= kExactPairingTol && worst_idem <= kExactPairingTol &&
          cp_violations == 0,
      std::max(worst_fix, worst_idem),
      kExactPairingTol,
      "fix=" + fmt(worst_fix) + "; idem=" + fmt(worst_idem) +
          "; cp-violations=" + std::to_string(cp_violations) +
          "; choi-min-eig=" + fmt(worst_witness)};

  // kappa-contractive: cb before vs after.
  std::mt19937_64 rng2(derive_seed(seed, 2, 0));
  double worst_expansion = -1e300;
  bool covariant = false;
  for (int i = 0; i < contractive_count; ++i) {
    const SuperOperator t = contractive_ensemble_draw(g, rng2, &covariant);
    const double before = cb_norm(t, g);
    const FourierProjection p = project_fourier(t, g);
    const double after = cb_norm(p.multiplier, g);
    worst_expansion = std::max(worst_expansion, after - before);
  }
  CheckRow contr_row{"kappa-contractive",
                     g.name,
                     contractive_count,
                     worst_expansion <= tol,
                     worst_expansion,
                     tol,
                     std::string("ensemble=") +
                         (covariant ? "right-covariant" : "generic") +
                         "; max-expansion=" + fmt(worst_expansion)};
  return {cp_row, contr_row};
}

CheckRow check_q_herz_schur(const FiniteGroup& g, int bisymbols,
                            std::uint64_t seed, double tol) {
  const int n = g.order;
  std::mt19937_64 rng(seed);
  double worst_inv = 0.0;
  double worst_excess = -1e300;
  double worst_witness = 0.0;
  int cp_violations = 0;
  for (int i = 0; i < bisymbols; ++i) {
    const BiSymbol psi = random_bisymbol(g, rng);
    const BiSymbol avg = project_herz_schur(psi);
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        for (int r = 0; r < n; ++r)
          worst_inv = std::max(
              worst_inv,
              std::abs(avg.at(g.op(s, r), g.op(t, r)) - avg.at(s, t)));
    NormStats in_stats, out_stats;
    const double before =
        cb_norm(schur_superop(psi), &in_stats, CbRoute::factorization);
    const double after =
        cb_norm(schur_superop(avg), &out_stats, CbRoute::factorization);
    worst_excess = std::max(worst_excess, after - before);

    const BiSymbol psd = random_psd_bisymbol(g, rng);
    const BiSymbol psd_avg = project_herz_schur(psd);
    const CpResult cp = is_completely_positive(schur_superop(psd_avg), 1e-8);
    worst_witness = std::min(worst_witness, cp.witness);
    if (!cp.cp || cp.witness < -1e-8) ++cp_violations;
  }
  return {"q-herz-schur",
          g.name,
          bisymbols,
          worst_inv == 0.0 && worst_excess <= tol && cp_violations == 0,
          std::max(worst_inv, worst_excess),
          tol,
          "invariance=" + fmt(worst_inv) + " (exact); cb-excess=" +
              fmt(worst_excess) + "; cp-violations=" +
              std::to_string(cp_violations) + "; choi-min-eig=" +
              fmt(worst_witness)};
}

CheckRow check_mxyT_pairing(const FiniteGroup& g, int tuples,
                            std::uint64_t seed, double tol) {
  const int n = g.order;
  const CMatrix w = fundamental_unitary(g);
  std::mt19937_64 rng(seed);

  double worst_pairing = 0.0;
  for (int rep = 0; rep < tuples; ++rep) {
    const VnElement u = random_vn(g, rng), v = random_vn(g, rng);
    const VnElement x = random_vn(g, rng), y = random_vn(g, rng);
    const SuperOperator t = random_superop(n, rng);

    const CMatrix lhs_arg = w * kron(u.matrix, x.matrix) * w.adjoint();
    const CMatrix rhs_arg = w * kron(v.matrix, y.matrix) * w.adjoint();
    const cplx lhs = (apply_id_tensor(t, lhs_arg) * rhs_arg).trace() /
                     static_cast<double>(n * n);

    const BiSymbol psi = symbol_extraction(x, y, t);
    const cplx rhs = (schur_superop(psi).apply(u.matrix) * v.matrix).trace() /
                     static_cast<double>(n);
    worst_pairing = std::max(worst_pairing, std::abs(lhs - rhs));
  }

  double worst_conj = 0.0;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int u = 0; u < n; ++u) {
        CMatrix est = CMatrix::Zero(n, n);
        est(s, t) = 1.0;
        const CMatrix lhs = w * kron(est, lambda_matrix(g, u)) * w.adjoint();
        const CMatrix rhs =
            kron(est, lambda_matrix(g, g.op(g.op(s, u), g.inv(t))));
        worst_conj = std::max(worst_conj, (lhs - rhs).cwiseAbs().maxCoeff());
      }

  const double worst = std::max(worst_pairing, worst_conj);
  return {"mxyT-pairing",
          g.name,
          tuples,
          worst <= tol,
          worst,
          tol,
          "pairing=" + fmt(worst_pairing) + " on " + std::to_string(tuples) +
              " tuples; unitary-conjugation=" + fmt(worst_conj) + " on " +
              std::to_string(n * n * n) + " triples"};
}

CheckRow check_lemma_cb_bound(const FiniteGroup& g, int triples,
                              std::uint64_t seed, double tol) {
  const int n = g.order;
  std::mt19937_64 rng(seed);
  const double inf = std::numeric_limits<double>::infinity();
  const std::pair<double, double> holder[] = {{1.0, inf}, {2.0, 2.0},
                                              {inf, 1.0}};
  double worst = -1e300;
  bool covariant = false;
  for (int rep = 0; rep < triples; ++rep) {
    const VnElement x = random_vn(g, rng), y = random_vn(g, rng);
    const SuperOperator t = contractive_ensemble_draw(g, rng, &covariant);
    const double cb_t = cb_norm(t, g);
    const BiSymbol ext = symbol_extraction(x, y, t);
    const double cb_ext =
        cb_norm(schur_superop(ext), nullptr, CbRoute::factorization);
    for (const auto& [p, q] : holder)
      worst = std::max(worst, cb_ext - cb_t * lp_norm(x, p) * lp_norm(y, q));
  }
  return {"lemma-cb-bound",
          g.name,
          triples,
          worst <= tol,
          worst,
          tol,
          std::string("p in {1,2,inf}; ensemble=") +
              (covariant ? "right-covariant" : "generic") + "; max-excess=" +
              fmt(worst)};
}

CheckRow check_disco_equality(const FiniteGroup& g) {
  const Carrier carrier(g);
  const auto subgroups = enumerate_subgroups(g);
  double worst = 0.0;
  bool pass = true;
  for (const auto& k : subgroups) {
    const DoublingReport r = doubling_report(carrier, k, 1.0);
    const double gap = r.lhs >= r.rhs_sum
                           ? static_cast<double>(r.lhs - r.rhs_sum)
                           : static_cast<double>(r.rhs_sum - r.lhs);
    worst = std::max(worst, gap);
    pass = pass && r.lhs == r.rhs_sum;
  }
  return {"disco-equality",
          g.name,
          static_cast<int>(subgroups.size()),
          pass,
          worst,
          0.0,
          "exact integer equality over " + std::to_string(subgroups.size()) +
              " subgroups"};
}

CheckRow check_disco_interval(int rmax, double doubling_c) {
  const FgBall carrier_ball = enumerate_ball("free-abelian-Z1", 2 * rmax);
  const Carrier carrier(carrier_ball);
  double worst = 0.0;
  bool pass = true;
  for (int r = 1; r <= rmax; ++r) {
    std::vector<int> v;
    for (int i = 0; i < static_cast<int>(carrier_ball.metric.size()); ++i)
      if (carrier_ball.metric[i] <= r) v.push_back(i);
    std::sort(v.begin(), v.end());
    const DoublingReport rep = doubling_report(carrier, v, doubling_c);
    unsigned long long closed_form = 0;
    for (int s = -r; s <= r; ++s) {
      const unsigned long long overlap =
          static_cast<unsigned long long>(2 * r + 1 - std::abs(s));
      closed_form += overlap * overlap;
    }
    pass = pass && rep.pass && rep.rhs_sum == closed_form;
    const double gap = rep.rhs_sum >= closed_form
                           ? static_cast<double>(rep.rhs_sum - closed_form)
                           : static_cast<double>(closed_form - rep.rhs_sum);
    worst = std::max(worst, gap);
  }
  return {"disco-equality",
          "free-abelian-Z1",
          rmax,
          pass,
          worst,
          0.0,
          "doubling c=" + fmt(doubling_c) +
              "; overlap sums match the closed form exactly"};
}

CheckRow check_layer_cake(const std::string& target, const Carrier& carrier,
                          int instances, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const int support_size = std::min(6, carrier.size());
  int failures = 0;
  for (int inst = 0; inst < instances; ++inst) {
    const DensityFn f = random_density(carrier, support_size, rng);
    const double eps = 0.05 + 0.1 * u01(rng);

    // Perturb by moving mass from the heaviest to the lightest support
    // point: ||f - g_k||_1 = 2 delta_k, and the deltas are capped so the
    // precondition sum_k ||f - g_k||_1 < eps holds with margin.
    const size_t hi = static_cast<size_t>(
        std::max_element(f.weights.begin(), f.weights.end()) -
        f.weights.begin());
    const size_t lo = static_cast<size_t>(
        std::min_element(f.weights.begin(), f.weights.end()) -
        f.weights.begin());
    std::vector<DensityFn> gs;
    for (int k = 0; k < 3; ++k) {
      const double delta = eps * u01(rng) / 8.0;
      std::vector<double> w = f.weights;
      w[hi] -= delta;
      w[lo] += delta;
      gs.push_back(make_density(carrier, f.support, std::move(w)));
    }

    const double t = layer_cake_select(f, gs, eps);

    // Independent re-verification by direct super-level set arithmetic.
    std::set<int> vf;
    for (size_t i = 0; i < f.support.size(); ++i)
      if (f.weights[i] > t) vf.insert(f.support[i]);
    unsigned long long total_sym_diff = 0;
    for (const DensityFn& gk : gs) {
      std::set<int> vg;
      for (size_t i = 0; i < gk.support.size(); ++i)
        if (gk.weights[i] > t) vg.insert(gk.support[i]);
      for (int a : vf)
        if (vg.find(a) == vg.end()) ++total_sym_diff;
      for (int b : vg)
        if (vf.find(b) == vf.end()) ++total_sym_diff;
    }
    const bool ok = t > 0.0 && !vf.empty() &&
                    static_cast<double>(total_sym_diff) <
                        eps * static_cast<double>(vf.size());
    if (!ok) ++failures;
  }
  return {"layer-cake",
          target,
          instances,
          failures == 0,
          static_cast<double>(failures),
          0.0,
          "independently re-verified thresholds; failures=" +
              std::to_string(failures)};
}

CheckRow check_smoothing(int radius, int samples, std::uint64_t seed) {
  const FgBall carrier_ball = enumerate_ball("heisenberg-Z", 2 * radius + 2);
  const Carrier carrier(carrier_ball);

  // Prefix sizes per radius (radius-first ordering), and the generators.
  std::vector<int> prefix(radius + 1, 0);
  for (int r = 1; r <= radius; ++r) {
    int count = 0;
    for (int m : carrier_ball.metric)
      if (m <= r) ++count;
    prefix[r] = count;
  }
  std::vector<int> gens;
  for (const BallPoint& p : ball_generators("heisenberg-Z")) {
    const int idx = carrier_ball.index_of(p);
    if (idx < 0)
      throw std::logic_error("check_smoothing: generator missing from ball");
    gens.push_back(idx);
  }

  std::mt19937_64 rng(seed);
  double worst_excess = -1e300;
  for (int i = 0; i < samples; ++i) {
    const int r = 1 + i % radius;
    const int cap = prefix[r];
    const DensityFn f =
        random_density(carrier, std::min(5, cap), rng, cap);
    const DensityFn smoothed = pd_smoothing(carrier, f);
    const int s = gens[i % static_cast<int>(gens.size())];
    const double defect_f = conjugation_defect(carrier, f, s);
    const double defect_g = conjugation_defect(carrier, smoothed, s);
    worst_excess = std::max(worst_excess, defect_g - 2.0 * defect_f);
  }

  // On finite groups the smoothed density is a positive definite symbol.
  double worst_eig = 0.0;
  for (const char* name : {"cyclic:4", "symmetric:3", "quaternion:8"}) {
    const FiniteGroup g = construct_group(name);
    const Carrier cg(g);
    for (int i = 0; i < 5; ++i) {
      const DensityFn f = random_density(cg, std::min(5, cg.size()), rng);
      const GroupSymbol sym = density_to_symbol(g, pd_smoothing(cg, f));
      worst_eig = std::min(worst_eig, min_eig_hermitian(symbol_gram(sym)));
    }
  }

  const bool pass = worst_excess <= 1e-12 && worst_eig >= -1e-10;
  return {"smoothing-bound",
          "heisenberg-Z",
          samples,
          pass,
          std::max(worst_excess, 0.0),
          1e-12,
          "defect excess over 2x bound=" + fmt(worst_excess) +
              "; finite-group gram min-eig=" + fmt(worst_eig)};
}

CheckRow check_sdp_selftest(int instances, int max_side, std::uint64_t seed,
                            double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> side_dist(2, max_side);
  double worst = 0.0;
  int solved = 0;
  for (int i = 0; i < instances; ++i) {
    const int n = side_dist(rng);
    const CMatrix a = random_hermitian(n, rng);

    // min t such that t I - A >= 0: the largest eigenvalue.
    SdpProblem p;
    p.block_dims = {n};
    p.objective = {1.0};
    std::vector<SdpTriplet> f1;
    for (int d = 0; d < n; ++d) f1.push_back({0, d, d, 1.0});
    p.constraints = {f1};
    for (int r = 0; r < n; ++r)
      for (int c = r; c < n; ++c)
        if (std::abs(a(r, c)) > 0.0)
          p.constant_term.push_back({0, r, c, -a(r, c)});

    const SdpSolution s = solve_sdp(p);
    if (s.status != SdpStatus::optimal) {
      worst = std::max(worst, 1.0);
      continue;
    }
    ++solved;
    worst = std::max(worst, std::abs(s.primal_value - max_eig_hermitian(a)));
  }
  return {"sdp-selftest",
          "hermitian:" + std::to_string(max_side),
          instances,
          worst <= tol && solved == instances,
          worst,
          tol,
          "largest-eigenvalue programs, sides 2.." +
              std::to_string(max_side) + "; solved " +
              std::to_string(solved) + "/" + std::to_string(instances)};
}

std::string check_rows_csv(const std::vector<CheckRow>& rows) {
  std::ostringstream os;
  os << "check,target,count,status,max_discrepancy,tolerance,detail\n";
  for (const CheckRow& r : rows) {
    std::string detail = r.detail;
    std::replace(detail.begin(), detail.end(), ',', ';');
    os << r.id << ',' << r.target << ',' << r.count << ','
       << (r.pass ? "pass" : "FAIL") << ',' << fmt(r.max_discrepancy) << ','
       << fmt(r.tolerance) << ',' << detail << '\n';
  }
  return os.str();
}

}  // namespace fgm
