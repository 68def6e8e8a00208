#include "fgm/projection.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "fgm/cmatrix.hpp"
#include "fgm/group.hpp"
#include "fgm/norms.hpp"
#include "fgm/schur.hpp"
#include "fgm/superop.hpp"
#include "fgm/vn.hpp"

using namespace fgm;

namespace {

GroupSymbol rand_symbol(const FiniteGroup& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<cplx> v(g.order);
  for (auto& x : v) x = cplx(unif(rng), unif(rng));
  return make_symbol(g, std::move(v));
}

SuperOperator rand_superop(int n, std::mt19937_64& rng) {
  SuperOperator t;
  t.dim = n;
  t.choi = random_matrix(n * n, n * n, rng);
  return t;
}

SuperOperator rand_cp_superop(int n, std::mt19937_64& rng) {
  SuperOperator t;
  t.dim = n;
  t.choi = random_psd(n * n, rng);
  return t;
}

BiSymbol rand_bisymbol(const FiniteGroup& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<cplx> v(static_cast<size_t>(g.order) * g.order);
  for (auto& x : v) x = cplx(unif(rng), unif(rng));
  return make_bisymbol(g, std::move(v));
}

// Gram-form bi-symbol: psi(s,t) = <eta_t, eta_s>; Schur multiplier is CP.
BiSymbol rand_psd_bisymbol(const FiniteGroup& g, std::mt19937_64& rng) {
  const int n = g.order;
  const CMatrix eta = random_matrix(n, n, rng);
  std::vector<cplx> v(static_cast<size_t>(n) * n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      v[static_cast<size_t>(s) * n + t] = eta.col(t).dot(eta.col(s));
  return make_bisymbol(g, std::move(v));
}

// Conjugation x -> lambda_g x lambda_g^-1.
SuperOperator conjugation_superop(const FiniteGroup& grp, int g) {
  const CMatrix lg = lambda_matrix(grp, g);
  const CMatrix lgi = lambda_matrix(grp, grp.inv(g));
  return superop_from_action(
      grp.order, [lg, lgi](const CMatrix& x) { return lg * x * lgi; });
}

double symbol_distance(const GroupSymbol& a, const GroupSymbol& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i)
    d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

}  // namespace

TEST_CASE("project_fourier closed-form oracles") {
  const FiniteGroup s3 = construct_group("symmetric:3");

  // Identity map compresses to the constant symbol 1.
  const FourierProjection pid = project_fourier(identity_superop(6), s3);
  for (int s = 0; s < 6; ++s)
    CHECK(std::abs(pid.symbol.values[s] - cplx(1.0, 0.0)) < 1e-12);

  // Conjugation by lambda_g compresses to the centralizer indicator.
  for (int g = 0; g < 6; ++g) {
    const FourierProjection p = project_fourier(conjugation_superop(s3, g), s3);
    for (int s = 0; s < 6; ++s) {
      const bool commutes = s3.op(s, g) == s3.op(g, s);
      CHECK(std::abs(p.symbol.values[s] - (commutes ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("project_fourier fixes Fourier multipliers and is idempotent") {
  std::mt19937_64 rng(7);
  for (const char* name : {"cyclic:4", "symmetric:3"}) {
    const FiniteGroup g = construct_group(name);
    for (int rep = 0; rep < 5; ++rep) {
      const GroupSymbol phi = rand_symbol(g, rng);
      const FourierProjection p = project_fourier(fourier_multiplier(phi), g);
      CHECK(symbol_distance(p.symbol, phi) < 1e-12);

      // Idempotence on a generic input.
      const SuperOperator t = rand_superop(g.order, rng);
      const FourierProjection once = project_fourier(t, g);
      const FourierProjection twice = project_fourier(once.multiplier, g);
      CHECK(symbol_distance(once.symbol, twice.symbol) < 1e-12);
      CHECK(twice.multiplier.tag == SuperOperator::Tag::fourier);
    }
  }
}

TEST_CASE("project_fourier literal route through the fundamental unitary") {
  std::mt19937_64 rng(11);
  for (const char* name : {"cyclic:3", "symmetric:3"}) {
    const FiniteGroup g = construct_group(name);
    for (int rep = 0; rep < 5; ++rep) {
      const SuperOperator t = rand_superop(g.order, rng);
      const GroupSymbol slow = project_fourier_slow(t, g);
      const GroupSymbol fast = project_fourier(t, g).symbol;
      CHECK(symbol_distance(slow, fast) < 1e-10);
    }
    // Tagged multiplier input reproduces its own symbol through the pairing.
    const GroupSymbol phi = rand_symbol(g, rng);
    const GroupSymbol slow = project_fourier_slow(fourier_multiplier(phi), g);
    CHECK(symbol_distance(slow, phi) < 1e-10);
  }
}

TEST_CASE("project_fourier preserves complete positivity") {
  std::mt19937_64 rng(13);
  for (const char* name : {"cyclic:3", "cyclic:4"}) {
    const FiniteGroup g = construct_group(name);
    for (int rep = 0; rep < 6; ++rep) {
      const SuperOperator t = rand_cp_superop(g.order, rng);
      REQUIRE(is_completely_positive(t).cp);
      const FourierProjection p = project_fourier(t, g);
      const CpResult cp = is_completely_positive(p.multiplier, 1e-8);
      CHECK(cp.cp);
      CHECK(cp.witness > -1e-8);
      CHECK(is_positive_definite(p.symbol, 1e-8));
    }
  }
}

TEST_CASE("project_fourier is cb-contractive") {
  std::mt19937_64 rng(17);
  for (const char* name : {"cyclic:2", "cyclic:3", "cyclic:4"}) {
    const FiniteGroup g = construct_group(name);
    for (int rep = 0; rep < 5; ++rep) {
      const SuperOperator t = rand_superop(g.order, rng);
      const double before = cb_norm(t, g);
      const double after = cb_norm(project_fourier(t, g).multiplier, g);
      CHECK(after <= before + 1e-4);
    }
  }

  // Covariant inputs on a bigger group go through the reduced route.
  const FiniteGroup s3 = construct_group("symmetric:3");
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<cplx> hs(36);
    std::mt19937_64 sub(100 + rep);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<cplx> m(6);
    for (auto& x : m) x = cplx(unif(sub), unif(sub));
    for (int s = 0; s < 6; ++s)
      for (int t = 0; t < 6; ++t) hs[s * 6 + t] = m[s3.op(s, s3.inv(t))];
    const SuperOperator t = schur_superop(make_bisymbol(s3, hs));
    NormStats stats;
    const double before = cb_norm(t, s3, &stats);
    CHECK(stats.route == "diamond-reduced");
    const double after = cb_norm(project_fourier(t, s3).multiplier, s3);
    CHECK(after <= before + 1e-4);
  }
}

TEST_CASE("project_fourier commutes with the trace duality") {
  std::mt19937_64 rng(19);
  for (const char* name : {"cyclic:4", "symmetric:3"}) {
    const FiniteGroup g = construct_group(name);
    for (int rep = 0; rep < 4; ++rep) {
      const SuperOperator t = rand_superop(g.order, rng);
      const GroupSymbol direct = project_fourier(t, g).symbol;
      const GroupSymbol dualized = project_fourier(adjoint_map(t), g).symbol;
      CHECK(symbol_distance(dualized, reflect_symbol(direct)) < 1e-11);
      // Round trip through the duality returns the same symbol.
      const GroupSymbol back =
          project_fourier(adjoint_map(adjoint_map(t)), g).symbol;
      CHECK(symbol_distance(back, direct) < 1e-11);
    }
  }
}

TEST_CASE("project_herz_schur averaging oracles") {
  const FiniteGroup z2 = construct_group("cyclic:2");

  // E_11-supported bi-symbol averages to half the diagonal indicator.
  std::vector<cplx> e11(4, cplx(0.0, 0.0));
  e11[0] = 1.0;
  const BiSymbol avg = project_herz_schur(make_bisymbol(z2, e11));
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      CHECK(std::abs(avg.at(s, t) - (s == t ? cplx(0.5, 0.0) : cplx(0.0, 0.0))) <
            1e-15);

  // Right invariance holds exactly, on every triple.
  std::mt19937_64 rng(23);
  const FiniteGroup z3 = construct_group("cyclic:3");
  const BiSymbol out = project_herz_schur(rand_bisymbol(z3, rng));
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 3; ++t)
      for (int r = 0; r < 3; ++r)
        CHECK(out.at(z3.op(s, r), z3.op(t, r)) == out.at(s, t));
  CHECK(is_herz_schur(out));

  // Already right-invariant inputs are unchanged; the average is idempotent.
  const BiSymbol again = project_herz_schur(out);
  for (size_t i = 0; i < out.values.size(); ++i)
    CHECK(again.values[i] == out.values[i]);
}

TEST_CASE("project_herz_schur is linear, CP-preserving, cb-contractive") {
  std::mt19937_64 rng(29);
  const FiniteGroup z3 = construct_group("cyclic:3");
  const FiniteGroup s3 = construct_group("symmetric:3");

  // Linearity.
  const BiSymbol a = rand_bisymbol(z3, rng);
  const BiSymbol b = rand_bisymbol(z3, rng);
  std::vector<cplx> combo(9);
  for (int i = 0; i < 9; ++i)
    combo[i] = cplx(2.0, -1.0) * a.values[i] + cplx(0.0, 3.0) * b.values[i];
  const BiSymbol pc = project_herz_schur(make_bisymbol(z3, combo));
  const BiSymbol pa = project_herz_schur(a);
  const BiSymbol pb = project_herz_schur(b);
  for (int i = 0; i < 9; ++i)
    CHECK(std::abs(pc.values[i] - cplx(2.0, -1.0) * pa.values[i] -
                   cplx(0.0, 3.0) * pb.values[i]) < 1e-13);

  // CP preservation: Gram-form symbols keep a PSD matrix after averaging.
  for (const FiniteGroup& g : {z3, s3}) {
    const BiSymbol psd = rand_psd_bisymbol(g, rng);
    REQUIRE(is_completely_positive(schur_superop(psd)).cp);
    const BiSymbol avg = project_herz_schur(psd);
    const CpResult cp = is_completely_positive(schur_superop(avg), 1e-8);
    CHECK(cp.cp);
    CHECK(cp.witness > -1e-8);
  }

  // cb contraction through the symbol-level factorization program.
  for (const FiniteGroup& g : {z3, s3}) {
    for (int rep = 0; rep < 3; ++rep) {
      const BiSymbol psi = rand_bisymbol(g, rng);
      const double before =
          cb_norm(schur_superop(psi), nullptr, CbRoute::factorization);
      const double after = cb_norm(schur_superop(project_herz_schur(psi)),
                                   nullptr, CbRoute::factorization);
      CHECK(after <= before + 1e-4);
    }
  }
}

TEST_CASE("matricial_project acts entrywise and preserves block positivity") {
  std::mt19937_64 rng(31);
  const FiniteGroup z3 = construct_group("cyclic:3");

  // All-Fourier blocks are fixed exactly.
  SuperBlocks2 fb;
  std::vector<GroupSymbol> syms;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      syms.push_back(rand_symbol(z3, rng));
      fb[i][j] = fourier_multiplier(syms.back());
    }
  const SuperBlocks2 fixed = matricial_project(fb, z3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK((fixed[i][j].choi - fb[i][j].choi).cwiseAbs().maxCoeff() < 1e-11);

  // Block-diagonal CP blocks stay CP.
  SuperBlocks2 diag;
  diag[0][0] = rand_cp_superop(3, rng);
  diag[1][1] = rand_cp_superop(3, rng);
  SuperOperator zero;
  zero.dim = 3;
  zero.choi = CMatrix::Zero(9, 9);
  diag[0][1] = zero;
  diag[1][0] = zero;
  REQUIRE(is_completely_positive(assemble_block_map(diag)).cp);
  const CpResult cp =
      is_completely_positive(assemble_block_map(matricial_project(diag, z3)), 1e-8);
  CHECK(cp.cp);

  // Decomposability witness block: CP before and after projection.
  const GroupSymbol phi = rand_symbol(z3, rng);
  const SuperOperator t = fourier_multiplier(phi);
  const DecWitness dw = dec_norm(t);
  SuperBlocks2 wit;
  wit[0][0] = dw.v1;
  wit[0][1] = t;
  wit[1][0] = circ_map(t);
  wit[1][1] = dw.v2;
  const CpResult before = is_completely_positive(assemble_block_map(wit), 1e-6);
  CHECK(before.cp);
  const CpResult after = is_completely_positive(
      assemble_block_map(matricial_project(wit, z3)), 1e-6);
  CHECK(after.cp);
}

TEST_CASE("dec_witness_roundtrip certifies Fourier-Stieltjes upper bounds") {
  const FiniteGroup z2 = construct_group("cyclic:2");

  // Dirac mass at the identity: bound 1.
  const WitnessRoundtrip delta =
      dec_witness_roundtrip(make_symbol(z2, {cplx(1.0, 0.0), cplx(0.0, 0.0)}));
  CHECK(delta.bound == doctest::Approx(1.0).epsilon(1e-4));

  // (1, 3) on Z2: ell^1-Fourier oracle gives 3.
  const WitnessRoundtrip z2wit =
      dec_witness_roundtrip(make_symbol(z2, {cplx(1.0, 0.0), cplx(3.0, 0.0)}));
  CHECK(z2wit.bound == doctest::Approx(3.0).epsilon(1e-4));
  CHECK(z2wit.bound <= z2wit.dec_value + 1e-4);

  // Random symbols with phi° = phi on Z4: bound matches bg_norm_sdp to 1e-3.
  std::mt19937_64 rng(37);
  const FiniteGroup z4 = construct_group("cyclic:4");
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<cplx> v(4);
    v[0] = cplx(unif(rng), 0.0);
    v[2] = cplx(unif(rng), 0.0);
    v[1] = cplx(unif(rng), unif(rng));
    v[3] = std::conj(v[1]);
    const GroupSymbol phi = make_symbol(z4, std::move(v));
    const WitnessRoundtrip w = dec_witness_roundtrip(phi);
    const double bg = bg_norm_sdp(phi).value;
    CHECK(w.bound == doctest::Approx(bg).epsilon(1e-3));
    CHECK(w.bound <= w.dec_value + 1e-4);
    CHECK(bg <= w.bound + 1e-3);
  }
}

TEST_CASE("projection reports carry contraction and fixed-point facts") {
  std::mt19937_64 rng(41);
  const FiniteGroup z3 = construct_group("cyclic:3");

  // Tagged multiplier input: fixed point, cb unchanged.
  const GroupSymbol phi = rand_symbol(z3, rng);
  const ProjectionReport fixed = fourier_projection_report(
      fourier_multiplier(phi), z3, "tagged multiplier");
  CHECK(fixed.fixed_point);
  CHECK(fixed.cp_preserved);
  CHECK(fixed.cb_after == doctest::Approx(fixed.cb_before).epsilon(1e-6));

  // Generic input: contraction recorded, JSON keys present.
  const ProjectionReport generic =
      fourier_projection_report(rand_superop(3, rng), z3, "random superop");
  CHECK(generic.cb_after <= generic.cb_before + 1e-4);
  CHECK(!generic.fixed_point);
  const std::string json = serialize_projection_report(generic);
  CHECK(json.find("\"output_kind\": \"fourier\"") != std::string::npos);
  CHECK(json.find("cb_before") != std::string::npos);
  CHECK(json.find("cp_preserved") != std::string::npos);

  const ProjectionReport hs =
      herz_schur_projection_report(rand_bisymbol(z3, rng), "random bi-symbol");
  CHECK(hs.cb_after <= hs.cb_before + 1e-4);
  const std::string hsjson = serialize_projection_report(hs);
  CHECK(hsjson.find("\"output_kind\": \"herz-schur\"") != std::string::npos);

  // Herz-Schur fixed point for an already right-invariant symbol.
  const BiSymbol inv = project_herz_schur(rand_bisymbol(z3, rng));
  CHECK(herz_schur_projection_report(inv, "invariant bi-symbol").fixed_point);
}

TEST_CASE("projection dimension preconditions") {
  const FiniteGroup z3 = construct_group("cyclic:3");
  CHECK_THROWS_AS(project_fourier(identity_superop(4), z3),
                  std::invalid_argument);
  CHECK_THROWS_AS(project_fourier_slow(identity_superop(2), z3),
                  std::invalid_argument);
  SuperBlocks2 bad;
  bad[0][0] = identity_superop(3);
  bad[0][1] = identity_superop(3);
  bad[1][0] = identity_superop(3);
  bad[1][1] = identity_superop(4);
  CHECK_THROWS_AS(assemble_block_map(bad), std::invalid_argument);
  CHECK_THROWS_AS(matricial_project(bad, z3), std::invalid_argument);
}
