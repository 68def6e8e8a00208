#include "fgm/schur.hpp"

#include "doctest.h"

using namespace fgm;

namespace {

GroupSymbol random_symbol(const FiniteGroup& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(g.order);
  for (auto& x : v) x = cplx(u(rng), u(rng));
  return make_symbol(g, v);
}

// phi(s) = <lambda_s xi, xi>: positive definite with phi(e) = |xi|^2.
GroupSymbol random_pd_symbol(const FiniteGroup& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CVector xi(g.order);
  for (int s = 0; s < g.order; ++s) xi(s) = cplx(u(rng), u(rng));
  std::vector<cplx> v(g.order);
  for (int s = 0; s < g.order; ++s) {
    cplx acc{0.0, 0.0};
    for (int t = 0; t < g.order; ++t) acc += xi(g.op(s, t)) * std::conj(xi(t));
    v[s] = acc;
  }
  return make_symbol(g, v);
}

VnElement random_vn(const FiniteGroup& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CVector f(g.order);
  for (int s = 0; s < g.order; ++s) f(s) = cplx(u(rng), u(rng));
  return lambda(g, f);
}

}  // namespace

TEST_CASE("herz-schur lift") {
  const FiniteGroup z3 = construct_group("cyclic:3");
  std::vector<cplx> ones(3, 1.0);
  const BiSymbol psi1 = herz_schur_lift(make_symbol(z3, ones));
  for (const cplx& v : psi1.values) CHECK(v == cplx(1.0, 0.0));

  std::vector<cplx> delta = {1.0, 0.0, 0.0};
  const BiSymbol psid = herz_schur_lift(make_symbol(z3, delta));
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 3; ++t)
      CHECK(psid.at(s, t) == (s == t ? cplx(1.0, 0.0) : cplx(0.0, 0.0)));

  const GroupSymbol abc = make_symbol(z3, {cplx(1.0, 0.0), cplx(2.0, 0.5), cplx(3.0, -1.0)});
  const BiSymbol circulant = herz_schur_lift(abc);
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 3; ++t)
      CHECK(circulant.at(s, t) == abc.values[((s - t) % 3 + 3) % 3]);

  std::mt19937_64 rng(41);
  const FiniteGroup g = construct_group("dihedral:4");
  CHECK(is_herz_schur(herz_schur_lift(random_symbol(g, rng))));
  BiSymbol generic = herz_schur_lift(random_symbol(g, rng));
  generic.at(1, 2) += 0.5;  // breaks right invariance
  CHECK_FALSE(is_herz_schur(generic));
}

TEST_CASE("schur superoperator action") {
  const FiniteGroup g = construct_group("symmetric:3");
  const int n = g.order;
  std::mt19937_64 rng(43);

  std::vector<cplx> ones(n * n, 1.0);
  const SuperOperator sid = schur_superop(make_bisymbol(g, ones));
  const CMatrix x = random_matrix(n, n, rng);
  CHECK((sid.apply(x) - x).norm() == 0.0);

  std::vector<cplx> diag(n * n, 0.0);
  for (int s = 0; s < n; ++s) diag[s * n + s] = 1.0;
  const CMatrix xd = schur_superop(make_bisymbol(g, diag)).apply(x);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      CHECK(xd(s, t) == (s == t ? x(s, s) : cplx(0.0, 0.0)));

  const GroupSymbol phi = random_symbol(g, rng);
  const SuperOperator lifted = schur_superop(herz_schur_lift(phi));
  for (int u = 0; u < n; ++u)
    CHECK((lifted.apply(lambda_matrix(g, u)) -
           phi.values[u] * lambda_matrix(g, u))
              .norm() < 1e-14);
  // The lift-then-multiply route IS the Fourier multiplier extension.
  CHECK((lifted.choi - fourier_multiplier(phi).choi).norm() == 0.0);
}

TEST_CASE("positive definiteness") {
  const FiniteGroup z2 = construct_group("cyclic:2");
  std::vector<cplx> delta = {1.0, 0.0};
  CHECK(is_positive_definite(make_symbol(z2, delta)));
  CHECK(is_positive_definite(make_symbol(z2, {1.0, -1.0})));  // character
  CHECK_FALSE(is_positive_definite(make_symbol(z2, {1.0, 3.0})));
  const CMatrix gram = symbol_gram(make_symbol(z2, {1.0, 3.0}));
  CHECK(min_eig_hermitian(gram) == doctest::Approx(-2.0).epsilon(1e-12));

  std::mt19937_64 rng(45);
  for (const char* spec : {"cyclic:6", "dihedral:4", "quaternion:8"}) {
    const FiniteGroup g = construct_group(spec);
    for (int rep = 0; rep < 5; ++rep) {
      const GroupSymbol pd = random_pd_symbol(g, rng);
      CHECK(is_positive_definite(pd));
      // Characters of abelian quotents aside, a generic symbol is not PD.
      CHECK_FALSE(is_positive_definite(random_symbol(g, rng)));
    }
  }
}

TEST_CASE("block positive definiteness") {
  const FiniteGroup z2 = construct_group("cyclic:2");
  const GroupSymbol zero = make_symbol(z2, {0.0, 0.0});
  const GroupSymbol tdelta = make_symbol(z2, {2.5, 0.0});
  CHECK(block_pd_check(tdelta, zero, tdelta));

  std::vector<cplx> ones = {1.0, 1.0};
  CHECK(block_pd_check(make_symbol(z2, ones), make_symbol(z2, ones),
                       make_symbol(z2, ones)));

  const GroupSymbol psi = make_symbol(z2, {3.0, 1.0});
  const GroupSymbol phi = make_symbol(z2, {1.0, 3.0});
  CHECK(block_pd_check(psi, phi, psi, 1e-10));
  // Shrinking the diagonal witnesses breaks it.
  const GroupSymbol small = make_symbol(z2, {1.0, 0.5});
  CHECK_FALSE(block_pd_check(small, phi, small, 1e-10));
  // The block Gram is Hermitian by the phi° convention even for lopsided phi.
  std::mt19937_64 rng(47);
  const FiniteGroup g = construct_group("symmetric:3");
  const CMatrix bg = block_gram(random_pd_symbol(g, rng), random_symbol(g, rng),
                                random_pd_symbol(g, rng));
  CHECK(is_hermitian(bg, 1e-12));
}

TEST_CASE("symbol extraction") {
  const FiniteGroup g = construct_group("symmetric:3");
  const VnElement one = vn_one(g);
  const BiSymbol triv = symbol_extraction(one, one, identity_superop(g.order));
  for (const cplx& v : triv.values) CHECK(std::abs(v - cplx(1.0, 0.0)) < 1e-13);

  std::mt19937_64 rng(49);
  const GroupSymbol phi = random_symbol(g, rng);
  const BiSymbol ext = symbol_extraction(one, one, fourier_multiplier(phi));
  const BiSymbol lift = herz_schur_lift(phi);
  for (size_t i = 0; i < ext.values.size(); ++i)
    CHECK(std::abs(ext.values[i] - lift.values[i]) < 1e-12);
}

TEST_CASE("extraction pairing identity") {
  // <(id (x) T)(W(u (x) x)W^-1), W(v (x) y)W^-1> = <M_{phi_{x,y,T}}(u), v>
  // with <a, b> = tau(ab) in each algebra.
  const FiniteGroup g = construct_group("cyclic:3");
  const int n = g.order;
  const CMatrix w = fundamental_unitary(g);
  std::mt19937_64 rng(51);
  for (int rep = 0; rep < 10; ++rep) {
    const VnElement u = random_vn(g, rng), v = random_vn(g, rng);
    const VnElement x = random_vn(g, rng), y = random_vn(g, rng);
    SuperOperator t;
    t.dim = n;
    t.choi = random_matrix(n * n, n * n, rng);

    const SuperOperator idt = tensor_with_identity(t, n);
    const CMatrix lhs_arg = w * kron(u.matrix, x.matrix) * w.adjoint();
    const CMatrix rhs_arg = w * kron(v.matrix, y.matrix) * w.adjoint();
    const cplx lhs = (idt.apply(lhs_arg) * rhs_arg).trace() /
                     static_cast<double>(n * n);

    const BiSymbol psi = symbol_extraction(x, y, t);
    const cplx rhs = (schur_superop(psi).apply(u.matrix) * v.matrix).trace() /
                     static_cast<double>(n);
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("extraction preserves complete positivity") {
  const FiniteGroup g = construct_group("cyclic:4");
  const int n = g.order;
  std::mt19937_64 rng(53);
  for (int rep = 0; rep < 5; ++rep) {
    // CP map and PSD x, y realized inside VN(G): x = a* a for a in VN(G).
    const VnElement a = random_vn(g, rng);
    const VnElement x = vn_mul(vn_adjoint(a), a);
    const VnElement b = random_vn(g, rng);
    const VnElement y = vn_mul(vn_adjoint(b), b);
    std::vector<CMatrix> kraus;
    for (int k = 0; k < 2; ++k) kraus.push_back(random_matrix(n, n, rng));
    const SuperOperator cp = superop_from_action(n, [&](const CMatrix& m) {
      CMatrix out = CMatrix::Zero(n, n);
      for (const CMatrix& kr : kraus) out += kr * m * kr.adjoint();
      return out;
    });
    REQUIRE(is_completely_positive(cp).cp);
    const SuperOperator extracted =
        schur_superop(symbol_extraction(x, y, cp));
    CHECK(is_completely_positive(extracted, 1e-8).cp);
  }
}

TEST_CASE("bisymbol JSON round trip") {
  const FiniteGroup z2 = construct_group("cyclic:2");
  const BiSymbol psi = parse_bisymbol(z2, R"([[1,[0,1]],[2,3]])");
  CHECK(psi.at(0, 1) == cplx(0.0, 1.0));
  const BiSymbol back = parse_bisymbol(z2, serialize_bisymbol(psi));
  CHECK(back.values == psi.values);
  CHECK_THROWS(parse_bisymbol(z2, "[[1,2]]"));
}
