#include "fgm/sdp.hpp"

#include <cmath>

#include "doctest.h"
#include "fgm/cmatrix.hpp"

using namespace fgm;

namespace {

// min t s.t. t I - A >= 0 for Hermitian A: the largest eigenvalue as an SDP.
SdpProblem lambda_max_problem(const CMatrix& a) {
  const int n = static_cast<int>(a.rows());
  SdpProblem p;
  p.block_dims = {n};
  p.objective = {1.0};
  std::vector<SdpTriplet> f1;
  for (int i = 0; i < n; ++i) f1.push_back({0, i, i, 1.0});
  p.constraints = {f1};
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (std::abs(a(i, j)) > 0.0) p.constant_term.push_back({0, i, j, -a(i, j)});
  return p;
}

}  // namespace

TEST_CASE("eigenvalue SDP on diag(1,2)") {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  const SdpSolution s = solve_sdp(lambda_max_problem(a));
  REQUIRE(s.status == SdpStatus::optimal);
  CHECK(s.primal_value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(s.duality_gap <= 1e-6);
  CHECK(min_eig_hermitian(s.primal_blocks[0]) >= -1e-8);
  CHECK(s.primal_value >= s.dual_value - 1e-7);
}

TEST_CASE("trace minimization with pinned corner") {
  // min x22 s.t. [[5, z],[conj z, x22]] >= 0; optimum 0, so Tr X -> 5.
  SdpProblem p;
  p.block_dims = {2};
  p.objective = {1.0, 0.0, 0.0};
  p.constraints = {{{0, 1, 1, 1.0}}, {{0, 0, 1, 1.0}}, {{0, 0, 1, cplx(0.0, 1.0)}}};
  p.constant_term = {{0, 0, 0, 5.0}};
  const SdpSolution s = solve_sdp(p);
  REQUIRE(s.status == SdpStatus::optimal);
  CHECK(5.0 + s.primal_value == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("one-dimensional bound") {
  // min y s.t. y - 1 >= 0.
  SdpProblem p;
  p.block_dims = {1};
  p.objective = {1.0};
  p.constraints = {{{0, 0, 0, 1.0}}};
  p.constant_term = {{0, 0, 0, -1.0}};
  const SdpSolution s = solve_sdp(p);
  REQUIRE(s.status == SdpStatus::optimal);
  CHECK(s.primal_value == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("eigenvalue SDPs against the eigensolver") {
  std::mt19937_64 rng(101);
  for (int rep = 0; rep < 6; ++rep) {
    const CMatrix a = random_hermitian(6, rng);
    const SdpSolution s = solve_sdp(lambda_max_problem(a));
    REQUIRE(s.status == SdpStatus::optimal);
    CHECK(s.primal_value ==
          doctest::Approx(max_eig_hermitian(a)).epsilon(1e-7));
  }
  // One larger instance at the acceptance scale.
  const CMatrix big = random_hermitian(32, rng);
  const SdpSolution s = solve_sdp(lambda_max_problem(big));
  REQUIRE(s.status == SdpStatus::optimal);
  CHECK(std::abs(s.primal_value - max_eig_hermitian(big)) < 1e-7 * 32);
}

TEST_CASE("complex Hermitian data") {
  CMatrix a(2, 2);
  a << 0.0, cplx(0.0, 1.0), cplx(0.0, -1.0), 0.0;
  const SdpSolution s = solve_sdp(lambda_max_problem(a));
  REQUIRE(s.status == SdpStatus::optimal);
  CHECK(s.primal_value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("multiple blocks bind jointly") {
  // min t with t I - diag(1,2) >= 0 and t I - PauliX >= 0.
  SdpProblem p;
  p.block_dims = {2, 2};
  p.objective = {1.0};
  p.constraints = {{{0, 0, 0, 1.0}, {0, 1, 1, 1.0}, {1, 0, 0, 1.0}, {1, 1, 1, 1.0}}};
  p.constant_term = {{0, 0, 0, -1.0}, {0, 1, 1, -2.0}, {1, 0, 1, -1.0}};
  const SdpSolution s = solve_sdp(p);
  REQUIRE(s.status == SdpStatus::optimal);
  CHECK(s.primal_value == doctest::Approx(2.0).epsilon(1e-6));
  for (const auto& blk : s.primal_blocks)
    CHECK(min_eig_hermitian(blk) >= -1e-8);
}

TEST_CASE("determinism and scaling") {
  std::mt19937_64 rng(55);
  const CMatrix a = random_hermitian(5, rng);
  const SdpSolution s1 = solve_sdp(lambda_max_problem(a));
  const SdpSolution s2 = solve_sdp(lambda_max_problem(a));
  REQUIRE(s1.status == SdpStatus::optimal);
  CHECK(std::abs(s1.primal_value - s2.primal_value) < 1e-9);
  SdpProblem scaled = lambda_max_problem(a);
  scaled.objective[0] = 3.0;
  const SdpSolution s3 = solve_sdp(scaled);
  REQUIRE(s3.status == SdpStatus::optimal);
  CHECK(s3.primal_value == doctest::Approx(3.0 * s1.primal_value).epsilon(1e-6));
}

TEST_CASE("infeasible or non-optimal is never reported optimal") {
  // [[y, 1], [1, -1]] >= 0 has no solution.
  SdpProblem p;
  p.block_dims = {2};
  p.objective = {1.0};
  p.constraints = {{{0, 0, 0, 1.0}}};
  p.constant_term = {{0, 0, 1, 1.0}, {0, 1, 1, -1.0}};
  const SdpSolution s = solve_sdp(p, 1e-8, 1e-8, 80);
  CHECK(s.status != SdpStatus::optimal);
}

TEST_CASE("input validation") {
  SdpProblem p;
  p.block_dims = {2};
  p.objective = {1.0};
  p.constraints = {{{0, 0, 0, 1.0}, {0, 1, 1, 1.0}}};
  CHECK_THROWS(solve_sdp(p, 1e-10, 1e-8));  // tolerance below the floor
  SdpProblem big = p;
  big.block_dims = {1501};
  CHECK_THROWS(solve_sdp(big));
  SdpProblem oob = p;
  oob.constraints[0][0].row = 5;
  CHECK_THROWS(solve_sdp(oob));
  SdpProblem imag_diag = p;
  imag_diag.constraints[0][0].value = cplx(0.0, 1.0);
  CHECK_THROWS(solve_sdp(imag_diag));
}

TEST_CASE("hermitian embedding") {
  std::mt19937_64 rng(77);
  const CMatrix a = random_hermitian(4, rng);
  const RMatrix e = embed_hermitian(a);
  // Real symmetric input embeds as two diagonal copies.
  const CMatrix re = a.real().cast<cplx>();
  const RMatrix er = embed_hermitian(re);
  CHECK(er.topRightCorner(4, 4).norm() < 1e-14);
  CHECK((er.topLeftCorner(4, 4) - a.real()).norm() < 1e-14);
  // Spectrum doubles in multiplicity.
  Eigen::SelfAdjointEigenSolver<RMatrix> es(e);
  Eigen::VectorXd vals;
  CMatrix vecs;
  hermitian_eigen(a, vals, vecs);
  for (int i = 0; i < 4; ++i) {
    CHECK(es.eigenvalues()(2 * i) == doctest::Approx(vals(i)).epsilon(1e-9));
    CHECK(es.eigenvalues()(2 * i + 1) == doctest::Approx(vals(i)).epsilon(1e-9));
  }
  CMatrix iy(2, 2);
  iy << 0.0, cplx(0.0, 1.0), cplx(0.0, -1.0), 0.0;
  const RMatrix ei = embed_hermitian(iy);
  Eigen::SelfAdjointEigenSolver<RMatrix> es2(ei);
  CHECK(es2.eigenvalues()(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(es2.eigenvalues()(3) == doctest::Approx(1.0).epsilon(1e-12));
  // PSD preservation on a Gram matrix.
  const CMatrix v = random_matrix(5, 3, rng);
  const CMatrix gram = v.adjoint() * v;
  Eigen::SelfAdjointEigenSolver<RMatrix> es3(embed_hermitian(gram));
  CHECK(es3.eigenvalues()(0) >= -1e-10);
  CMatrix nonherm(2, 2);
  nonherm << 0, 1, 0, 0;
  CHECK_THROWS(embed_hermitian(nonherm));
}
