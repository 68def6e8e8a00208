#include "fgm/fgball.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"

using namespace fgm;

namespace {

// Independent oracle: the set of all products of generator words of length
// at most r, multiplied out one letter at a time. Shares only the group law
// with the breadth-first enumeration, not the search.
std::set<BallPoint> word_products(const std::string& id, int radius) {
  const std::vector<BallPoint> gens = ball_generators(id);
  std::set<BallPoint> seen{ball_identity(id)};
  std::vector<BallPoint> frontier(seen.begin(), seen.end());
  for (int len = 1; len <= radius; ++len) {
    std::vector<BallPoint> next;
    for (const BallPoint& w : frontier)
      for (const BallPoint& g : gens) next.push_back(ball_mult(id, w, g));
    for (const BallPoint& w : next) seen.insert(w);
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

TEST_CASE("free-abelian balls match the ell^1 counts") {
  const FgBall z1 = enumerate_ball("free-abelian-Z1", 3);
  REQUIRE(z1.elements.size() == 7);
  for (long long a = -3; a <= 3; ++a) {
    const int i = z1.index_of({a});
    REQUIRE(i >= 0);
    CHECK(z1.metric[i] == static_cast<int>(std::abs(a)));
  }

  CHECK(enumerate_ball("free-abelian-Z2", 2).elements.size() == 13);
  for (int r = 0; r <= 5; ++r)
    CHECK(enumerate_ball("free-abelian-Z2", r).elements.size() ==
          static_cast<size_t>(2 * r * r + 2 * r + 1));
  for (int r = 0; r <= 3; ++r)
    CHECK(enumerate_ball("free-abelian-Z3", r).elements.size() ==
          static_cast<size_t>(4 * r * r * r + 6 * r * r + 8 * r + 3) / 3);
}

TEST_CASE("heisenberg ball agrees with the word-product oracle") {
  // Frozen small counts: radius 1 is the generating set plus identity;
  // radius 2 adds the 12 distinct two-letter normal forms.
  CHECK(enumerate_ball("heisenberg-Z", 1).elements.size() == 5);
  CHECK(enumerate_ball("heisenberg-Z", 2).elements.size() == 17);

  for (int r = 0; r <= 5; ++r) {
    const FgBall ball = enumerate_ball("heisenberg-Z", r);
    const std::set<BallPoint> oracle = word_products("heisenberg-Z", r);
    REQUIRE(ball.elements.size() == oracle.size());
    for (const BallPoint& p : ball.elements) CHECK(oracle.count(p) == 1);
  }

  // z = [x, y] is central and has word length 4.
  const std::string id = "heisenberg-Z";
  const BallPoint x{1, 0, 0}, y{0, 1, 0};
  const BallPoint z = ball_mult(
      id, ball_mult(id, ball_mult(id, x, y), ball_inv(id, x)), ball_inv(id, y));
  CHECK(z == BallPoint{0, 0, 1});
  const FgBall b4 = enumerate_ball(id, 4);
  REQUIRE(b4.index_of(z) >= 0);
  CHECK(b4.metric[b4.index_of(z)] == 4);
  CHECK(enumerate_ball(id, 3).index_of(z) == -1);
}

TEST_CASE("lamplighter ball agrees with the word-product oracle") {
  CHECK(enumerate_ball("lamplighter-Z2", 1).elements.size() == 4);
  CHECK(enumerate_ball("lamplighter-Z2", 2).elements.size() == 10);

  for (int r = 0; r <= 6; ++r) {
    const FgBall ball = enumerate_ball("lamplighter-Z2", r);
    const std::set<BallPoint> oracle = word_products("lamplighter-Z2", r);
    REQUIRE(ball.elements.size() == oracle.size());
    for (const BallPoint& p : ball.elements) CHECK(oracle.count(p) == 1);
  }

  // The toggle is an involution; the shift conjugates it to the next lamp.
  const std::string id = "lamplighter-Z2";
  const BallPoint a{0, 0}, t{1};
  CHECK(ball_mult(id, a, a) == ball_identity(id));
  const BallPoint conj = ball_mult(
      id, ball_mult(id, t, a), ball_inv(id, t));
  CHECK(conj == BallPoint{0, 1});
}

TEST_CASE("balls are monotone, inversion-closed, and deterministic") {
  for (const char* id : {"free-abelian-Z2", "heisenberg-Z", "lamplighter-Z2"}) {
    const FgBall big = enumerate_ball(id, 4);
    const FgBall small = enumerate_ball(id, 3);
    for (size_t i = 0; i < small.elements.size(); ++i) {
      const int j = big.index_of(small.elements[i]);
      REQUIRE(j >= 0);
      CHECK(big.metric[j] == small.metric[i]);
    }
    // Every element's inverse lies in the ball at the same word length.
    for (size_t i = 0; i < big.elements.size(); ++i) {
      const int j = big.index_of(ball_inv(id, big.elements[i]));
      REQUIRE(j >= 0);
      CHECK(big.metric[j] == big.metric[i]);
    }
    // Identity is first; layers are sorted lexicographically.
    CHECK(big.elements[0] == ball_identity(id));
    CHECK(big.metric[0] == 0);
    for (size_t i = 1; i < big.elements.size(); ++i) {
      CHECK(big.metric[i] >= big.metric[i - 1]);
      if (big.metric[i] == big.metric[i - 1])
        CHECK(big.elements[i - 1] < big.elements[i]);
    }
    // Bit-identical on re-enumeration.
    const FgBall again = enumerate_ball(id, 4);
    CHECK(again.elements == big.elements);
    CHECK(again.metric == big.metric);
  }
}

TEST_CASE("ball group law is associative with two-sided inverses") {
  std::mt19937_64 rng(5);
  for (const char* id : {"free-abelian-Z3", "heisenberg-Z", "lamplighter-Z2"}) {
    const FgBall ball = enumerate_ball(id, 3);
    std::uniform_int_distribution<size_t> pick(0, ball.elements.size() - 1);
    const BallPoint e = ball_identity(id);
    for (int rep = 0; rep < 40; ++rep) {
      const BallPoint& a = ball.elements[pick(rng)];
      const BallPoint& b = ball.elements[pick(rng)];
      const BallPoint& c = ball.elements[pick(rng)];
      CHECK(ball_mult(id, ball_mult(id, a, b), c) ==
            ball_mult(id, a, ball_mult(id, b, c)));
      CHECK(ball_mult(id, a, e) == a);
      CHECK(ball_mult(id, e, a) == a);
      CHECK(ball_mult(id, a, ball_inv(id, a)) == e);
      CHECK(ball_mult(id, ball_inv(id, a), a) == e);
    }
  }
}

TEST_CASE("ball serialization and error handling") {
  const FgBall ball = enumerate_ball("free-abelian-Z1", 2);
  const std::string json = serialize_ball(ball);
  CHECK(json.find("\"group_id\":\"free-abelian-Z1\"") != std::string::npos);
  CHECK(json.find("\"radius\":2") != std::string::npos);
  CHECK(json.find("[-2]") != std::string::npos);

  CHECK_THROWS_AS(enumerate_ball("free-group-F2", 2), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_ball("free-abelian-Z9", 2), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_ball("free-abelian-Z1", -1), std::invalid_argument);
  // 2r + 1 > 10^6 on the line.
  CHECK_THROWS_AS(enumerate_ball("free-abelian-Z1", 600000),
                  std::invalid_argument);
  CHECK_THROWS_AS(ball_mult("heisenberg-Z", {1, 0}, {0, 0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ball_mult("lamplighter-Z2", {0, 3, 1}, {0}),
                  std::invalid_argument);
}
