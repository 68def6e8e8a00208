#include "fgm/fgball.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fgm {

namespace {

constexpr size_t kBallCap = 1000000;

enum class Family { free_abelian, heisenberg, lamplighter };

Family parse_family(const std::string& id, int* dim) {
  const std::string prefix = "free-abelian-Z";
  if (id.rfind(prefix, 0) == 0) {
    const std::string tail = id.substr(prefix.size());
    if (tail.empty() || tail.size() > 1 || tail[0] < '1' || tail[0] > '6')
      throw std::invalid_argument("fgball: free-abelian rank must be 1..6");
    *dim = tail[0] - '0';
    return Family::free_abelian;
  }
  if (id == "heisenberg-Z") {
    *dim = 3;
    return Family::heisenberg;
  }
  if (id == "lamplighter-Z2") {
    *dim = -1;  // variable-length coordinates
    return Family::lamplighter;
  }
  throw std::invalid_argument("fgball: unknown family '" + id + "'");
}

void check_point(Family f, int dim, const BallPoint& p, const char* what) {
  switch (f) {
    case Family::free_abelian:
    case Family::heisenberg:
      if (static_cast<int>(p.size()) != dim)
        throw std::invalid_argument(std::string(what) +
                                    ": coordinate arity mismatch");
      return;
    case Family::lamplighter: {
      if (p.empty())
        throw std::invalid_argument(std::string(what) +
                                    ": lamplighter point needs a position");
      for (size_t i = 2; i < p.size(); ++i)
        if (p[i - 1] >= p[i])
          throw std::invalid_argument(std::string(what) +
                                      ": lamp positions must be sorted");
      return;
    }
  }
}

BallPoint lamplighter_mult(const BallPoint& a, const BallPoint& b) {
  // (f, k) (f', k') = (f symdiff (f' + k), k + k').
  std::set<long long> lamps(a.begin() + 1, a.end());
  for (size_t i = 1; i < b.size(); ++i) {
    const long long pos = b[i] + a[0];
    const auto it = lamps.find(pos);
    if (it == lamps.end())
      lamps.insert(pos);
    else
      lamps.erase(it);
  }
  BallPoint out;
  out.push_back(a[0] + b[0]);
  out.insert(out.end(), lamps.begin(), lamps.end());
  return out;
}

}  // namespace

int FgBall::index_of(const BallPoint& p) const {
  const auto it = index.find(p);
  return it == index.end() ? -1 : it->second;
}

BallPoint ball_identity(const std::string& group_id) {
  int dim = 0;
  switch (parse_family(group_id, &dim)) {
    case Family::free_abelian:
      return BallPoint(dim, 0);
    case Family::heisenberg:
      return {0, 0, 0};
    case Family::lamplighter:
      return {0};
  }
  throw std::logic_error("fgball: unreachable");
}

BallPoint ball_mult(const std::string& group_id, const BallPoint& a,
                    const BallPoint& b) {
  int dim = 0;
  const Family f = parse_family(group_id, &dim);
  check_point(f, dim, a, "ball_mult");
  check_point(f, dim, b, "ball_mult");
  switch (f) {
    case Family::free_abelian: {
      BallPoint out(dim);
      for (int i = 0; i < dim; ++i) out[i] = a[i] + b[i];
      return out;
    }
    case Family::heisenberg:
      return {a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]};
    case Family::lamplighter:
      return lamplighter_mult(a, b);
  }
  throw std::logic_error("fgball: unreachable");
}

BallPoint ball_inv(const std::string& group_id, const BallPoint& a) {
  int dim = 0;
  const Family f = parse_family(group_id, &dim);
  check_point(f, dim, a, "ball_inv");
  switch (f) {
    case Family::free_abelian: {
      BallPoint out(dim);
      for (int i = 0; i < dim; ++i) out[i] = -a[i];
      return out;
    }
    case Family::heisenberg:
      return {-a[0], -a[1], a[0] * a[1] - a[2]};
    case Family::lamplighter: {
      BallPoint out;
      out.push_back(-a[0]);
      for (size_t i = 1; i < a.size(); ++i) out.push_back(a[i] - a[0]);
      std::sort(out.begin() + 1, out.end());
      return out;
    }
  }
  throw std::logic_error("fgball: unreachable");
}

std::vector<BallPoint> ball_generators(const std::string& group_id) {
  int dim = 0;
  const Family f = parse_family(group_id, &dim);
  switch (f) {
    case Family::free_abelian: {
      std::vector<BallPoint> gens;
      for (int i = 0; i < dim; ++i)
        for (const long long sign : {1LL, -1LL}) {
          BallPoint g(dim, 0);
          g[i] = sign;
          gens.push_back(g);
        }
      return gens;
    }
    case Family::heisenberg:
      return {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
    case Family::lamplighter:
      // Toggle at the current position, then the two shifts.
      return {{0, 0}, {1}, {-1}};
  }
  throw std::logic_error("fgball: unreachable");
}

FgBall enumerate_ball(const std::string& group_id, int radius) {
  int dim = 0;
  parse_family(group_id, &dim);
  if (radius < 0)
    throw std::invalid_argument("enumerate_ball: radius must be nonnegative");

  const std::vector<BallPoint> gens = ball_generators(group_id);
  FgBall ball;
  ball.group_id = group_id;
  ball.radius = radius;

  std::map<BallPoint, int> depth;
  std::vector<BallPoint> frontier{ball_identity(group_id)};
  depth[frontier[0]] = 0;
  for (int r = 1; r <= radius && !frontier.empty(); ++r) {
    std::vector<BallPoint> next;
    for (const BallPoint& p : frontier)
      for (const BallPoint& g : gens) {
        BallPoint q = ball_mult(group_id, p, g);
        if (depth.emplace(q, r).second) {
          next.push_back(std::move(q));
          if (depth.size() > kBallCap)
            throw std::invalid_argument(
                "enumerate_ball: radius exceeds cap (ball larger than 10^6)");
        }
      }
    frontier = std::move(next);
  }

  // Radius-first, lexicographic within each layer; the map is already sorted.
  std::vector<std::vector<BallPoint>> layers(radius + 1);
  for (const auto& [p, r] : depth) layers[r].push_back(p);
  for (int r = 0; r <= radius; ++r)
    for (BallPoint& p : layers[r]) {
      ball.index[p] = static_cast<int>(ball.elements.size());
      ball.metric.push_back(r);
      ball.elements.push_back(std::move(p));
    }
  return ball;
}

std::string serialize_ball(const FgBall& ball) {
  nlohmann::json j;
  j["group_id"] = ball.group_id;
  j["radius"] = ball.radius;
  auto elems = nlohmann::json::array();
  for (const BallPoint& p : ball.elements) elems.push_back(p);
  j["elements"] = elems;
  j["metric"] = ball.metric;
  return j.dump();
}

}  // namespace fgm
