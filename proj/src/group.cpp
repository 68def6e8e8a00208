#include "fgm/group.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fgm {

namespace {

constexpr int kMaxOrder = 64;

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error("group: " + msg);
}

// Fills inv_table and checks the full set of Cayley-table invariants.
void finalize(FiniteGroup& g) {
  const int n = g.order;
  if (n <= 0 || n > kMaxOrder) fail("order out of range: " + std::to_string(n));
  if (static_cast<int>(g.mult_table.size()) != n * n) fail("table size mismatch");
  for (int v : g.mult_table)
    if (v < 0 || v >= n) fail("table entry out of range");
  if (g.identity != 0) fail("identity must be element 0");
  for (int a = 0; a < n; ++a)
    if (g.op(0, a) != a || g.op(a, 0) != a) fail("element 0 is not an identity");
  // Latin square: each row and column is a permutation.
  std::vector<char> seen(n);
  for (int a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n; ++b) seen[g.op(a, b)] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      fail("row " + std::to_string(a) + " is not a permutation");
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n; ++b) seen[g.op(b, a)] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      fail("column " + std::to_string(a) + " is not a permutation");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c)))
          fail("associativity fails at (" + std::to_string(a) + "," +
               std::to_string(b) + "," + std::to_string(c) + ")");
  g.inv_table.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.op(a, b) == 0) g.inv_table[a] = b;
  for (int a = 0; a < n; ++a)
    if (g.inv_table[a] < 0 || g.op(g.inv_table[a], a) != 0)
      fail("element without a two-sided inverse");
  if (!g.labels.empty() && static_cast<int>(g.labels.size()) != n)
    fail("labels size mismatch");
}

FiniteGroup make_cyclic(int n) {
  FiniteGroup g;
  g.order = n;
  g.mult_table.resize(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mult_table[a * n + b] = (a + b) % n;
  g.labels.resize(n);
  for (int a = 0; a < n; ++a) g.labels[a] = std::to_string(a);
  g.name = "cyclic:" + std::to_string(n);
  finalize(g);
  return g;
}

// Order 2n: indices 0..n-1 are r^i, indices n..2n-1 are s r^i, with
// r^n = s^2 = e and s r s = r^-1.
FiniteGroup make_dihedral(int n) {
  if (n < 1) fail("dihedral parameter must be >= 1");
  const int m = 2 * n;
  FiniteGroup g;
  g.order = m;
  g.mult_table.resize(m * m);
  auto idx = [n](bool flip, int rot) {
    return (flip ? n : 0) + ((rot % n) + n) % n;
  };
  for (int a = 0; a < m; ++a) {
    const bool fa = a >= n;
    const int ra = fa ? a - n : a;
    for (int b = 0; b < m; ++b) {
      const bool fb = b >= n;
      const int rb = fb ? b - n : b;
      // (s^fa r^ra)(s^fb r^rb) = s^(fa^fb) r^(rb + (fb ? -ra : ra))
      g.mult_table[a * m + b] = idx(fa != fb, rb + (fb ? -ra : ra));
    }
  }
  g.labels.resize(m);
  for (int i = 0; i < n; ++i) {
    g.labels[i] = "r" + std::to_string(i);
    g.labels[n + i] = "sr" + std::to_string(i);
  }
  g.name = "dihedral:" + std::to_string(n);
  finalize(g);
  return g;
}

FiniteGroup make_symmetric(int n) {
  if (n < 1 || n > 4) fail("symmetric parameter must be in 1..4");
  std::vector<std::array<int, 4>> perms;
  std::array<int, 4> p{0, 1, 2, 3};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.begin() + n));
  const int m = static_cast<int>(perms.size());
  std::map<std::array<int, 4>, int> index;
  for (int i = 0; i < m; ++i) index[perms[i]] = i;
  FiniteGroup g;
  g.order = m;
  g.mult_table.resize(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      std::array<int, 4> c{0, 1, 2, 3};
      for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];  // (ab)(x)=a(b(x))
      g.mult_table[a * m + b] = index.at(c);
    }
  g.labels.resize(m);
  for (int a = 0; a < m; ++a) {
    std::string s = "(";
    for (int x = 0; x < n; ++x) {
      if (x) s += ' ';
      s += std::to_string(perms[a][x]);
    }
    g.labels[a] = s + ")";
  }
  g.name = "symmetric:" + std::to_string(n);
  finalize(g);
  return g;
}

// Indices: 1,-1,i,-i,j,-j,k,-k. Element 2t+sign encodes (-1)^sign * basis t
// with basis order (1, i, j, k).
FiniteGroup make_quaternion() {
  // basis products: table[a][b] = (sign, basis) for a*b over {1,i,j,k}
  static const int basis_prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int basis_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  // i*j = k, j*i = -k, i*i = -1, etc.; basis_sign[1][2]=0 (ij=+k),
  // basis_sign[2][1]=1 (ji=-k), basis_sign[1][1]=1 (ii=-1).
  FiniteGroup g;
  g.order = 8;
  g.mult_table.resize(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int ta = a / 2, sa = a % 2, tb = b / 2, sb = b % 2;
      const int tc = basis_prod[ta][tb];
      const int sc = (sa + sb + basis_sign[ta][tb]) % 2;
      g.mult_table[a * 8 + b] = 2 * tc + sc;
    }
  g.labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  g.name = "quaternion:8";
  finalize(g);
  return g;
}

FiniteGroup make_product(const std::vector<FiniteGroup>& factors) {
  if (factors.empty()) fail("empty product");
  FiniteGroup g = factors[0];
  for (size_t f = 1; f < factors.size(); ++f) {
    const FiniteGroup& a = g;
    const FiniteGroup& b = factors[f];
    FiniteGroup p;
    p.order = a.order * b.order;
    if (p.order > kMaxOrder) fail("product order exceeds cap");
    p.mult_table.resize(p.order * p.order);
    for (int x = 0; x < p.order; ++x) {
      const int xa = x / b.order, xb = x % b.order;
      for (int y = 0; y < p.order; ++y) {
        const int ya = y / b.order, yb = y % b.order;
        p.mult_table[x * p.order + y] = a.op(xa, ya) * b.order + b.op(xb, yb);
      }
    }
    p.labels.resize(p.order);
    for (int x = 0; x < p.order; ++x)
      p.labels[x] = "(" + a.label(x / b.order) + "," + b.label(x % b.order) + ")";
    p.name = a.name + "x" + b.name;
    finalize(p);
    g = std::move(p);
  }
  return g;
}

}  // namespace

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order; ++a)
    for (int b = a + 1; b < order; ++b)
      if (op(a, b) != op(b, a)) return false;
  return true;
}

int FiniteGroup::element_order(int g) const {
  int x = g, k = 1;
  while (x != identity) {
    x = op(x, g);
    ++k;
  }
  return k;
}

std::string FiniteGroup::label(int g) const {
  if (!labels.empty()) return labels[g];
  return std::to_string(g);
}

FiniteGroup construct_group(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  const std::string family = descriptor.substr(0, colon);
  const std::string rest =
      colon == std::string::npos ? "" : descriptor.substr(colon + 1);
  auto param = [&]() {
    try {
      size_t pos = 0;
      const int v = std::stoi(rest, &pos);
      if (pos != rest.size()) fail("bad parameter in '" + descriptor + "'");
      return v;
    } catch (const std::invalid_argument&) {
      fail("bad parameter in '" + descriptor + "'");
    } catch (const std::out_of_range&) {
      fail("bad parameter in '" + descriptor + "'");
    }
  };
  if (family == "cyclic") return make_cyclic(param());
  if (family == "dihedral") return make_dihedral(param());
  if (family == "symmetric") return make_symmetric(param());
  if (family == "quaternion") {
    if (param() != 8) fail("only quaternion:8 is supported");
    return make_quaternion();
  }
  if (family == "product") {
    std::vector<FiniteGroup> factors;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) fail("empty factor in '" + descriptor + "'");
      factors.push_back(construct_group(item));
    }
    return make_product(factors);
  }
  fail("unknown family '" + family + "'");
}

FiniteGroup parse_group(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(std::string("bad JSON: ") + e.what());
  }
  FiniteGroup g;
  if (!j.contains("order") || !j.contains("mult")) fail("missing order/mult");
  g.order = j.at("order").get<int>();
  if (g.order <= 0 || g.order > kMaxOrder) fail("order out of range");
  g.identity = j.value("identity", 0);
  const auto& rows = j.at("mult");
  if (!rows.is_array() || static_cast<int>(rows.size()) != g.order)
    fail("mult must be an order x order array");
  g.mult_table.reserve(g.order * g.order);
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != g.order)
      fail("mult must be an order x order array");
    for (const auto& v : row) g.mult_table.push_back(v.get<int>());
  }
  if (j.contains("labels"))
    g.labels = j.at("labels").get<std::vector<std::string>>();
  g.name = j.value("name", "custom:" + std::to_string(g.order));
  finalize(g);
  return g;
}

std::string serialize_group(const FiniteGroup& g) {
  nlohmann::json j;
  j["order"] = g.order;
  j["identity"] = g.identity;
  auto rows = nlohmann::json::array();
  for (int a = 0; a < g.order; ++a) {
    auto row = nlohmann::json::array();
    for (int b = 0; b < g.order; ++b) row.push_back(g.op(a, b));
    rows.push_back(row);
  }
  j["mult"] = rows;
  if (!g.labels.empty()) j["labels"] = g.labels;
  j["name"] = g.name;
  return j.dump(2);
}

FiniteGroup group_from_spec(const std::string& spec) {
  const auto first = spec.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && spec[first] == '{') return parse_group(spec);
  return construct_group(spec);
}

std::vector<int> centralizer(const FiniteGroup& g, int elem) {
  std::vector<int> out;
  for (int s = 0; s < g.order; ++s)
    if (g.op(s, elem) == g.op(elem, s)) out.push_back(s);
  return out;
}

std::vector<std::vector<int>> enumerate_subgroups(const FiniteGroup& g) {
  if (g.order > 16) fail("subgroup enumeration capped at order 16");
  std::vector<std::vector<int>> out;
  const uint32_t total = 1u << g.order;
  for (uint32_t mask = 1; mask < total; ++mask) {
    if (!(mask & 1u)) continue;  // must contain the identity
    std::vector<int> elems;
    for (int s = 0; s < g.order; ++s)
      if (mask & (1u << s)) elems.push_back(s);
    if (g.order % static_cast<int>(elems.size()) != 0) continue;
    bool closed = true;
    for (size_t a = 0; a < elems.size() && closed; ++a)
      for (size_t b = 0; b < elems.size(); ++b)
        if (!(mask & (1u << g.op(elems[a], elems[b])))) {
          closed = false;
          break;
        }
    if (closed) out.push_back(std::move(elems));
  }
  return out;
}

namespace {

// Angle as an exact fraction of a full turn; all character values are roots
// of unity so this stays closed under the arithmetic below.
struct Turn {
  int64_t num = 0, den = 1;
  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const int64_t g = std::gcd(std::abs(num), den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    num %= den;
    if (num < 0) num += den;
  }
};

Turn turn_add(Turn a, Turn b) {
  Turn r{a.num * b.den + b.num * a.den, a.den * b.den};
  r.reduce();
  return r;
}

Turn turn_scale(Turn a, int64_t k) {
  Turn r{a.num * k, a.den};
  r.reduce();
  return r;
}

}  // namespace

std::vector<std::vector<std::complex<double>>> abelian_characters(
    const FiniteGroup& g) {
  if (!g.is_abelian()) fail("characters require an abelian group");
  const int n = g.order;
  // Partial characters as angle assignments on a subgroup, grown one
  // generator at a time; each extension step multiplies the count by the
  // index jump, so exactly n full characters come out.
  struct Partial {
    std::vector<Turn> angle;     // defined where member[] is set
    std::vector<char> member;
  };
  std::vector<Partial> pool;
  {
    Partial triv;
    triv.angle.assign(n, Turn{});
    triv.member.assign(n, 0);
    triv.member[0] = 1;
    pool.push_back(std::move(triv));
  }
  for (int gen = 1; gen < n; ++gen) {
    std::vector<Partial> next;
    for (const Partial& p : pool) {
      if (p.member[gen]) {
        next.push_back(p);
        continue;
      }
      // Smallest m >= 1 with gen^m inside the current subgroup.
      int m = 1, pow = gen;
      while (!p.member[pow]) {
        pow = g.op(pow, gen);
        ++m;
      }
      const Turn base = p.angle[pow];  // chi(gen)^m must equal this value
      for (int k = 0; k < m; ++k) {
        Turn theta{base.num + static_cast<int64_t>(k) * base.den,
                   base.den * static_cast<int64_t>(m)};
        theta.reduce();
        Partial q = p;
        // Extend over the coset decomposition <H, gen> = union gen^j H.
        int gj = gen;
        for (int j = 1; j < m; ++j) {
          const Turn tj = turn_scale(theta, j);
          for (int h = 0; h < n; ++h)
            if (p.member[h]) {
              const int x = g.op(gj, h);
              q.member[x] = 1;
              q.angle[x] = turn_add(tj, p.angle[h]);
            }
          gj = g.op(gj, gen);
        }
        next.push_back(std::move(q));
      }
    }
    pool = std::move(next);
  }
  std::vector<std::vector<std::complex<double>>> chars;
  chars.reserve(pool.size());
  constexpr double kTau = 6.28318530717958647692;
  for (const Partial& p : pool) {
    std::vector<std::complex<double>> row(n);
    for (int s = 0; s < n; ++s) {
      const double t = kTau * static_cast<double>(p.angle[s].num) /
                       static_cast<double>(p.angle[s].den);
      row[s] = {std::cos(t), std::sin(t)};
    }
    chars.push_back(std::move(row));
  }
  // The trivial character first, then a deterministic order.
  std::sort(chars.begin(), chars.end(),
            [](const auto& a, const auto& b) {
              for (size_t i = 0; i < a.size(); ++i) {
                if (std::abs(a[i].real() - b[i].real()) > 1e-12)
                  return a[i].real() > b[i].real();
                if (std::abs(a[i].imag() - b[i].imag()) > 1e-12)
                  return a[i].imag() > b[i].imag();
              }
              return false;
            });
  if (static_cast<int>(chars.size()) != n) fail("character count mismatch");
  return chars;
}

}  // namespace fgm
