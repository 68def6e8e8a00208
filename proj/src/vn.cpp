#include "fgm/vn.hpp"

#include <stdexcept>

#include "json.hpp"

namespace fgm {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("vn: " + msg);
}

void check_same_group(const FiniteGroup& a, const FiniteGroup& b,
                      const char* who) {
  if (a.order != b.order || a.mult_table != b.mult_table)
    fail(std::string(who) + ": group mismatch");
}

constexpr int kUnitaryCap = 1500;  // bound on |G|^2 for W-based constructions

std::vector<cplx> parse_value_array(const nlohmann::json& arr) {
  std::vector<cplx> out;
  for (const auto& v : arr) {
    if (v.is_number()) {
      out.emplace_back(v.get<double>(), 0.0);
    } else if (v.is_array() && v.size() == 2) {
      out.emplace_back(v[0].get<double>(), v[1].get<double>());
    } else {
      fail("symbol values must be numbers or [re, im] pairs");
    }
  }
  return out;
}

}  // namespace

GroupSymbol make_symbol(const FiniteGroup& g, std::vector<cplx> values) {
  if (static_cast<int>(values.size()) != g.order)
    fail("symbol length must equal the group order");
  return GroupSymbol{g, std::move(values)};
}

GroupSymbol reflect_symbol(const GroupSymbol& phi) {
  std::vector<cplx> v(phi.values.size());
  for (int s = 0; s < phi.group.order; ++s) v[s] = phi.values[phi.group.inv(s)];
  return GroupSymbol{phi.group, std::move(v)};
}

GroupSymbol circ_symbol(const GroupSymbol& phi) {
  std::vector<cplx> v(phi.values.size());
  for (int s = 0; s < phi.group.order; ++s)
    v[s] = std::conj(phi.values[phi.group.inv(s)]);
  return GroupSymbol{phi.group, std::move(v)};
}

GroupSymbol pointwise_product(const GroupSymbol& a, const GroupSymbol& b) {
  check_same_group(a.group, b.group, "pointwise_product");
  std::vector<cplx> v(a.values.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = a.values[i] * b.values[i];
  return GroupSymbol{a.group, std::move(v)};
}

GroupSymbol parse_group_symbol(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(std::string("bad symbol JSON: ") + e.what());
  }
  if (!j.contains("group") || !j.contains("values"))
    fail("symbol file needs \"group\" and \"values\"");
  FiniteGroup g = j.at("group").is_string()
                      ? group_from_spec(j.at("group").get<std::string>())
                      : parse_group(j.at("group").dump());
  return make_symbol(g, parse_value_array(j.at("values")));
}

std::string serialize_group_symbol(const GroupSymbol& phi) {
  nlohmann::json j;
  j["group"] = phi.group.name;
  auto vals = nlohmann::json::array();
  for (const cplx& v : phi.values) vals.push_back({v.real(), v.imag()});
  j["values"] = vals;
  return j.dump();
}

CMatrix lambda_matrix(const FiniteGroup& g, int s) {
  if (s < 0 || s >= g.order) fail("element index out of range");
  CMatrix m = CMatrix::Zero(g.order, g.order);
  for (int t = 0; t < g.order; ++t) m(g.op(s, t), t) = 1.0;
  return m;
}

CMatrix right_translation_matrix(const FiniteGroup& g, int r) {
  if (r < 0 || r >= g.order) fail("element index out of range");
  CMatrix m = CMatrix::Zero(g.order, g.order);
  for (int t = 0; t < g.order; ++t) m(g.op(t, r), t) = 1.0;
  return m;
}

VnElement lambda(const FiniteGroup& g, int s) {
  CVector f = CVector::Zero(g.order);
  f(s) = 1.0;
  return VnElement{g, f, lambda_matrix(g, s)};
}

VnElement lambda(const FiniteGroup& g, const CVector& f) {
  if (f.size() != g.order) fail("coefficient length must equal the group order");
  CMatrix m = CMatrix::Zero(g.order, g.order);
  // lambda(f)(a, b) = f(a b^-1): column b carries f translated by b.
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b) m(a, b) = f(g.op(a, g.inv(b)));
  return VnElement{g, f, std::move(m)};
}

VnElement vn_one(const FiniteGroup& g) { return lambda(g, 0); }

VnElement vn_from_matrix(const FiniteGroup& g, const CMatrix& m, double tol) {
  if (m.rows() != g.order || m.cols() != g.order) fail("matrix size mismatch");
  CVector f(g.order);
  for (int s = 0; s < g.order; ++s) {
    cplx acc{0.0, 0.0};
    for (int t = 0; t < g.order; ++t) acc += m(g.op(s, t), t);
    f(s) = acc / static_cast<double>(g.order);
  }
  VnElement x = lambda(g, f);
  const double defect = (x.matrix - m).cwiseAbs().maxCoeff();
  if (defect > tol) fail("matrix is not in VN(G)");
  return x;
}

VnElement vn_mul(const VnElement& x, const VnElement& y) {
  check_same_group(x.group, y.group, "vn_mul");
  const FiniteGroup& g = x.group;
  CVector f = CVector::Zero(g.order);
  // Convolution: (f*h)(s) = sum_t f(t) h(t^-1 s).
  for (int t = 0; t < g.order; ++t)
    for (int u = 0; u < g.order; ++u) f(g.op(t, u)) += x.coeffs(t) * y.coeffs(u);
  return VnElement{g, f, x.matrix * y.matrix};
}

VnElement vn_adjoint(const VnElement& x) {
  const FiniteGroup& g = x.group;
  CVector f(g.order);
  for (int s = 0; s < g.order; ++s) f(s) = std::conj(x.coeffs(g.inv(s)));
  return VnElement{g, f, x.matrix.adjoint()};
}

cplx plancherel_trace(const VnElement& x) { return x.coeffs(0); }

double lp_norm(const VnElement& x, double p) {
  return schatten_norm(x.matrix, p, 1.0 / x.group.order);
}

SuperOperator fourier_multiplier(const GroupSymbol& phi) {
  const FiniteGroup& g = phi.group;
  const int n = g.order;
  if (n > 32) fail("fourier_multiplier capped at order 32");
  SuperOperator t;
  t.dim = n;
  t.choi = CMatrix::Zero(n * n, n * n);
  // Schur multiplier with weight phi(k l^-1) at entry (k, l):
  // J(T) block (k,l) = phi(k l^-1) E_kl.
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      t.choi(k * n + k, l * n + l) = phi.values[g.op(k, g.inv(l))];
  t.tag = SuperOperator::Tag::fourier;
  t.tag_values = phi.values;
  return t;
}

CMatrix fundamental_unitary(const FiniteGroup& g) {
  const int n = g.order;
  if (n * n > kUnitaryCap) fail("fundamental unitary cap exceeded");
  CMatrix w = CMatrix::Zero(n * n, n * n);
  for (int t = 0; t < n; ++t)
    for (int r = 0; r < n; ++r) w(t * n + g.op(t, r), t * n + r) = 1.0;
  return w;
}

CMatrix coproduct(const VnElement& x) {
  const int n = x.group.order;
  if (n * n > kUnitaryCap) fail("coproduct cap exceeded");
  const CMatrix w = fundamental_unitary(x.group);
  return w * kron(x.matrix, CMatrix::Identity(n, n)) * w.adjoint();
}

}  // namespace fgm
