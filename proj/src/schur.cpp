#include "fgm/schur.hpp"

#include <stdexcept>

#include "json.hpp"

namespace fgm {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("schur: " + msg);
}

}  // namespace

BiSymbol make_bisymbol(const FiniteGroup& g, std::vector<cplx> values) {
  if (static_cast<int>(values.size()) != g.order * g.order)
    fail("bisymbol needs |G|^2 values");
  return BiSymbol{g, std::move(values)};
}

bool is_herz_schur(const BiSymbol& psi, double tol) {
  const FiniteGroup& g = psi.group;
  for (int s = 0; s < g.order; ++s)
    for (int t = 0; t < g.order; ++t)
      for (int r = 0; r < g.order; ++r)
        if (std::abs(psi.at(g.op(s, r), g.op(t, r)) - psi.at(s, t)) > tol)
          return false;
  return true;
}

SuperOperator schur_superop(const BiSymbol& psi) {
  const int n = psi.group.order;
  if (n > 32) fail("schur_superop capped at order 32");
  SuperOperator t;
  t.dim = n;
  t.choi = CMatrix::Zero(n * n, n * n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) t.choi(k * n + k, l * n + l) = psi.at(k, l);
  t.tag = SuperOperator::Tag::schur;
  t.tag_values = psi.values;
  return t;
}

BiSymbol herz_schur_lift(const GroupSymbol& phi) {
  const FiniteGroup& g = phi.group;
  std::vector<cplx> v(g.order * g.order);
  for (int s = 0; s < g.order; ++s)
    for (int t = 0; t < g.order; ++t)
      v[s * g.order + t] = phi.values[g.op(s, g.inv(t))];
  return BiSymbol{g, std::move(v)};
}

CMatrix symbol_gram(const GroupSymbol& phi) {
  const FiniteGroup& g = phi.group;
  CMatrix m(g.order, g.order);
  for (int s = 0; s < g.order; ++s)
    for (int t = 0; t < g.order; ++t) m(s, t) = phi.values[g.quotient(s, t)];
  return m;
}

bool is_positive_definite(const GroupSymbol& phi, double tol) {
  if (tol < 0.0) fail("is_positive_definite: tol < 0");
  const CMatrix gram = symbol_gram(phi);
  if (!is_hermitian(gram, 1e-10)) return false;
  return min_eig_hermitian(gram) >= -tol;
}

CMatrix block_gram(const GroupSymbol& psi1, const GroupSymbol& phi,
                   const GroupSymbol& psi2) {
  const FiniteGroup& g = phi.group;
  if (psi1.group.mult_table != g.mult_table ||
      psi2.group.mult_table != g.mult_table)
    fail("block_gram: group mismatch");
  const int n = g.order;
  const GroupSymbol phic = circ_symbol(phi);
  CMatrix m(2 * n, 2 * n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const int d = g.quotient(s, t);
      m(s, t) = psi1.values[d];
      m(s, n + t) = phi.values[d];
      m(n + s, t) = phic.values[d];
      m(n + s, n + t) = psi2.values[d];
    }
  return m;
}

bool block_pd_check(const GroupSymbol& psi1, const GroupSymbol& phi,
                    const GroupSymbol& psi2, double tol) {
  if (tol < 0.0) fail("block_pd_check: tol < 0");
  const CMatrix m = block_gram(psi1, phi, psi2);
  if (!is_hermitian(m, 1e-10)) return false;
  return min_eig_hermitian(m) >= -tol;
}

BiSymbol symbol_extraction(const VnElement& x, const VnElement& y,
                           const SuperOperator& t) {
  const FiniteGroup& g = x.group;
  if (y.group.mult_table != g.mult_table) fail("symbol_extraction: group mismatch");
  if (t.dim != g.order) fail("symbol_extraction: dimension mismatch");
  const int n = g.order;
  std::vector<CMatrix> lam(n);
  for (int s = 0; s < n; ++s) lam[s] = lambda_matrix(g, s);
  std::vector<cplx> v(n * n);
  for (int s = 0; s < n; ++s)
    for (int u = 0; u < n; ++u) {
      const CMatrix inner = t.apply(lam[s] * x.matrix * lam[g.inv(u)]);
      v[s * n + u] =
          (lam[u] * y.matrix * lam[g.inv(s)] * inner).trace() /
          static_cast<double>(n);
    }
  return BiSymbol{g, std::move(v)};
}

BiSymbol parse_bisymbol(const FiniteGroup& g, const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(std::string("bad bisymbol JSON: ") + e.what());
  }
  if (!j.is_array() || static_cast<int>(j.size()) != g.order)
    fail("bisymbol must be a |G| x |G| array");
  std::vector<cplx> v;
  v.reserve(g.order * g.order);
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != g.order)
      fail("bisymbol must be a |G| x |G| array");
    for (const auto& e : row) {
      if (e.is_number()) {
        v.emplace_back(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2) {
        v.emplace_back(e[0].get<double>(), e[1].get<double>());
      } else {
        fail("bisymbol entries must be numbers or [re, im] pairs");
      }
    }
  }
  return BiSymbol{g, std::move(v)};
}

std::string serialize_bisymbol(const BiSymbol& psi) {
  const int n = psi.group.order;
  auto rows = nlohmann::json::array();
  for (int s = 0; s < n; ++s) {
    auto row = nlohmann::json::array();
    for (int t = 0; t < n; ++t)
      row.push_back({psi.at(s, t).real(), psi.at(s, t).imag()});
    rows.push_back(row);
  }
  return rows.dump();
}

}  // namespace fgm
