#include "fgm/projection.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fgm {

namespace {

void check_dim(const SuperOperator& t, const FiniteGroup& g,
               const char* what) {
  if (t.dim != g.order)
    throw std::invalid_argument(std::string(what) +
                                ": map dimension does not match group order");
}

// (id (x) T) on M_{n} (x) M_{n}, applied blockwise on the n x n subblocks;
// avoids building the n^2-dimensional superoperator.
CMatrix apply_id_tensor(const SuperOperator& t, const CMatrix& x) {
  const int n = t.dim;
  CMatrix out(x.rows(), x.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.block(i * n, j * n, n, n) = t.apply(x.block(i * n, j * n, n, n));
  return out;
}

}  // namespace

FourierProjection project_fourier(const SuperOperator& t,
                                  const FiniteGroup& g) {
  check_dim(t, g, "project_fourier");
  const int n = g.order;
  std::vector<cplx> phi(n);
  for (int s = 0; s < n; ++s) {
    const CMatrix ls = lambda_matrix(g, s);
    const CMatrix lsi = lambda_matrix(g, g.inv(s));
    phi[s] = (lsi * t.apply(ls)).trace() / static_cast<double>(n);
  }
  FourierProjection out;
  out.symbol = make_symbol(g, std::move(phi));
  out.multiplier = fourier_multiplier(out.symbol);
  return out;
}

GroupSymbol project_fourier_slow(const SuperOperator& t,
                                 const FiniteGroup& g) {
  check_dim(t, g, "project_fourier_slow");
  const int n = g.order;
  const double nn = static_cast<double>(n) * n;
  const CMatrix w = fundamental_unitary(g);
  const CMatrix id = CMatrix::Identity(n, n);

  std::vector<CMatrix> conj(n);
  for (int a = 0; a < n; ++a)
    conj[a] = w * kron(lambda_matrix(g, a), id) * w.adjoint();

  std::vector<cplx> phi(n);
  for (int a = 0; a < n; ++a) {
    const CMatrix y = apply_id_tensor(t, conj[a]);
    for (int b = 0; b < n; ++b) {
      const cplx r = (y * conj[b]).trace() / nn;
      if (b == g.inv(a)) {
        phi[a] = r;
      } else if (std::abs(r) > 1e-8) {
        throw std::runtime_error(
            "project_fourier_slow: pairing not diagonal; fundamental-unitary "
            "construction is inconsistent");
      }
    }
  }
  return make_symbol(g, std::move(phi));
}

BiSymbol project_herz_schur(const BiSymbol& psi) {
  const FiniteGroup& g = psi.group;
  const int n = g.order;
  // psi'(s, t) = (1/|G|) sum_r psi(s r, t r) depends only on s t^-1; one
  // canonical sum per value keeps the average exactly right-invariant.
  std::vector<cplx> m(n);
  for (int gg = 0; gg < n; ++gg) {
    cplx acc = 0.0;
    for (int u = 0; u < n; ++u) acc += psi.at(g.op(gg, u), u);
    m[gg] = acc / static_cast<double>(n);
  }
  std::vector<cplx> out(static_cast<size_t>(n) * n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      out[static_cast<size_t>(s) * n + t] = m[g.op(s, g.inv(t))];
  return make_bisymbol(g, std::move(out));
}

SuperBlocks2 matricial_project(const SuperBlocks2& blocks,
                               const FiniteGroup& g) {
  SuperBlocks2 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out[i][j] = project_fourier(blocks[i][j], g).multiplier;
  return out;
}

SuperOperator assemble_block_map(const SuperBlocks2& blocks) {
  const int n = blocks[0][0].dim;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (blocks[i][j].dim != n)
        throw std::invalid_argument(
            "assemble_block_map: blocks must share one dimension");
  return superop_from_action(2 * n, [&blocks, n](const CMatrix& x) {
    CMatrix out(2 * n, 2 * n);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        out.block(i * n, j * n, n, n) =
            blocks[i][j].apply(x.block(i * n, j * n, n, n));
    return out;
  });
}

WitnessRoundtrip dec_witness_roundtrip(const GroupSymbol& phi) {
  const FiniteGroup& g = phi.group;
  const SuperOperator t = fourier_multiplier(phi);
  const DecWitness dw = dec_norm(t);

  SuperBlocks2 blocks;
  blocks[0][0] = dw.v1;
  blocks[0][1] = t;
  blocks[1][0] = circ_map(t);
  blocks[1][1] = dw.v2;
  const SuperBlocks2 proj = matricial_project(blocks, g);

  WitnessRoundtrip out;
  out.psi1 = project_fourier(dw.v1, g).symbol;
  out.psi2 = project_fourier(dw.v2, g).symbol;
  out.dec_value = dw.value;

  // The projected block map stays completely positive, so the block Gram of
  // (psi1, phi, psi2) is PSD up to solver tolerance.
  const CpResult cp = is_completely_positive(assemble_block_map(proj), 1e-6);
  if (!cp.cp)
    throw std::runtime_error(
        "dec_witness_roundtrip: projected witness block lost complete "
        "positivity");
  if (!block_pd_check(out.psi1, phi, out.psi2, 1e-6))
    throw std::runtime_error(
        "dec_witness_roundtrip: block positive-definiteness check failed");

  const double p1 = out.psi1.values[g.identity].real();
  const double p2 = out.psi2.values[g.identity].real();
  out.bound = std::max(p1, p2);
  return out;
}

namespace {

bool values_close(const std::vector<cplx>& a, const std::vector<cplx>& b,
                  double tol) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace

ProjectionReport fourier_projection_report(const SuperOperator& t,
                                           const FiniteGroup& g,
                                           const std::string& label) {
  const FourierProjection p = project_fourier(t, g);
  ProjectionReport r;
  r.input = label;
  r.output_symbol = p.symbol;
  r.cb_before = cb_norm(t, g);
  r.cb_after = cb_norm(p.multiplier, g);
  const bool cp_in = is_completely_positive(t).cp;
  const bool cp_out = is_completely_positive(p.multiplier).cp;
  r.cp_preserved = !cp_in || cp_out;
  r.fixed_point = t.tag == SuperOperator::Tag::fourier &&
                  values_close(t.tag_values, p.symbol.values, 1e-10);
  return r;
}

ProjectionReport herz_schur_projection_report(const BiSymbol& psi,
                                              const std::string& label) {
  const BiSymbol avg = project_herz_schur(psi);
  ProjectionReport r;
  r.input = label;
  r.output_symbol = avg;
  r.cb_before = cb_norm(schur_superop(psi), nullptr, CbRoute::factorization);
  r.cb_after = cb_norm(schur_superop(avg), nullptr, CbRoute::factorization);
  const bool cp_in = is_completely_positive(schur_superop(psi)).cp;
  const bool cp_out = is_completely_positive(schur_superop(avg)).cp;
  r.cp_preserved = !cp_in || cp_out;
  r.fixed_point = is_herz_schur(psi) && values_close(psi.values, avg.values, 1e-10);
  return r;
}

std::string serialize_projection_report(const ProjectionReport& r) {
  nlohmann::json j;
  j["input"] = r.input;
  auto symbol = nlohmann::json::array();
  if (std::holds_alternative<GroupSymbol>(r.output_symbol)) {
    j["output_kind"] = "fourier";
    for (const cplx& v : std::get<GroupSymbol>(r.output_symbol).values)
      symbol.push_back({v.real(), v.imag()});
  } else {
    j["output_kind"] = "herz-schur";
    for (const cplx& v : std::get<BiSymbol>(r.output_symbol).values)
      symbol.push_back({v.real(), v.imag()});
  }
  j["output_symbol"] = symbol;
  j["cb_before"] = r.cb_before;
  j["cb_after"] = r.cb_after;
  j["cp_preserved"] = r.cp_preserved;
  j["fixed_point"] = r.fixed_point;
  return j.dump(2);
}

}  // namespace fgm
