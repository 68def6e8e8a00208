#ifndef FGM_VN_HPP
#define FGM_VN_HPP

#include <string>
#include <vector>

#include "fgm/cmatrix.hpp"
#include "fgm/group.hpp"
#include "fgm/superop.hpp"

namespace fgm {

// phi : G -> C, indexed by group element.
struct GroupSymbol {
  FiniteGroup group;
  std::vector<cplx> values;
};

GroupSymbol make_symbol(const FiniteGroup& g, std::vector<cplx> values);
// phi-check: s -> phi(s^-1).
GroupSymbol reflect_symbol(const GroupSymbol& phi);
// phi-circ: s -> conj(phi(s^-1)); the symbol of (M_phi)°.
GroupSymbol circ_symbol(const GroupSymbol& phi);
GroupSymbol pointwise_product(const GroupSymbol& a, const GroupSymbol& b);

// Symbol file: {"group": <family spec or group JSON>, "values": [[re,im],...]}
// (bare numbers allowed for real values).
GroupSymbol parse_group_symbol(const std::string& json_text);
std::string serialize_group_symbol(const GroupSymbol& phi);

// x = lambda(f) = sum_s f(s) lambda_s in VN(G), with its |G|x|G| realization
// by left-translation permutation matrices cached.
struct VnElement {
  FiniteGroup group;
  CVector coeffs;
  CMatrix matrix;
};

// lambda_s e_t = e_{st}.
CMatrix lambda_matrix(const FiniteGroup& g, int s);
// rho_r e_t = e_{tr}; commutes with every lambda_s.
CMatrix right_translation_matrix(const FiniteGroup& g, int r);

VnElement lambda(const FiniteGroup& g, int s);
VnElement lambda(const FiniteGroup& g, const CVector& f);
VnElement vn_one(const FiniteGroup& g);
// Inverse of the matrix realization: f(s) = Tr(lambda_s^* M)/|G|. Throws if
// M is not in VN(G) within tol (defect against the reconstruction).
VnElement vn_from_matrix(const FiniteGroup& g, const CMatrix& m,
                         double tol = 1e-8);

VnElement vn_mul(const VnElement& x, const VnElement& y);
VnElement vn_adjoint(const VnElement& x);

// tau_G(x) = coeffs(e) = Tr(matrix)/|G|.
cplx plancherel_trace(const VnElement& x);
// L^p norm w.r.t. tau_G: schatten_norm(matrix, p, 1/|G|).
double lp_norm(const VnElement& x, double p);

// The map with M_phi(lambda_s) = phi(s) lambda_s, extended to all of M_{|G|}
// as the Schur multiplier with (s,t) weight phi(st^-1) (so the full-matrix cb
// norm equals the Fourier-multiplier cb norm by transference).
SuperOperator fourier_multiplier(const GroupSymbol& phi);

// W(e_t (x) e_r) = e_t (x) e_{tr} on l2(G x G), composite index t*|G| + r.
CMatrix fundamental_unitary(const FiniteGroup& g);

// Delta(x) = W (x (x) 1) W^-1; satisfies Delta(lambda_s) = lambda_s (x) lambda_s.
CMatrix coproduct(const VnElement& x);

}  // namespace fgm

#endif  // FGM_VN_HPP
