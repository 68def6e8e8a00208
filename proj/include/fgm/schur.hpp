#ifndef FGM_SCHUR_HPP
#define FGM_SCHUR_HPP

#include <string>
#include <vector>

#include "fgm/group.hpp"
#include "fgm/superop.hpp"
#include "fgm/vn.hpp"

namespace fgm {

// psi : G x G -> C, row-major values[s * |G| + t].
struct BiSymbol {
  FiniteGroup group;
  std::vector<cplx> values;

  const cplx& at(int s, int t) const { return values[s * group.order + t]; }
  cplx& at(int s, int t) { return values[s * group.order + t]; }
};

BiSymbol make_bisymbol(const FiniteGroup& g, std::vector<cplx> values);

// True iff psi(sr, tr) = psi(s, t) for all s, t, r (within tol).
bool is_herz_schur(const BiSymbol& psi, double tol = 1e-12);

// Entrywise multiplication by psi in the G-indexed matrix-unit basis.
SuperOperator schur_superop(const BiSymbol& psi);

// psi(s,t) = phi(s t^-1); restricted to VN(G) this is fourier_multiplier(phi).
BiSymbol herz_schur_lift(const GroupSymbol& phi);

// Gram test: [phi(s^-1 t)]_{s,t} PSD within tol (false when not Hermitian).
bool is_positive_definite(const GroupSymbol& phi, double tol = 1e-10);

// The Gram matrix [phi(s^-1 t)]_{s,t} itself.
CMatrix symbol_gram(const GroupSymbol& phi);

// PSD test of the 2|G| x 2|G| block Gram
//   [[psi1(s^-1 t), phi(s^-1 t)], [phi°(s^-1 t), psi2(s^-1 t)]]
// with phi°(s) = conj(phi(s^-1)); false when the psi blocks fail Hermitian
// symmetry.
bool block_pd_check(const GroupSymbol& psi1, const GroupSymbol& phi,
                    const GroupSymbol& psi2, double tol = 1e-10);
CMatrix block_gram(const GroupSymbol& psi1, const GroupSymbol& phi,
                   const GroupSymbol& psi2);

// phi_{x,y,T}(s,t) = tau_G( lambda_t y lambda_{s^-1} T(lambda_s x lambda_{t^-1}) ).
BiSymbol symbol_extraction(const VnElement& x, const VnElement& y,
                           const SuperOperator& t);

// BiSymbol file: 2-D JSON array, row = s, column = t, entries [re,im] or bare
// numbers.
BiSymbol parse_bisymbol(const FiniteGroup& g, const std::string& json_text);
std::string serialize_bisymbol(const BiSymbol& psi);

}  // namespace fgm

#endif  // FGM_SCHUR_HPP
