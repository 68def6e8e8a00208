#ifndef FGM_SUPEROP_HPP
#define FGM_SUPEROP_HPP

#include <functional>
#include <vector>

#include "fgm/cmatrix.hpp"

namespace fgm {

// Linear map T on M_dim, stored through its Choi matrix
//   J(T) = sum_{k,l} E_kl (x) T(E_kl)
// with composite index k*dim + (output row). Optional tags record that the
// map is a Fourier multiplier (symbol per group element) or a Schur
// multiplier (bi-symbol, row-major (s,t)); tags are advisory and re-checked
// where they matter.
struct SuperOperator {
  enum class Tag { none, fourier, schur };

  int dim = 0;
  CMatrix choi;
  Tag tag = Tag::none;
  std::vector<cplx> tag_values;  // phi (dim entries) or psi (dim^2 entries)

  // T(x) by Choi-block contraction. A member rather than a free function so
  // that unqualified calls never collide with std::apply through ADL.
  CMatrix apply(const CMatrix& x) const;
};

struct CpResult {
  bool cp = false;
  double witness = 0.0;  // smallest eigenvalue of the (hermitized) Choi matrix
};

// Map construction and basic algebra. Dimension cap 32 keeps Choi matrices
// (dim^2 x dim^2) at a sane size.
SuperOperator superop_from_action(
    int dim, const std::function<CMatrix(const CMatrix&)>& action);
SuperOperator identity_superop(int dim);
SuperOperator transpose_superop(int dim);
SuperOperator superop_add(const SuperOperator& a, const SuperOperator& b,
                          cplx ca = 1.0, cplx cb = 1.0);
SuperOperator superop_compose(const SuperOperator& a, const SuperOperator& b);

// (T°)(x) = T(x*)*; on Choi matrices this is the adjoint. Involutive.
SuperOperator circ_map(const SuperOperator& t);

// Trace adjoint: Tr(T(x) y) = Tr(x T*(y)) for all x, y.
SuperOperator adjoint_map(const SuperOperator& t);

// Hilbert-Schmidt adjoint: <T(x), y> = <x, T'(y)> with <a,b> = Tr(a* b);
// equals adjoint_map(circ_map(T)).
SuperOperator hs_adjoint(const SuperOperator& t);

// Choi positivity test; non-Hermitian Choi (beyond 1e-10) is never CP and
// the witness then refers to the Hermitian part.
CpResult is_completely_positive(const SuperOperator& t, double tol = 1e-9);

// id_m (x) T on M_{m*dim}, composite index i*dim + a.
SuperOperator tensor_with_identity(const SuperOperator& t, int m);

}  // namespace fgm

#endif  // FGM_SUPEROP_HPP
