#ifndef FGM_ISOTYPIC_HPP
#define FGM_ISOTYPIC_HPP

#include <vector>

#include "fgm/cmatrix.hpp"
#include "fgm/group.hpp"
#include "fgm/superop.hpp"
#include "fgm/vn.hpp"

namespace fgm {

// One equivalence class of irreducible subrepresentations of the left regular
// representation on l^2(G): an orthonormal basis of a single invariant
// subspace carrying the class, the unitary representation matrices on that
// subspace, and the multiplicity inside l^2(G) (= dim for the regular
// representation).
struct IrrepClass {
  CMatrix basis;             // |G| x dim, orthonormal columns
  int dim = 0;
  int multiplicity = 0;
  std::vector<CMatrix> rep;  // rep[g] = basis^* lambda_g basis, unitary
  std::vector<cplx> character;  // character[g] = Tr rep[g]
};

struct IsotypicDecomposition {
  FiniteGroup group;
  std::vector<IrrepClass> classes;
};

// Splits l^2(G) under left translation by diagonalizing a generic Hermitian
// element of the right-translation algebra (the commutant of lambda); each
// eigenspace of such an element is one irreducible invariant subspace. Every
// returned class passes unitarity, invariance (lambda_g basis = basis rep[g])
// and character-irreducibility checks at 1e-8; degenerate draws retry with the
// next seed. Deterministic for a fixed seed. Classes are ordered by the
// eigenvalue that produced them; sum over classes of dim * multiplicity = |G|.
IsotypicDecomposition isotypic_decomposition(const FiniteGroup& g,
                                             unsigned seed = 1);

// True when conjugation by rho_r (x) rho_r fixes the Choi matrix for every r,
// i.e. T(rho_r x rho_r^*) = rho_r T(x) rho_r^* for all right translations.
// Fourier and Herz-Schur multipliers are right-covariant; tolerance is
// relative to the largest Choi entry.
bool is_right_covariant(const SuperOperator& t, const FiniteGroup& g,
                        double tol = 1e-10);

// Commutant coordinates of a right-covariant matrix X on C^{|G|} (x) C^{|G|}:
// X is determined by matrices B_g in M_{|G|} via
//   B_g(a, b) = X[(a g)|G| + g, b |G|],
// and is unitarily equivalent to the direct sum over classes pi of
//   block_pi = sum_g B_g (x) rep_pi[g]   (side |G| * dim_pi),
// each repeated dim_pi times. In particular X is PSD iff every block is PSD,
// and the spectrum of X is the union of the block spectra with multiplicity
// dim_pi. Throws if X is not right-covariant at tolerance tol.
std::vector<CMatrix> covariant_blocks(const CMatrix& x,
                                      const IsotypicDecomposition& iso,
                                      double tol = 1e-8);

}  // namespace fgm

#endif  // FGM_ISOTYPIC_HPP
