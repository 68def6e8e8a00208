#ifndef FGM_NORMS_HPP
#define FGM_NORMS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fgm/cmatrix.hpp"
#include "fgm/group.hpp"
#include "fgm/superop.hpp"
#include "fgm/vn.hpp"

namespace fgm {

// Which SDP formulation carried a computation, with its convergence data.
struct NormStats {
  std::string route;
  double gap = 0.0;
  int iterations = 0;
};

// Completely bounded norm of T, computed as the diamond norm of the
// trace-pairing dual adjoint_map(T) via the two-block SDP on its Choi matrix.
// Routes:
//   full          — the SDP on the unreduced Choi matrix (side 2 dim^2,
//                   dim^4-scale variable count); any T, dim <= 6.
//   reduced       — the same SDP block-diagonalized through the commutant of
//                   the right translations; requires the group overload and a
//                   right-covariant T (Fourier and Herz-Schur multipliers
//                   are). Same optimum as full, dim^3-scale variables.
//   factorization — Haagerup factorization for Schur multipliers: minimal
//                   max-row/column Gram bound on [[A, psi],[psi*, C]] >= 0;
//                   requires the Choi matrix to carry a Schur-multiplier
//                   sparsity pattern. Side 2 dim, dim^2-scale variables.
//   automatic     — full for dim <= 4; else reduced when a group is supplied
//                   and T is right-covariant; else factorization when T is a
//                   Schur multiplier; else full up to dim 6.
// Overall cap dim <= 16. Throws when no route applies or the solver fails.
enum class CbRoute { automatic, full, reduced, factorization };

double cb_norm(const SuperOperator& t, NormStats* stats = nullptr,
               CbRoute route = CbRoute::automatic);
double cb_norm(const SuperOperator& t, const FiniteGroup& g,
               NormStats* stats = nullptr, CbRoute route = CbRoute::automatic);

// Decomposable norm with CP witnesses: minimal t such that the block map
// [[v1, T],[T°, v2]] is completely positive with v1(I) <= t I, v2(I) <= t I.
// Routes:
//   full — variables are the two full Choi matrices (PSD supermatrix of side
//          2 dim^2 plus two partial-trace blocks); any T, dim <= 8.
//   gram — for Schur multipliers only: averaging over the diagonal-unitary
//          group makes Schur witnesses optimal, leaving the symbol-level
//          program [[P, psi],[psi*, Q]] >= 0, P(i,i) <= t, Q(j,j) <= t.
// Complete positivity of the returned witnesses is re-verified.
enum class DecRoute { automatic, full, gram };

struct DecWitness {
  double value = 0.0;
  SuperOperator v1, v2;
  NormStats stats;
};

DecWitness dec_norm(const SuperOperator& t, DecRoute route = DecRoute::automatic);

// For T with T° = T (checked, 1e-10): minimal ||(T1+T2)(I)||_op over CP
// T1, T2 with T1 - T2 = T; agrees with dec_norm on such inputs.
double dec_norm_selfadjoint(const SuperOperator& t, NormStats* stats = nullptr);

// Fourier-Stieltjes norm of the symbol phi: minimal t with psi1(e) <= t,
// psi2(e) <= t and the 2|G| block Gram [[psi1, phi],[phi°, psi2]] PSD.
// The balanced single-t form equals the geometric-mean form by the
// c-rescaling of (psi1, psi2); the witnesses are returned.
struct BgWitness {
  double value = 0.0;
  GroupSymbol psi1, psi2;
  NormStats stats;
};

BgWitness bg_norm_sdp(const GroupSymbol& phi);

// Unbalanced form: minimize (psi1(e) + psi2(e))/2 over the same block-PSD
// constraint; equals bg_norm_sdp (tested equivalence of the two programs).
double bg_norm_sum_form(const GroupSymbol& phi);

// The paper-normalized product form inf ||psi1||_inf ||psi2||_inf, reported
// as t^2 of the balanced solve.
double bg_norm_product_form(const GroupSymbol& phi);

// Abelian closed form: sum over dual characters of |phi-hat(chi)|, with
// phi-hat(chi) = (1/|G|) sum_s phi(s) conj(chi(s)).
double bg_norm_abelian(const GroupSymbol& phi);

// For phi with phi-check = conj(phi) (checked, 1e-10): minimal
// phi1(e) + phi2(e) over positive definite phi1, phi2 with phi = phi1 - phi2.
double jordan_bg_norm(const GroupSymbol& phi, NormStats* stats = nullptr);

// The three norms of one Fourier symbol side by side, with closed-form
// oracles where available and the comparison-chain invariants evaluated.
struct NormReport {
  std::string subject;
  double cb = 0.0;
  double dec = 0.0;
  std::optional<double> bg;
  std::vector<std::pair<std::string, double>> oracle_values;
  std::vector<std::pair<std::string, NormStats>> solver_stats;
  bool invariants_ok = true;
  std::string invariant_message;
};

NormReport compute_norm_report(const GroupSymbol& phi);
std::string serialize_norm_report(const NormReport& r);
// CSV row: subject, cb, dec, bg (empty when absent), max pairwise discrepancy.
std::string norm_report_csv_row(const NormReport& r);
std::string norm_report_csv_header();

}  // namespace fgm

#endif  // FGM_NORMS_HPP
