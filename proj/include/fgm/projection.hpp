#ifndef FGM_PROJECTION_HPP
#define FGM_PROJECTION_HPP

#include <array>
#include <string>
#include <variant>

#include "fgm/group.hpp"
#include "fgm/norms.hpp"
#include "fgm/schur.hpp"
#include "fgm/superop.hpp"
#include "fgm/vn.hpp"

namespace fgm {

// ---------------------------------------------------------------------------
// Compression onto Fourier multipliers. For a finite group the projection is
// exact: P(T) = M_phi with phi(s) = tau(lambda_{s^-1} T(lambda_s)), where tau
// is the normalized trace. P is idempotent, completely positive-preserving,
// and cb-contractive.
// ---------------------------------------------------------------------------

struct FourierProjection {
  GroupSymbol symbol;
  SuperOperator multiplier;  // fourier_multiplier(symbol); carries the tag
};

FourierProjection project_fourier(const SuperOperator& t,
                                  const FiniteGroup& g);

// Literal route through the fundamental unitary W: the pairing
//   R(a, b) = (1/|G|^2) Tr[(id (x) T)(W (lambda_a (x) 1) W*) .
//             W (lambda_b (x) 1) W*]
// vanishes for b != a^-1 and returns phi(a) at b = a^-1. The off-diagonal
// vanishing is verified internally (throws beyond 1e-8); the diagonal is the
// returned symbol. Agrees with project_fourier within 1e-10.
GroupSymbol project_fourier_slow(const SuperOperator& t, const FiniteGroup& g);

// ---------------------------------------------------------------------------
// Compression onto Herz-Schur multipliers: averaging over right translations,
//   psi'(s, t) = (1/|G|) sum_r psi(s r, t r).
// The result passes is_herz_schur exactly; the average is idempotent, linear,
// CP-preserving and cb-contractive on the induced Schur multipliers.
// ---------------------------------------------------------------------------

BiSymbol project_herz_schur(const BiSymbol& psi);

// ---------------------------------------------------------------------------
// 2x2 matricial amplification: apply project_fourier entrywise to a 2x2
// block of superoperators (= id_{M_2} (x) P). Preserves complete positivity
// of the induced block map on M_{2|G|}.
// ---------------------------------------------------------------------------

using SuperBlocks2 = std::array<std::array<SuperOperator, 2>, 2>;

SuperBlocks2 matricial_project(const SuperBlocks2& blocks,
                               const FiniteGroup& g);

// The block map S on M_{2n} acting entrywise: S(x)_{ij} = T_ij(x_ij) on the
// n x n subblocks. Used to state complete positivity of a witness block.
SuperOperator assemble_block_map(const SuperBlocks2& blocks);

// ---------------------------------------------------------------------------
// Decomposability-witness roundtrip: dec_norm gives CP witnesses (v1, v2) for
// M_phi; projecting the block [[v1, M_phi],[M_phi°, v2]] entrywise yields
// positive definite symbols (psi1, psi2) with the block Gram PSD, so
// max(psi1(e), psi2(e)) is an upper bound for the Fourier-Stieltjes norm of
// phi, and it is at most dec_norm(M_phi) up to solver tolerance.
// ---------------------------------------------------------------------------

struct WitnessRoundtrip {
  GroupSymbol psi1, psi2;
  double bound = 0.0;      // max(psi1(e), psi2(e))
  double dec_value = 0.0;  // dec_norm of the multiplier, for comparison
};

WitnessRoundtrip dec_witness_roundtrip(const GroupSymbol& phi);

// ---------------------------------------------------------------------------
// Reporting
// ---------------------------------------------------------------------------

struct ProjectionReport {
  std::string input;  // human-readable descriptor of the input map
  std::variant<GroupSymbol, BiSymbol> output_symbol;
  double cb_before = 0.0;
  double cb_after = 0.0;
  bool cp_preserved = false;  // CP in implies CP out (true when not CP in)
  bool fixed_point = false;   // tagged input reproduced exactly
};

// Report for the Fourier compression of t. cb norms use the automatic route
// with the group supplied, so covariant inputs stay tractable.
ProjectionReport fourier_projection_report(const SuperOperator& t,
                                           const FiniteGroup& g,
                                           const std::string& label);

// Report for the Herz-Schur averaging of psi; cb norms via the symbol-level
// factorization route on both sides.
ProjectionReport herz_schur_projection_report(const BiSymbol& psi,
                                              const std::string& label);

std::string serialize_projection_report(const ProjectionReport& r);

}  // namespace fgm

#endif  // FGM_PROJECTION_HPP
