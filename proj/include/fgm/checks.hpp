#ifndef FGM_CHECKS_HPP
#define FGM_CHECKS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fgm/amen.hpp"
#include "fgm/group.hpp"

// Property checks behind the `verify` subcommand and the acceptance suite.
// Each function draws its own seeded ensemble, exercises one documented
// identity, and reports the worst observed discrepancy; callers choose the
// instance counts. All checks are deterministic given (inputs, seed).
namespace fgm {

struct CheckRow {
  std::string id;      // theorem id (or auxiliary check name)
  std::string target;  // group spec or family label
  int count = 0;       // instances exercised
  bool pass = false;
  double max_discrepancy = 0.0;
  double tolerance = 0.0;
  std::string detail;  // routes, ensembles, sub-check numbers (deterministic)
};

// The documented theorem-id registry: id -> one-line description. `verify`
// accepts exactly these ids; failure rows cite the id as their anchor.
const std::vector<std::pair<std::string, std::string>>& theorem_registry();
bool is_registry_id(const std::string& id);

// Deterministic per-item seed derivation (splitmix-style), so suite runs
// give bit-identical results regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b);

// dec-eq-bg and cb-eq-dec on one group: random symbols, three norms each.
// |dec - bg| is compared relative to max(1, bg); |cb - dec| absolutely.
std::vector<CheckRow> check_norm_isometries(const FiniteGroup& g, int symbols,
                                            std::uint64_t seed, double tol);

// bg_norm_sdp vs the character-sum closed form on an abelian group, plus
// jordan_bg_norm on self-circ-adjoint symbols; includes the frozen
// Z2, phi=(1,3) -> 3 case when |G| = 2. Throws on non-abelian input.
CheckRow check_abelian_oracle(const FiniteGroup& g, int symbols,
                              std::uint64_t seed, double tol);

// |bg_norm_sdp(phi) - phi(e)| on Gram-constructed positive definite symbols.
CheckRow check_pd_norm(const FiniteGroup& g, int symbols, std::uint64_t seed,
                       double tol);

// The same multiplier normed through the group-side diamond program and
// through the Haagerup factorization program for its Herz-Schur matrix form.
CheckRow check_transference(const FiniteGroup& g, int symbols,
                            std::uint64_t seed, double tol);

// kappa-cp: the Fourier projection fixes tagged multipliers and is
// idempotent (to one rounding of the trace pairing) and maps CP maps to CP
// multipliers. kappa-contractive: cb does not grow by more than tol; the
// ensemble is generic up to group order 4 and right-covariant above (where
// only the block-diagonalized cb route is affordable), named in `detail`.
std::vector<CheckRow> check_kappa(const FiniteGroup& g, int fixed_count,
                                  int cp_count, int contractive_count,
                                  std::uint64_t seed, double tol);

// Right-invariance (exact), cb contractivity (factorization route on both
// sides), and CP preservation of the Herz-Schur averaging.
CheckRow check_q_herz_schur(const FiniteGroup& g, int bisymbols,
                            std::uint64_t seed, double tol);

// The coproduct pairing identity for extracted Schur symbols on random
// (u, v, x, y, T) tuples, and the fundamental-unitary conjugation identity
// W (E_st (x) lambda_u) W* = E_st (x) lambda_{s u t^-1} on all triples.
CheckRow check_mxyT_pairing(const FiniteGroup& g, int tuples,
                            std::uint64_t seed, double tol);

// cb(extracted Schur multiplier) <= cb(T) ||x||_p ||y||_p* + tol for
// p in {1, 2, inf}.
CheckRow check_lemma_cb_bound(const FiniteGroup& g, int triples,
                              std::uint64_t seed, double tol);

// Exact |K|^3 = sum_{s in K} |K cap sK|^2 over every subgroup of g.
CheckRow check_disco_equality(const FiniteGroup& g);

// Doubling bound with constant c on Z-interval balls of radius 1..rmax,
// cross-checked against the closed form sum_{|s|<=r} (2r+1-|s|)^2.
CheckRow check_disco_interval(int rmax, double doubling_c);

// Layer-cake threshold selection on random densities over the carrier;
// every selected threshold is re-verified here by direct set arithmetic,
// independently of the library's own post-check.
CheckRow check_layer_cake(const std::string& target, const Carrier& carrier,
                          int instances, std::uint64_t seed);

// Smoothing at most doubles the conjugation defect on Heisenberg balls up to
// `radius`, and smoothed densities on finite groups are positive definite.
CheckRow check_smoothing(int radius, int samples, std::uint64_t seed);

// Eigenvalue programs against the dense eigensolver, sides 2..max_side.
CheckRow check_sdp_selftest(int instances, int max_side, std::uint64_t seed,
                            double tol);

std::string check_rows_csv(const std::vector<CheckRow>& rows);

}  // namespace fgm

#endif  // FGM_CHECKS_HPP
