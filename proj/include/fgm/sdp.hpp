#ifndef FGM_SDP_HPP
#define FGM_SDP_HPP

#include <string>
#include <vector>

#include "fgm/cmatrix.hpp"

namespace fgm {

// One Hermitian-symmetrized entry of a constraint matrix: contributes
// value at (row, col) and conj(value) at (col, row); diagonal entries
// (row == col) must be real and contribute once.
struct SdpTriplet {
  int block = 0;
  int row = 0;
  int col = 0;
  cplx value{0.0, 0.0};
};

// Linear matrix inequality form over Hermitian blocks:
//   minimize  objective . y
//   subject to  constant_term + sum_i y_i * constraints[i]  >= 0  (PSD),
// block-diagonal over block_dims. Every constraint references only declared
// blocks and in-range entries.
struct SdpProblem {
  std::vector<int> block_dims;
  std::vector<double> objective;
  std::vector<std::vector<SdpTriplet>> constraints;
  std::vector<SdpTriplet> constant_term;
};

enum class SdpStatus { optimal, infeasible, max_iterations };

struct SdpSolution {
  SdpStatus status = SdpStatus::max_iterations;
  double primal_value = 0.0;  // objective . y at the returned point
  double dual_value = 0.0;
  double duality_gap = 0.0;   // primal_value - dual_value, nonnegative at optimal
  std::vector<CMatrix> primal_blocks;  // PSD slack constant + sum y_i F_i
  std::vector<CMatrix> dual_blocks;    // PSD dual witness Z, <F_i, Z> = objective_i
  std::vector<double> y;
  int iterations = 0;
  std::string diagnostics;
};

// Primal-dual path-following interior-point solve (Nesterov-Todd scaling,
// Mehrotra predictor-corrector), Hermitian blocks handled natively.
// Deterministic: identical input gives identical output. Tolerances must be
// >= 1e-9; total PSD dimension <= 1500. Numerical breakdown returns
// max_iterations with diagnostics, never an unverified "optimal".
SdpSolution solve_sdp(const SdpProblem& p, double gap_tol = 1e-8,
                      double feas_tol = 1e-8, int max_iter = 200);

// [[Re A, -Im A], [Im A, Re A]]; PSD iff A PSD, eigenvalues doubled.
RMatrix embed_hermitian(const CMatrix& a);

// Documented debug schema: {"block_dims": [...], "objective": [...],
// "constant": [[block,row,col,re,im],...], "constraints": [[...],...]}.
std::string dump_sdp_json(const SdpProblem& p);

}  // namespace fgm

#endif  // FGM_SDP_HPP
