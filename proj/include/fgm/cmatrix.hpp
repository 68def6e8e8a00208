#ifndef FGM_CMATRIX_HPP
#define FGM_CMATRIX_HPP

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

namespace fgm {

using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using cplx = std::complex<double>;

inline CMatrix dagger(const CMatrix& a) { return a.adjoint(); }

bool is_hermitian(const CMatrix& a, double tol = 1e-10);

// Largest singular value; relative accuracy ~1e-10. Throws on empty input.
double operator_norm(const CMatrix& a);

// (weight * sum sigma_i^p)^(1/p); p = infinity returns the operator norm.
// weight multiplies the trace (1/n realizes a normalized trace). p >= 1.
double schatten_norm(const CMatrix& a, double p, double weight = 1.0);

// A acts on C^dimA (x) C^dimB with composite index a*dimB + b.
// over_first=true traces out the first factor (returns dimB x dimB).
CMatrix partial_trace(const CMatrix& a, int dim_a, int dim_b, bool over_first);

// Smallest eigenvalue of a Hermitian matrix; input is symmetrized after a
// 1e-10 Hermitian check.
double min_eig_hermitian(const CMatrix& a);
double max_eig_hermitian(const CMatrix& a);

// Ascending eigenvalues and matching orthonormal columns.
void hermitian_eigen(const CMatrix& a, Eigen::VectorXd& values, CMatrix& vectors);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Deterministic test/suite inputs. Entries have Re, Im uniform in [-1, 1].
CMatrix random_matrix(int rows, int cols, std::mt19937_64& rng);
CMatrix random_hermitian(int n, std::mt19937_64& rng);
// A A* / n for a random A: PSD with unit-scale entries.
CMatrix random_psd(int n, std::mt19937_64& rng);

}  // namespace fgm

#endif  // FGM_CMATRIX_HPP
