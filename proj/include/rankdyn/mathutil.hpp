#pragma once

#include <vector>

namespace rankdyn {

/// Eigen-decomposition of a symmetric matrix.
/// `values[j]` is the j-th eigenvalue (sorted descending) and
/// `vectors[i * dim + j]` is component i of its unit eigenvector.
struct SymmetricEigen {
  int dim = 0;
  std::vector<double> values;
  std::vector<double> vectors;
};

/// Cyclic Jacobi diagonalization of a symmetric matrix (row-major, dim*dim).
/// Sweeps rotate the upper triangle in fixed (p,q) order until the largest
/// off-diagonal magnitude drops below 1e-12, so results are deterministic.
/// Throws ComputationError if convergence is not reached.
SymmetricEigen jacobi_eigen(const std::vector<double>& matrix, int dim);

/// Lower Cholesky factor L with A = L*L^T. Throws ComputationError when the
/// matrix is not positive definite.
std::vector<double> cholesky_lower(const std::vector<double>& matrix, int dim);

/// Matrix inverse via Gauss-Jordan elimination with partial pivoting.
/// Throws ComputationError when the matrix is singular to working precision.
std::vector<double> invert_matrix(const std::vector<double>& matrix, int dim);

/// Regularized upper incomplete gamma Q(a, x) = Γ(a, x)/Γ(a), a > 0, x >= 0,
/// evaluated by the power series for x < a + 1 and a continued fraction
/// otherwise. Absolute accuracy well below 1e-10 over the tested range.
double regularized_gamma_q(double a, double x);

/// Chi-square survival function P(X >= x) for df degrees of freedom,
/// i.e. Q(df/2, x/2).
double chi_square_survival(double x, int df);

}  // namespace rankdyn
