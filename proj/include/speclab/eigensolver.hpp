#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstddef>
#include <vector>

namespace speclab {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct EigenSolverOptions {
    double tol = 1e-9;                  // on ||K u - mu M u||_2 / ||u||_M
    int max_applications_per_eig = 500; // operator applications budget per wanted pair
    std::size_t dense_threshold = 300;  // reduced sizes up to this use a dense solver
};

struct EigenPairs {
    std::vector<double> values;         // ascending
    std::vector<double> residuals;
    Eigen::MatrixXd vectors;            // full-length, zero on constrained dofs, M-normalised
    double shift = 0.0;
    int operator_applications = 0;
};

/// Smallest n_eigs eigenpairs of K u = mu M u with the listed dofs clamped to
/// zero (rows and columns removed).
///
/// Shift-invert Krylov-Schur on (K + sigma M)^{-1} M in the M inner product,
/// with sigma = 1e-3 trace(K)/trace(M) when nothing is constrained (so the
/// constant mode stays in the output as the ~0 eigenvalue) and sigma = 0
/// otherwise. The factorisation is a sparse LDL^T with AMD ordering. After
/// the first pass converges, further single-vector passes in the
/// M-orthogonal complement of the accepted vectors look for eigenvalues a
/// single Krylov sequence misses (exact multiplicities); any found replace the
/// largest accepted value. Every returned pair meets options.tol.
///
/// Throws std::invalid_argument for n_eigs outside [1, 20] or an empty reduced
/// system, std::runtime_error on factorisation failure or when the
/// application budget runs out.
EigenPairs solve_smallest(const SparseMatrix& K, const SparseMatrix& M,
                          const std::vector<int>& constrained_dofs, int n_eigs,
                          const EigenSolverOptions& options = {});

}  // namespace speclab
