#include "speclab/eigensolver.hpp"

#include "speclab/rng.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace speclab {
namespace {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct Reduced {
    SparseMatrix K;
    SparseMatrix M;
    std::vector<int> free_to_full;
};

Reduced reduce(const SparseMatrix& K, const SparseMatrix& M, const std::vector<int>& constrained)
{
    const int n = static_cast<int>(K.rows());
    std::vector<int> full_to_free(n, 0);
    for (int dof : constrained) {
        if (dof < 0 || dof >= n) {
            throw std::invalid_argument("solve_smallest: constrained dof out of range");
        }
        full_to_free[dof] = -1;
    }
    Reduced r;
    for (int i = 0; i < n; ++i) {
        if (full_to_free[i] == 0) {
            full_to_free[i] = static_cast<int>(r.free_to_full.size());
            r.free_to_full.push_back(i);
        } else {
            full_to_free[i] = -1;
        }
    }
    const int nf = static_cast<int>(r.free_to_full.size());
    if (nf == 0) {
        throw std::invalid_argument("solve_smallest: every dof is constrained");
    }
    auto pick = [&](const SparseMatrix& A) {
        std::vector<Eigen::Triplet<double>> triplets;
        triplets.reserve(A.nonZeros());
        for (int col = 0; col < A.outerSize(); ++col) {
            const int c = full_to_free[col];
            if (c < 0) {
                continue;
            }
            for (SparseMatrix::InnerIterator it(A, col); it; ++it) {
                const int row = full_to_free[it.row()];
                if (row >= 0) {
                    triplets.emplace_back(row, c, it.value());
                }
            }
        }
        SparseMatrix out(nf, nf);
        out.setFromTriplets(triplets.begin(), triplets.end());
        return out;
    };
    r.K = pick(K);
    r.M = pick(M);
    return r;
}

struct Pair {
    double mu;
    double theta;
    double residual;
    Vector u;  // M-normalised
};

// Rayleigh quotient and ||K u - mu M u||_2 / ||u||_M.
void rayleigh(const SparseMatrix& K, const SparseMatrix& M, const Vector& u, double& mu,
              double& residual)
{
    const Vector Ku = K * u;
    const Vector Mu = M * u;
    const double m_norm2 = u.dot(Mu);
    mu = u.dot(Ku) / m_norm2;
    residual = (Ku - mu * Mu).norm() / std::sqrt(m_norm2);
}

class ShiftInvert {
public:
    ShiftInvert(const SparseMatrix& K, const SparseMatrix& M, double sigma) : M_(M)
    {
        SparseMatrix A = K + sigma * M;
        solver_.compute(A);
        if (solver_.info() != Eigen::Success) {
            throw std::runtime_error("solve_smallest: factorisation of K + sigma M failed");
        }
    }

    Vector apply(const Vector& x)
    {
        ++applications;
        Vector y = solver_.solve(M_ * x);
        if (solver_.info() != Eigen::Success) {
            throw std::runtime_error("solve_smallest: back-substitution failed");
        }
        return y;
    }

    int applications = 0;

private:
    const SparseMatrix& M_;
    Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> solver_;
};

// Removes the components of w along the M-orthonormal columns of basis
// (whose M-images are m_basis), twice for stability. Returns the coefficients.
Vector project_out(Vector& w, const Matrix& basis, const Matrix& m_basis, Eigen::Index cols)
{
    if (cols == 0) {
        return Vector();
    }
    Vector h = m_basis.leftCols(cols).transpose() * w;
    w.noalias() -= basis.leftCols(cols) * h;
    const Vector h2 = m_basis.leftCols(cols).transpose() * w;
    w.noalias() -= basis.leftCols(cols) * h2;
    return h + h2;
}

class KrylovSchur {
public:
    KrylovSchur(ShiftInvert& op, const SparseMatrix& K, const SparseMatrix& M, double tol,
                int budget, Xorshift64Star& rng)
        : op_(op), K_(K), M_(M), tol_(tol), budget_(budget), rng_(rng)
    {
    }

    // The nwant largest Ritz values of op restricted to the M-orthogonal
    // complement of locked, each converged to tol.
    std::vector<Pair> run(int nwant, const Matrix& locked, const Matrix& m_locked)
    {
        const Eigen::Index n = K_.rows();
        const Eigen::Index nl = locked.cols();
        const int available = static_cast<int>(n - nl);
        const int m = std::min(available - 1, std::max(2 * nwant + 12, 24));
        if (m < nwant + 1) {
            throw std::invalid_argument("solve_smallest: problem too small for the Krylov solver");
        }
        const int keep = nwant + (m - nwant) / 2;

        Matrix V(n, m + 1), MV(n, m + 1);
        Matrix H = Matrix::Zero(m, m);
        set_column(V, MV, 0, random_start(V, MV, 0, locked, m_locked));

        int j0 = 0;
        while (true) {
            for (int j = j0; j < m; ++j) {
                Vector w = op_.apply(V.col(j));
                project_out(w, locked, m_locked, nl);
                const Vector h = project_out(w, V, MV, j + 1);
                H.col(j).head(j + 1) = h;
                Vector Mw = M_ * w;
                const double beta = std::sqrt(std::max(w.dot(Mw), 0.0));
                if (beta <= 1e-12 * std::abs(h(j))) {
                    // Invariant subspace: continue from a fresh direction.
                    set_column(V, MV, j + 1, random_start(V, MV, j + 1, locked, m_locked));
                } else {
                    V.col(j + 1) = w / beta;
                    MV.col(j + 1) = Mw / beta;
                }
            }

            Matrix Hs = H.selfadjointView<Eigen::Upper>();
            Eigen::SelfAdjointEigenSolver<Matrix> eig(Hs);
            // Ascending eigenvalues; the wanted ones are at the end.
            std::vector<Pair> wanted;
            bool converged = true;
            for (int i = 0; i < nwant; ++i) {
                const int c = m - 1 - i;
                Pair p;
                p.theta = eig.eigenvalues()(c);
                p.u = V.leftCols(m) * eig.eigenvectors().col(c);
                p.u /= std::sqrt(p.u.dot(M_ * p.u));
                rayleigh(K_, M_, p.u, p.mu, p.residual);
                converged = converged && p.residual <= tol_;
                wanted.push_back(std::move(p));
            }
            if (converged) {
                return wanted;
            }
            if (op_.applications > budget_) {
                throw std::runtime_error("solve_smallest: no convergence within " +
                                         std::to_string(budget_) + " operator applications");
            }

            // Thick restart on the keep largest Ritz vectors; the residual
            // direction V_m becomes the next basis vector.
            const Matrix S = eig.eigenvectors().rightCols(keep).rowwise().reverse();
            const Matrix Vk = V.leftCols(m) * S;
            const Matrix MVk = MV.leftCols(m) * S;
            V.col(keep) = V.col(m);
            MV.col(keep) = MV.col(m);
            V.leftCols(keep) = Vk;
            MV.leftCols(keep) = MVk;
            H.setZero();
            for (int i = 0; i < keep; ++i) {
                H(i, i) = eig.eigenvalues()(m - 1 - i);
            }
            j0 = keep;
        }
    }

private:
    void set_column(Matrix& V, Matrix& MV, Eigen::Index j, const Vector& v)
    {
        V.col(j) = v;
        MV.col(j) = M_ * v;
    }

    Vector random_start(const Matrix& V, const Matrix& MV, Eigen::Index cols, const Matrix& locked,
                        const Matrix& m_locked)
    {
        Vector w(K_.rows());
        for (Eigen::Index i = 0; i < w.size(); ++i) {
            w(i) = rng_.uniform(-1.0, 1.0);
        }
        project_out(w, locked, m_locked, locked.cols());
        project_out(w, V, MV, cols);
        return w / std::sqrt(w.dot(M_ * w));
    }

    ShiftInvert& op_;
    const SparseMatrix& K_;
    const SparseMatrix& M_;
    double tol_;
    int budget_;
    Xorshift64Star& rng_;
};

std::vector<Pair> dense_solve(const SparseMatrix& K, const SparseMatrix& M, int n_eigs)
{
    const Matrix Kd(K);
    const Matrix Md(M);
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> eig(Kd, Md);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("solve_smallest: dense eigensolver failed");
    }
    std::vector<Pair> out;
    for (int i = 0; i < n_eigs; ++i) {
        Pair p;
        p.u = eig.eigenvectors().col(i);
        p.u /= std::sqrt(p.u.dot(M * p.u));
        rayleigh(K, M, p.u, p.mu, p.residual);
        p.theta = -p.mu;
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

EigenPairs solve_smallest(const SparseMatrix& K, const SparseMatrix& M,
                          const std::vector<int>& constrained_dofs, int n_eigs,
                          const EigenSolverOptions& options)
{
    if (n_eigs < 1 || n_eigs > 20) {
        throw std::invalid_argument("solve_smallest: n_eigs must lie in [1, 20]");
    }
    if (K.rows() != K.cols() || M.rows() != K.rows() || M.cols() != K.cols()) {
        throw std::invalid_argument("solve_smallest: K and M must be square and of equal size");
    }
    const Reduced r = reduce(K, M, constrained_dofs);
    const auto n = static_cast<std::size_t>(r.K.rows());
    if (static_cast<std::size_t>(n_eigs) > n) {
        throw std::invalid_argument("solve_smallest: more eigenvalues requested than free dofs");
    }

    EigenPairs result;
    std::vector<Pair> pairs;
    if (n <= options.dense_threshold) {
        pairs = dense_solve(r.K, r.M, n_eigs);
    } else {
        double sigma = 0.0;
        if (constrained_dofs.empty()) {
            sigma = 1e-3 * r.K.diagonal().sum() / r.M.diagonal().sum();
        }
        result.shift = sigma;
        ShiftInvert op(r.K, r.M, sigma);
        Xorshift64Star rng(0x5EC1AB0000000000ULL ^ n);
        KrylovSchur solver(op, r.K, r.M, options.tol, options.max_applications_per_eig * n_eigs, rng);

        pairs = solver.run(n_eigs, Matrix(n, 0), Matrix(n, 0));
        for (int pass = 0; pass < n_eigs; ++pass) {
            Matrix locked(n, pairs.size()), m_locked(n, pairs.size());
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                locked.col(i) = pairs[i].u;
                m_locked.col(i) = r.M * pairs[i].u;
            }
            const std::vector<Pair> extra = solver.run(1, locked, m_locked);
            auto smallest = std::min_element(pairs.begin(), pairs.end(),
                                             [](const Pair& a, const Pair& b) { return a.theta < b.theta; });
            if (!(extra[0].theta > smallest->theta * (1.0 + 1e-8))) {
                break;
            }
            *smallest = extra[0];
        }
        result.operator_applications = op.applications;
    }

    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.mu < b.mu; });
    result.vectors = Matrix::Zero(K.rows(), n_eigs);
    for (int i = 0; i < n_eigs; ++i) {
        result.values.push_back(pairs[i].mu);
        result.residuals.push_back(pairs[i].residual);
        for (std::size_t f = 0; f < n; ++f) {
            result.vectors(r.free_to_full[f], i) = pairs[i].u(f);
        }
    }
    return result;
}

}  // namespace speclab
