#pragma once

// P1 finite elements for -Laplace u = mu u on triangulated planar domains with
// Neumann, Dirichlet or mixed conditions, and Richardson extrapolation over
// three nested meshes.

#include "speclab/eigensolver.hpp"
#include "speclab/geometry.hpp"
#include "speclab/mesh.hpp"

#include <array>
#include <string>
#include <vector>

namespace speclab {

struct Pencil {
    SparseMatrix stiffness;
    SparseMatrix mass;
};

/// Global stiffness and consistent mass. Element blocks come from the OpenMP
/// kernel and are scattered in triangle order, so the matrices do not depend
/// on the thread count.
Pencil assemble(const Mesh& mesh);

/// Same, using the serial element kernel.
Pencil assemble_serial(const Mesh& mesh);

struct EigResult {
    std::vector<double> eigenvalues;  // ascending
    std::vector<double> residuals;
    double h = 0.0;
    std::size_t dof_count = 0;        // unconstrained dofs
    std::string bc_summary;
    Eigen::MatrixXd modes;            // one column per eigenvalue, full vertex length
};

/// Smallest n_eigs eigenvalues of the mesh's problem; vertices on Dirichlet
/// edges are removed from the system.
EigResult solve_mesh(const Mesh& mesh, int n_eigs, const EigenSolverOptions& options = {});

/// Position of "the k-th eigenvalue" in an ascending list: k for pure Neumann
/// problems (mu_0 = 0 is kept), k - 1 once any Dirichlet edge is present
/// (lambda_1 and tau_1 are the lowest).
int eigenvalue_position(const Mesh& mesh, int k);

struct RichardsonEstimate {
    double value = 0.0;           // extrapolated, assuming O(h^2)
    double error_estimate = 0.0;  // |value - finest|
    std::array<double, 3> levels{};
    std::array<double, 3> h{};
    double fitted_order = 0.0;    // log2 of successive difference ratio; diagnostic
    bool monotone = true;         // levels non-increasing
    std::size_t finest_dofs = 0;
    double finest_residual = 0.0;
};

/// Order-2 Richardson from values on meshes h, h/2, h/4.
RichardsonEstimate richardson(const std::array<double, 3>& levels, const std::array<double, 3>& h);

/// k-th eigenvalue (see eigenvalue_position) on triangulate_levels(spec, r),
/// r = refinements, refinements + 1, refinements + 2, extrapolated.
RichardsonEstimate mu_k(const DomainSpec& spec, int k, int refinements,
                        const DirichletSelector& selector = DirichletSelector::none());

/// Extrapolated values at positions 0 .. n_eigs - 1 of the ascending list,
/// from one solve per level.
std::vector<RichardsonEstimate> extrapolated_spectrum(const DomainSpec& spec, int n_eigs,
                                                      int refinements,
                                                      const DirichletSelector& selector);

/// lambda_k with every boundary edge Dirichlet (k >= 1).
RichardsonEstimate dirichlet_lambda_k(const DomainSpec& spec, int k, int refinements);

/// JSON record {domain, k, h, dofs, value, residual, error_estimate}.
std::string eig_record_json(const std::string& domain, int k, const RichardsonEstimate& estimate);
/// Record for eigenvalues[position]; error_estimate is 0 for a single mesh.
std::string eig_record_json(const std::string& domain, int k, int position, const EigResult& result);

}  // namespace speclab
