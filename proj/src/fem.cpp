#include "speclab/fem.hpp"

#include "speclab/kernels.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace speclab {
namespace {

Pencil scatter(const Mesh& mesh, const kernels::ElementMatrices& blocks)
{
    const auto n = static_cast<Eigen::Index>(mesh.vertices.size());
    std::vector<Eigen::Triplet<double>> k_triplets, m_triplets;
    k_triplets.reserve(9 * mesh.triangles.size());
    m_triplets.reserve(9 * mesh.triangles.size());
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                k_triplets.emplace_back(tri[i], tri[j], blocks.stiffness[t][3 * i + j]);
                m_triplets.emplace_back(tri[i], tri[j], blocks.mass[t][3 * i + j]);
            }
        }
    }
    Pencil p{SparseMatrix(n, n), SparseMatrix(n, n)};
    p.stiffness.setFromTriplets(k_triplets.begin(), k_triplets.end());
    p.mass.setFromTriplets(m_triplets.begin(), m_triplets.end());
    return p;
}

std::string summarize(const Mesh& mesh)
{
    const std::size_t d = mesh.dirichlet_edge_count();
    if (d == 0) {
        return "neumann";
    }
    if (d == mesh.boundary_edges.size()) {
        return "dirichlet";
    }
    return "mixed(" + std::to_string(d) + "/" + std::to_string(mesh.boundary_edges.size()) + " dirichlet)";
}

}  // namespace

Pencil assemble(const Mesh& mesh) { return scatter(mesh, kernels::omp::element_matrices(mesh)); }

Pencil assemble_serial(const Mesh& mesh)
{
    return scatter(mesh, kernels::serial::element_matrices(mesh));
}

EigResult solve_mesh(const Mesh& mesh, int n_eigs, const EigenSolverOptions& options)
{
    const Pencil p = assemble(mesh);
    const std::vector<int> constrained = mesh.dirichlet_vertices();
    EigenPairs pairs = solve_smallest(p.stiffness, p.mass, constrained, n_eigs, options);
    EigResult r;
    r.eigenvalues = std::move(pairs.values);
    r.residuals = std::move(pairs.residuals);
    r.h = mesh.h;
    r.dof_count = mesh.vertices.size() - constrained.size();
    r.bc_summary = summarize(mesh);
    r.modes = std::move(pairs.vectors);
    return r;
}

int eigenvalue_position(const Mesh& mesh, int k)
{
    const bool has_dirichlet = mesh.dirichlet_edge_count() > 0;
    const int position = has_dirichlet ? k - 1 : k;
    if (position < 0) {
        throw std::invalid_argument("eigenvalue index " + std::to_string(k) +
                                    " is below the first eigenvalue of this problem");
    }
    return position;
}

RichardsonEstimate richardson(const std::array<double, 3>& levels, const std::array<double, 3>& h)
{
    RichardsonEstimate e;
    e.levels = levels;
    e.h = h;
    e.value = levels[2] + (levels[2] - levels[1]) / 3.0;
    e.error_estimate = std::abs(e.value - levels[2]);
    e.monotone = levels[0] >= levels[1] && levels[1] >= levels[2];
    const double d01 = levels[0] - levels[1];
    const double d12 = levels[1] - levels[2];
    e.fitted_order = (d01 != 0.0 && d12 != 0.0 && d01 / d12 > 0.0) ? std::log2(d01 / d12)
                                                                   : std::nan("");
    return e;
}

std::vector<RichardsonEstimate> extrapolated_spectrum(const DomainSpec& spec, int n_eigs,
                                                      int refinements,
                                                      const DirichletSelector& selector)
{
    if (refinements < 0) {
        throw std::invalid_argument("refinements must be >= 0");
    }
    Mesh mesh = triangulate_levels(spec, refinements, selector);
    std::vector<std::array<double, 3>> levels(n_eigs);
    std::array<double, 3> h{};
    EigResult finest;
    for (int level = 0; level < 3; ++level) {
        if (level > 0) {
            mesh = refine(mesh);
        }
        finest = solve_mesh(mesh, n_eigs);
        for (int i = 0; i < n_eigs; ++i) {
            levels[i][level] = finest.eigenvalues[i];
        }
        h[level] = finest.h;
    }
    std::vector<RichardsonEstimate> out;
    for (int i = 0; i < n_eigs; ++i) {
        RichardsonEstimate e = richardson(levels[i], h);
        e.finest_dofs = finest.dof_count;
        e.finest_residual = finest.residuals[i];
        out.push_back(e);
    }
    return out;
}

RichardsonEstimate mu_k(const DomainSpec& spec, int k, int refinements,
                        const DirichletSelector& selector)
{
    const int position = eigenvalue_position(initial_mesh(spec, selector), k);
    return extrapolated_spectrum(spec, position + 1, refinements, selector)[position];
}

RichardsonEstimate dirichlet_lambda_k(const DomainSpec& spec, int k, int refinements)
{
    if (k < 1) {
        throw std::invalid_argument("dirichlet_lambda_k: k must be >= 1");
    }
    return mu_k(spec, k, refinements, DirichletSelector::all());
}

std::string eig_record_json(const std::string& domain, int k, const RichardsonEstimate& e)
{
    nlohmann::json j{{"domain", domain},
                     {"k", k},
                     {"h", e.h[2]},
                     {"dofs", e.finest_dofs},
                     {"value", e.value},
                     {"residual", e.finest_residual},
                     {"error_estimate", e.error_estimate}};
    return j.dump();
}

std::string eig_record_json(const std::string& domain, int k, int position, const EigResult& r)
{
    if (position < 0 || static_cast<std::size_t>(position) >= r.eigenvalues.size()) {
        throw std::out_of_range("eig_record_json: index outside the computed eigenvalues");
    }
    nlohmann::json j{{"domain", domain},
                     {"k", k},
                     {"h", r.h},
                     {"dofs", r.dof_count},
                     {"value", r.eigenvalues[position]},
                     {"residual", r.residuals[position]},
                     {"error_estimate", 0.0}};
    return j.dump();
}

}  // namespace speclab
