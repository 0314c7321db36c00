#include "speclab/kernels.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace speclab::kernels::omp {

ElementMatrices element_matrices(const Mesh& mesh)
{
    const auto nt = static_cast<long long>(mesh.triangles.size());
    const double min_area = 1e-14 * mesh.h * mesh.h;
    ElementMatrices out;
    out.stiffness.resize(nt);
    out.mass.resize(nt);
    long long first_bad = nt;
#pragma omp parallel for schedule(static) reduction(min : first_bad)
    for (long long t = 0; t < nt; ++t) {
        const auto& tri = mesh.triangles[t];
        if (triangle_area(mesh, t) <= min_area) {
            first_bad = std::min(first_bad, t);
            continue;
        }
        p1_element(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]],
                   out.stiffness[t], out.mass[t]);
    }
    if (first_bad < nt) {
        throw std::domain_error("assemble: degenerate triangle " + std::to_string(first_bad));
    }
    return out;
}

}  // namespace speclab::kernels::omp
