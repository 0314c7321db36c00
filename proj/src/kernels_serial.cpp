#include "speclab/kernels.hpp"

#include <stdexcept>
#include <string>

namespace speclab::kernels {

void p1_element(Vec2 a, Vec2 b, Vec2 c, std::array<double, 9>& stiffness,
                std::array<double, 9>& mass)
{
    // Gradient of the barycentric coordinate of vertex i is (y_j - y_k, x_k - x_j) / (2A).
    const double by[3] = {b.y - c.y, c.y - a.y, a.y - b.y};
    const double bx[3] = {c.x - b.x, a.x - c.x, b.x - a.x};
    const double area = 0.5 * cross(b - a, c - a);
    const double inv4a = 1.0 / (4.0 * area);
    const double m_diag = area / 6.0;
    const double m_off = area / 12.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            stiffness[3 * i + j] = (by[i] * by[j] + bx[i] * bx[j]) * inv4a;
            mass[3 * i + j] = i == j ? m_diag : m_off;
        }
    }
}

namespace serial {

ElementMatrices element_matrices(const Mesh& mesh)
{
    const std::size_t nt = mesh.triangles.size();
    const double min_area = 1e-14 * mesh.h * mesh.h;
    ElementMatrices out;
    out.stiffness.resize(nt);
    out.mass.resize(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        const auto& tri = mesh.triangles[t];
        if (triangle_area(mesh, t) <= min_area) {
            throw std::domain_error("assemble: degenerate triangle " + std::to_string(t));
        }
        p1_element(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]],
                   out.stiffness[t], out.mass[t]);
    }
    return out;
}

}  // namespace serial
}  // namespace speclab::kernels
