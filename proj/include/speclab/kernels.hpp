#pragma once

// Per-triangle P1 element matrices. Both variants fill the same arrays in the
// same triangle order; the OpenMP one only splits the loop, so the results
// are bit-identical for every thread count.

#include "speclab/mesh.hpp"

#include <array>
#include <vector>

namespace speclab::kernels {

struct ElementMatrices {
    std::vector<std::array<double, 9>> stiffness;  // row-major 3x3 per triangle
    std::vector<std::array<double, 9>> mass;
};

/// Stiffness and consistent mass of one triangle.
void p1_element(Vec2 a, Vec2 b, Vec2 c, std::array<double, 9>& stiffness,
                std::array<double, 9>& mass);

namespace serial {
/// Throws std::domain_error on a triangle with area <= 1e-14 h^2.
ElementMatrices element_matrices(const Mesh& mesh);
}

namespace omp {
ElementMatrices element_matrices(const Mesh& mesh);
}

}  // namespace speclab::kernels
