#pragma once

#include "speclab/geometry.hpp"

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace speclab {

struct BoundaryEdge {
    int a;
    int b;
    Marker marker = Marker::neumann;
};

/// Conforming triangulation with positively oriented triangles and a marker
/// on every boundary edge.
struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<BoundaryEdge> boundary_edges;
    double h = 0.0;  // longest edge

    std::size_t dirichlet_edge_count() const;
    /// Vertices touched by a Dirichlet edge, ascending.
    std::vector<int> dirichlet_vertices() const;
};

double triangle_area(const Mesh& mesh, std::size_t t);
double longest_edge(const Mesh& mesh);

/// Throws std::invalid_argument when an invariant is broken: non-positive
/// triangle area, a boundary edge not owned by exactly one triangle, an
/// unmarked boundary edge, or a boundary that does not close.
void validate(const Mesh& mesh);

/// Red refinement: every triangle splits into four, boundary edges split in
/// two and keep their marker. Halves h.
Mesh refine(const Mesh& mesh);

/// Rule assigning Dirichlet markers to boundary edges.
class DirichletSelector {
public:
    /// All boundary edges Neumann.
    static DirichletSelector none();
    /// All boundary edges Dirichlet.
    static DirichletSelector all();
    /// Edges whose endpoints both satisfy |n . p - offset| <= tol, with
    /// n = (nx, ny) normalised.
    static DirichletSelector on_line(double nx, double ny, double offset);
    /// Edges whose endpoints both lie on the circle |p - center| = radius.
    static DirichletSelector on_circle(Vec2 center, double radius);

    bool requests_dirichlet() const { return kind_ != Kind::none; }
    bool matches(Vec2 a, Vec2 b, double scale) const;
    const std::string& name() const { return name_; }

private:
    enum class Kind { none, all, line, circle };
    Kind kind_ = Kind::none;
    Vec2 normal_{};
    double offset_ = 0.0;
    Vec2 center_{};
    double radius_ = 0.0;
    std::string name_ = "none";
};

/// Plain-text export: "nv nt nb", then vertex lines "x y", triangle lines
/// "i j k" (0-based) and boundary lines "i j N|D".
void write_mesh(std::ostream& os, const Mesh& mesh);
Mesh read_mesh(std::istream& is);

/// Polygonal domain realised by fans or structured grids (see triangulate.cpp).
/// Returns the coarsest mesh: the plain fan, or the one-cell structured grid.
Mesh initial_mesh(const DomainSpec& spec, const DirichletSelector& selector);

/// Initial mesh refined until h <= target_h.
Mesh triangulate(const DomainSpec& spec, double target_h,
                 const DirichletSelector& selector = DirichletSelector::none());

/// Initial mesh refined `levels` times.
Mesh triangulate_levels(const DomainSpec& spec, int levels,
                        const DirichletSelector& selector = DirichletSelector::none());

}  // namespace speclab
