#include "speclab/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <variant>

namespace speclab {
namespace {

// Mesh from vertices and positively oriented triangles; boundary edges are the
// edges used by exactly one triangle, in triangle order. Vertices no triangle
// uses are dropped.
Mesh from_triangles(const std::vector<Vec2>& vertices, std::vector<std::array<int, 3>> triangles)
{
    Mesh mesh;
    std::vector<int> index(vertices.size(), -1);
    for (auto& t : triangles) {
        for (int& v : t) {
            if (index[v] < 0) {
                index[v] = 0;
            }
        }
    }
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        if (index[v] == 0) {
            index[v] = static_cast<int>(mesh.vertices.size());
            mesh.vertices.push_back(vertices[v]);
        }
    }
    for (auto& t : triangles) {
        for (int& v : t) {
            v = index[v];
        }
    }
    mesh.triangles = std::move(triangles);
    std::unordered_map<std::uint64_t, int> uses;
    auto key = [](int a, int b) {
        return (static_cast<std::uint64_t>(std::max(a, b)) << 32) |
               static_cast<std::uint64_t>(std::min(a, b));
    };
    for (const auto& t : mesh.triangles) {
        for (int i = 0; i < 3; ++i) {
            ++uses[key(t[i], t[(i + 1) % 3])];
        }
    }
    for (const auto& t : mesh.triangles) {
        for (int i = 0; i < 3; ++i) {
            if (uses[key(t[i], t[(i + 1) % 3])] == 1) {
                mesh.boundary_edges.push_back({t[i], t[(i + 1) % 3], Marker::neumann});
            }
        }
    }
    mesh.h = longest_edge(mesh);
    return mesh;
}

// Triangles around an interior point of a convex polygon.
Mesh fan(const Polygon& polygon, Vec2 center)
{
    std::vector<Vec2> vertices = polygon;
    vertices.push_back(center);
    const int c = static_cast<int>(polygon.size());
    std::vector<std::array<int, 3>> triangles;
    for (int i = 0; i < c; ++i) {
        triangles.push_back({c, i, (i + 1) % c});
    }
    return from_triangles(vertices, std::move(triangles));
}

// Triangles around polygon vertex 0 (the sector apex).
Mesh vertex_fan(const Polygon& polygon)
{
    std::vector<std::array<int, 3>> triangles;
    for (int i = 1; i + 1 < static_cast<int>(polygon.size()); ++i) {
        triangles.push_back({0, i, i + 1});
    }
    return from_triangles(polygon, std::move(triangles));
}

Vec2 area_centroid(const Polygon& p)
{
    double twice = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Vec2 a = p[i];
        const Vec2 b = p[(i + 1) % p.size()];
        const double w = cross(a, b);
        twice += w;
        cx += (a.x + b.x) * w;
        cy += (a.y + b.y) * w;
    }
    return {cx / (3.0 * twice), cy / (3.0 * twice)};
}

// The rhombus as four right triangles meeting at its centre; uniform
// refinement turns each quadrant into a structured grid of similar right
// triangles, so element shape does not degrade as theta shrinks.
Mesh rhombus_quadrants(double half_d, double half_h, int quadrant_mask)
{
    const std::vector<Vec2> vertices{{0, 0}, {half_d, 0}, {0, half_h}, {-half_d, 0}, {0, -half_h}};
    const std::array<std::array<int, 3>, 4> quads{{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}}};
    std::vector<std::array<int, 3>> triangles;
    for (int q = 0; q < 4; ++q) {
        if (quadrant_mask & (1 << q)) {
            triangles.push_back(quads[q]);
        }
    }
    return from_triangles(vertices, std::move(triangles));
}

// Rectangle split along one diagonal; refinement yields the uniform grid.
Mesh rectangle_grid(double a, double b)
{
    return from_triangles({{0, 0}, {a, 0}, {a, b}, {0, b}}, {{{0, 1, 2}, {0, 2, 3}}});
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Mesh initial_mesh(const DomainSpec& spec, const DirichletSelector& selector)
{
    const Polygon polygon = build(spec);
    Mesh mesh = std::visit(
        overloaded{
            [](const Rhombus& s) {
                return rhombus_quadrants(0.5 * s.diameter, 0.5 * s.diameter * std::tan(s.theta), 0b1111);
            },
            [](const HalfRhombus& s) {
                const int mask = s.cut == RhombusCut::long_diagonal ? 0b0011 : 0b0110;
                Mesh m = rhombus_quadrants(0.5 * s.diameter, 0.5 * s.diameter * std::tan(s.theta), mask);
                for (auto& e : m.boundary_edges) {
                    const Vec2 a = m.vertices[e.a];
                    const Vec2 b = m.vertices[e.b];
                    const bool on_base = s.cut == RhombusCut::long_diagonal
                                             ? (a.y == 0.0 && b.y == 0.0)
                                             : (a.x == 0.0 && b.x == 0.0);
                    if (on_base) {
                        e.marker = s.base_marker;
                    }
                }
                return m;
            },
            [](const Rectangle& s) { return rectangle_grid(s.a, s.b); },
            [](const Square& s) { return rectangle_grid(s.side, s.side); },
            [&](const Sector&) { return vertex_fan(polygon); },
            [&](const auto&) { return fan(polygon, area_centroid(polygon)); },
        },
        spec);

    if (selector.requests_dirichlet()) {
        const double scale = diameter(polygon);
        std::size_t matched = 0;
        for (auto& e : mesh.boundary_edges) {
            if (selector.matches(mesh.vertices[e.a], mesh.vertices[e.b], scale)) {
                e.marker = Marker::dirichlet;
                ++matched;
            }
        }
        if (matched == 0) {
            throw std::invalid_argument("selector '" + selector.name() + "' matches no boundary edge of " +
                                        describe(spec));
        }
    }
    validate(mesh);
    return mesh;
}

Mesh triangulate(const DomainSpec& spec, double target_h, const DirichletSelector& selector)
{
    if (!(target_h > 0.0)) {
        throw std::invalid_argument("triangulate: target_h must be positive");
    }
    Mesh mesh = initial_mesh(spec, selector);
    while (mesh.h > target_h) {
        mesh = refine(mesh);
    }
    return mesh;
}

Mesh triangulate_levels(const DomainSpec& spec, int levels, const DirichletSelector& selector)
{
    if (levels < 0) {
        throw std::invalid_argument("triangulate_levels: negative level count");
    }
    Mesh mesh = initial_mesh(spec, selector);
    for (int i = 0; i < levels; ++i) {
        mesh = refine(mesh);
    }
    return mesh;
}

}  // namespace speclab
