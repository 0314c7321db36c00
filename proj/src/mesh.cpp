#include "speclab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace speclab {
namespace {

std::uint64_t edge_key(int a, int b)
{
    const auto lo = static_cast<std::uint64_t>(std::min(a, b));
    const auto hi = static_cast<std::uint64_t>(std::max(a, b));
    return (hi << 32) | lo;
}

}  // namespace

std::size_t Mesh::dirichlet_edge_count() const
{
    return static_cast<std::size_t>(std::count_if(
        boundary_edges.begin(), boundary_edges.end(),
        [](const BoundaryEdge& e) { return e.marker == Marker::dirichlet; }));
}

std::vector<int> Mesh::dirichlet_vertices() const
{
    std::vector<int> out;
    for (const auto& e : boundary_edges) {
        if (e.marker == Marker::dirichlet) {
            out.push_back(e.a);
            out.push_back(e.b);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double triangle_area(const Mesh& mesh, std::size_t t)
{
    const auto& tri = mesh.triangles[t];
    const Vec2 a = mesh.vertices[tri[0]];
    return 0.5 * cross(mesh.vertices[tri[1]] - a, mesh.vertices[tri[2]] - a);
}

double longest_edge(const Mesh& mesh)
{
    double h = 0.0;
    for (const auto& tri : mesh.triangles) {
        for (int i = 0; i < 3; ++i) {
            h = std::max(h, norm(mesh.vertices[tri[i]] - mesh.vertices[tri[(i + 1) % 3]]));
        }
    }
    return h;
}

void validate(const Mesh& mesh)
{
    const int nv = static_cast<int>(mesh.vertices.size());
    std::unordered_map<std::uint64_t, int> edge_use;
    std::vector<char> used(mesh.vertices.size(), 0);
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        for (int v : tri) {
            if (v < 0 || v >= nv) {
                throw std::invalid_argument("mesh: triangle references missing vertex");
            }
            used[v] = 1;
        }
        if (!(triangle_area(mesh, t) > 0.0)) {
            throw std::invalid_argument("mesh: triangle " + std::to_string(t) +
                                        " is not positively oriented");
        }
        for (int i = 0; i < 3; ++i) {
            ++edge_use[edge_key(tri[i], tri[(i + 1) % 3])];
        }
    }
    if (std::find(used.begin(), used.end(), 0) != used.end()) {
        throw std::invalid_argument("mesh: vertex not used by any triangle");
    }
    std::size_t open_edges = 0;
    for (const auto& [key, uses] : edge_use) {
        if (uses == 1) {
            ++open_edges;
        } else if (uses != 2) {
            throw std::invalid_argument("mesh: edge shared by more than two triangles");
        }
    }
    if (open_edges != mesh.boundary_edges.size()) {
        throw std::invalid_argument("mesh: boundary edge list does not match the triangulation");
    }
    std::map<int, int> balance;
    for (const auto& e : mesh.boundary_edges) {
        auto it = edge_use.find(edge_key(e.a, e.b));
        if (it == edge_use.end() || it->second != 1) {
            throw std::invalid_argument("mesh: boundary edge is not owned by exactly one triangle");
        }
        ++balance[e.a];
        --balance[e.b];
    }
    for (const auto& [v, b] : balance) {
        if (b != 0) {
            throw std::invalid_argument("mesh: boundary does not form closed loops");
        }
    }
}

Mesh refine(const Mesh& mesh)
{
    Mesh out;
    out.vertices = mesh.vertices;
    out.triangles.reserve(4 * mesh.triangles.size());
    std::unordered_map<std::uint64_t, int> midpoint;
    midpoint.reserve(3 * mesh.triangles.size());

    auto mid = [&](int a, int b) {
        const auto key = edge_key(a, b);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) {
            return it->second;
        }
        const int index = static_cast<int>(out.vertices.size());
        out.vertices.push_back(0.5 * (mesh.vertices[a] + mesh.vertices[b]));
        midpoint.emplace(key, index);
        return index;
    };

    for (const auto& tri : mesh.triangles) {
        const int m01 = mid(tri[0], tri[1]);
        const int m12 = mid(tri[1], tri[2]);
        const int m20 = mid(tri[2], tri[0]);
        out.triangles.push_back({tri[0], m01, m20});
        out.triangles.push_back({m01, tri[1], m12});
        out.triangles.push_back({m20, m12, tri[2]});
        out.triangles.push_back({m01, m12, m20});
    }
    out.boundary_edges.reserve(2 * mesh.boundary_edges.size());
    for (const auto& e : mesh.boundary_edges) {
        const int m = midpoint.at(edge_key(e.a, e.b));
        out.boundary_edges.push_back({e.a, m, e.marker});
        out.boundary_edges.push_back({m, e.b, e.marker});
    }
    out.h = longest_edge(out);
    return out;
}

DirichletSelector DirichletSelector::none() { return {}; }

DirichletSelector DirichletSelector::all()
{
    DirichletSelector s;
    s.kind_ = Kind::all;
    s.name_ = "all";
    return s;
}

DirichletSelector DirichletSelector::on_line(double nx, double ny, double offset)
{
    const double len = std::hypot(nx, ny);
    if (!(len > 0.0)) {
        throw std::invalid_argument("selector: line normal must be nonzero");
    }
    DirichletSelector s;
    s.kind_ = Kind::line;
    s.normal_ = {nx / len, ny / len};
    s.offset_ = offset / len;
    std::ostringstream os;
    os << "line(" << nx << "," << ny << "," << offset << ")";
    s.name_ = os.str();
    return s;
}

DirichletSelector DirichletSelector::on_circle(Vec2 center, double radius)
{
    if (!(radius > 0.0)) {
        throw std::invalid_argument("selector: circle radius must be positive");
    }
    DirichletSelector s;
    s.kind_ = Kind::circle;
    s.center_ = center;
    s.radius_ = radius;
    s.name_ = "arc";
    return s;
}

bool DirichletSelector::matches(Vec2 a, Vec2 b, double scale) const
{
    const double tol = 1e-9 * scale;
    switch (kind_) {
    case Kind::none: return false;
    case Kind::all: return true;
    case Kind::line:
        return std::abs(dot(normal_, a) - offset_) <= tol && std::abs(dot(normal_, b) - offset_) <= tol;
    case Kind::circle:
        return std::abs(norm(a - center_) - radius_) <= tol && std::abs(norm(b - center_) - radius_) <= tol;
    }
    return false;
}

void write_mesh(std::ostream& os, const Mesh& mesh)
{
    os << mesh.vertices.size() << ' ' << mesh.triangles.size() << ' ' << mesh.boundary_edges.size()
       << '\n';
    char buf[96];
    for (const Vec2& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.x, v.y);
        os << buf;
    }
    for (const auto& t : mesh.triangles) {
        os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    }
    for (const auto& e : mesh.boundary_edges) {
        os << e.a << ' ' << e.b << ' ' << (e.marker == Marker::dirichlet ? 'D' : 'N') << '\n';
    }
}

Mesh read_mesh(std::istream& is)
{
    Mesh mesh;
    std::size_t nv = 0, nt = 0, nb = 0;
    if (!(is >> nv >> nt >> nb)) {
        throw std::runtime_error("mesh: malformed header");
    }
    mesh.vertices.resize(nv);
    for (auto& v : mesh.vertices) {
        if (!(is >> v.x >> v.y)) {
            throw std::runtime_error("mesh: malformed vertex line");
        }
    }
    mesh.triangles.resize(nt);
    for (auto& t : mesh.triangles) {
        if (!(is >> t[0] >> t[1] >> t[2])) {
            throw std::runtime_error("mesh: malformed triangle line");
        }
    }
    mesh.boundary_edges.resize(nb);
    for (auto& e : mesh.boundary_edges) {
        char marker = 0;
        if (!(is >> e.a >> e.b >> marker) || (marker != 'N' && marker != 'D')) {
            throw std::runtime_error("mesh: malformed boundary line");
        }
        e.marker = marker == 'D' ? Marker::dirichlet : Marker::neumann;
    }
    validate(mesh);
    mesh.h = longest_edge(mesh);
    return mesh;
}

}  // namespace speclab
