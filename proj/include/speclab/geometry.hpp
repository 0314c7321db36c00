#pragma once

// Parametric convex planar domains, their polygonal realisation, and the
// geometric quantities the eigenvalue bounds depend on.

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace speclab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double norm(Vec2 a);

/// Counterclockwise vertex list.
using Polygon = std::vector<Vec2>;

enum class Marker { neumann, dirichlet };

/// Which diagonal of the rhombus a half-rhombus is cut along. The cut becomes
/// the half's base.
enum class RhombusCut { long_diagonal, short_diagonal };

/// Rhombus with long diagonal D on the x-axis and half-angle theta at the two
/// sharp vertices: vertices (+-D/2, 0), (0, +-(D/2) tan theta).
struct Rhombus {
    double diameter;
    double theta;
};

/// One half of a Rhombus. long_diagonal keeps y >= 0, short_diagonal keeps
/// x <= 0. The base (the cut) carries base_marker.
struct HalfRhombus {
    double diameter;
    double theta;
    RhombusCut cut = RhombusCut::long_diagonal;
    Marker base_marker = Marker::dirichlet;
};

struct Rectangle {
    double a;
    double b;
};

struct Square {
    double side;
};

struct EquilateralTriangle {
    double side;
};

struct RegularPolygon {
    int n_vertices;
    double circumradius;
};

/// Apex at the origin, arc of radius R symmetric about the positive x-axis.
struct Sector {
    double radius;
    double opening;
    int n_arc;
};

struct ReuleauxTriangle {
    double width;
    int n_arc;  // chords per arc
};

struct ConvexHullPolygon {
    Polygon vertices;
};

using DomainSpec = std::variant<Rhombus, HalfRhombus, Rectangle, Square, EquilateralTriangle,
                                RegularPolygon, Sector, ReuleauxTriangle, ConvexHullPolygon>;

std::string describe(const DomainSpec& spec);

/// Throws std::invalid_argument when the parameters violate the variant's
/// constraints.
void validate(const DomainSpec& spec);

/// Counterclockwise polygon; curved boundaries are replaced by chords whose
/// endpoints lie on the true curve.
Polygon build(const DomainSpec& spec);

/// Same domain scaled by factor about the origin.
DomainSpec scaled(const DomainSpec& spec, double factor);

double diameter(const Polygon& polygon);
double area(const Polygon& polygon);

/// Convex hull (Andrew's monotone chain), counterclockwise, collinear points
/// dropped.
Polygon convex_hull(std::vector<Vec2> points);

/// True when p satisfies every half-plane constraint of the convex polygon
/// with margin >= -tolerance.
bool contains(const Polygon& convex, Vec2 p, double tolerance = 0.0);

bool is_convex_ccw(const Polygon& polygon);

Polygon rotated(const Polygon& polygon, double angle);

struct InclusionPair {
    Polygon inner;
    Polygon outer;
    int attempts = 1;
};

/// Outer: hull of n_outer uniform points in the unit disk. Inner: hull of
/// n_inner uniform points in the outer polygon (rejection sampling from the
/// same xorshift64* stream). Both must have area > 1e-4; up to 100 attempts.
InclusionPair inclusion_pair(std::uint64_t seed, int n_outer, int n_inner);

/// Outer as in inclusion_pair. Inner: hull of the two endpoints of the outer
/// diameter and n_inner - 2 uniform points of the outer polygon lying within
/// half-width w of that diameter, w drawn uniformly from
/// [0.02, max_half_width] times its length. Produces thin inner domains that
/// span the outer one, the regime where mu_1(inner) < mu_1(outer).
InclusionPair chord_inclusion_pair(std::uint64_t seed, int n_outer, int n_inner,
                                   double max_half_width);

}  // namespace speclab
