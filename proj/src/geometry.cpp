#include "speclab/geometry.hpp"

#include "speclab/report.hpp"
#include "speclab/rng.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace speclab {
namespace {

constexpr double pi = boost::math::constants::pi<double>();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& message)
{
    if (!ok) {
        throw std::invalid_argument(message);
    }
}

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

Polygon reuleaux(double width, int n_arc)
{
    const double r = width / std::sqrt(3.0);
    Vec2 corners[3];
    for (int i = 0; i < 3; ++i) {
        const double a = pi / 2 + 2 * pi * i / 3;
        corners[i] = {r * std::cos(a), r * std::sin(a)};
    }
    Polygon out;
    out.reserve(3 * n_arc);
    for (int i = 0; i < 3; ++i) {
        const Vec2 from = corners[i];
        const Vec2 center = corners[(i + 2) % 3];
        const double a0 = std::atan2(from.y - center.y, from.x - center.x);
        out.push_back(from);
        for (int j = 1; j < n_arc; ++j) {
            const double a = a0 + (pi / 3) * j / n_arc;
            out.push_back({center.x + width * std::cos(a), center.y + width * std::sin(a)});
        }
    }
    return out;
}

}  // namespace

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

std::string describe(const DomainSpec& spec)
{
    std::ostringstream os;
    auto f = [](double v) { return format_number(v); };
    std::visit(overloaded{
                   [&](const Rhombus& s) { os << "rhombus(D=" << f(s.diameter) << ",theta=" << f(s.theta) << ")"; },
                   [&](const HalfRhombus& s) {
                       os << "half_rhombus(D=" << f(s.diameter) << ",theta=" << f(s.theta) << ",cut="
                          << (s.cut == RhombusCut::long_diagonal ? "long" : "short") << ",base="
                          << (s.base_marker == Marker::dirichlet ? "D" : "N") << ")";
                   },
                   [&](const Rectangle& s) { os << "rectangle(" << f(s.a) << "x" << f(s.b) << ")"; },
                   [&](const Square& s) { os << "square(" << f(s.side) << ")"; },
                   [&](const EquilateralTriangle& s) { os << "equilateral_triangle(" << f(s.side) << ")"; },
                   [&](const RegularPolygon& s) { os << "regular_polygon(n=" << s.n_vertices << ",R=" << f(s.circumradius) << ")"; },
                   [&](const Sector& s) { os << "sector(R=" << f(s.radius) << ",opening=" << f(s.opening) << ",n_arc=" << s.n_arc << ")"; },
                   [&](const ReuleauxTriangle& s) { os << "reuleaux(width=" << f(s.width) << ",n_arc=" << s.n_arc << ")"; },
                   [&](const ConvexHullPolygon& s) { os << "polygon(" << s.vertices.size() << " vertices)"; },
               },
               spec);
    return os.str();
}

void validate(const DomainSpec& spec)
{
    std::visit(overloaded{
                   [](const Rhombus& s) {
                       require(positive(s.diameter), "rhombus: diameter must be positive");
                       require(s.theta > 0 && s.theta < pi / 2, "rhombus: theta must lie in (0, pi/2)");
                   },
                   [](const HalfRhombus& s) {
                       require(positive(s.diameter), "half rhombus: diameter must be positive");
                       require(s.theta > 0 && s.theta < pi / 2, "half rhombus: theta must lie in (0, pi/2)");
                   },
                   [](const Rectangle& s) { require(positive(s.a) && positive(s.b), "rectangle: sides must be positive"); },
                   [](const Square& s) { require(positive(s.side), "square: side must be positive"); },
                   [](const EquilateralTriangle& s) { require(positive(s.side), "triangle: side must be positive"); },
                   [](const RegularPolygon& s) {
                       require(s.n_vertices >= 3, "regular polygon: at least 3 vertices");
                       require(positive(s.circumradius), "regular polygon: radius must be positive");
                   },
                   [](const Sector& s) {
                       require(positive(s.radius), "sector: radius must be positive");
                       require(s.opening > 0 && s.opening < 2 * pi, "sector: opening must lie in (0, 2 pi)");
                       require(s.n_arc >= 1, "sector: n_arc must be >= 1");
                   },
                   [](const ReuleauxTriangle& s) {
                       require(positive(s.width), "reuleaux: width must be positive");
                       require(s.n_arc >= 1, "reuleaux: n_arc must be >= 1");
                   },
                   [](const ConvexHullPolygon& s) {
                       require(s.vertices.size() >= 3, "polygon: at least 3 vertices");
                       require(is_convex_ccw(s.vertices), "polygon: vertices must be convex and counterclockwise");
                   },
               },
               spec);
}

Polygon build(const DomainSpec& spec)
{
    validate(spec);
    return std::visit(
        overloaded{
            [](const Rhombus& s) -> Polygon {
                const double h = 0.5 * s.diameter;
                const double t = h * std::tan(s.theta);
                return {{-h, 0}, {0, -t}, {h, 0}, {0, t}};
            },
            [](const HalfRhombus& s) -> Polygon {
                const double h = 0.5 * s.diameter;
                const double t = h * std::tan(s.theta);
                if (s.cut == RhombusCut::long_diagonal) {
                    return {{-h, 0}, {h, 0}, {0, t}};
                }
                return {{-h, 0}, {0, -t}, {0, t}};
            },
            [](const Rectangle& s) -> Polygon { return {{0, 0}, {s.a, 0}, {s.a, s.b}, {0, s.b}}; },
            [](const Square& s) -> Polygon { return {{0, 0}, {s.side, 0}, {s.side, s.side}, {0, s.side}}; },
            [](const EquilateralTriangle& s) -> Polygon {
                return {{0, 0}, {s.side, 0}, {0.5 * s.side, 0.5 * std::sqrt(3.0) * s.side}};
            },
            [](const RegularPolygon& s) {
                Polygon out;
                for (int i = 0; i < s.n_vertices; ++i) {
                    const double a = 2 * pi * i / s.n_vertices;
                    out.push_back({s.circumradius * std::cos(a), s.circumradius * std::sin(a)});
                }
                return out;
            },
            [](const Sector& s) {
                Polygon out{{0, 0}};
                for (int i = 0; i <= s.n_arc; ++i) {
                    const double a = -0.5 * s.opening + s.opening * i / s.n_arc;
                    out.push_back({s.radius * std::cos(a), s.radius * std::sin(a)});
                }
                return out;
            },
            [](const ReuleauxTriangle& s) { return reuleaux(s.width, s.n_arc); },
            [](const ConvexHullPolygon& s) { return s.vertices; },
        },
        spec);
}

DomainSpec scaled(const DomainSpec& spec, double c)
{
    if (!positive(c)) {
        throw std::invalid_argument("scale factor must be positive");
    }
    return std::visit(
        overloaded{
            [c](Rhombus s) -> DomainSpec { s.diameter *= c; return s; },
            [c](HalfRhombus s) -> DomainSpec { s.diameter *= c; return s; },
            [c](Rectangle s) -> DomainSpec { s.a *= c; s.b *= c; return s; },
            [c](Square s) -> DomainSpec { s.side *= c; return s; },
            [c](EquilateralTriangle s) -> DomainSpec { s.side *= c; return s; },
            [c](RegularPolygon s) -> DomainSpec { s.circumradius *= c; return s; },
            [c](Sector s) -> DomainSpec { s.radius *= c; return s; },
            [c](ReuleauxTriangle s) -> DomainSpec { s.width *= c; return s; },
            [c](ConvexHullPolygon s) -> DomainSpec {
                for (auto& v : s.vertices) {
                    v = c * v;
                }
                return s;
            },
        },
        spec);
}

double diameter(const Polygon& polygon)
{
    if (polygon.size() < 2) {
        throw std::invalid_argument("diameter: fewer than two vertices");
    }
    double best = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        for (std::size_t j = i + 1; j < polygon.size(); ++j) {
            best = std::max(best, norm(polygon[i] - polygon[j]));
        }
    }
    return best;
}

double area(const Polygon& polygon)
{
    if (polygon.size() < 3) {
        throw std::invalid_argument("area: fewer than three vertices");
    }
    double twice = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        twice += cross(polygon[i], polygon[(i + 1) % polygon.size()]);
    }
    if (!(twice > 0.0)) {
        throw std::invalid_argument("area: degenerate or clockwise polygon");
    }
    return 0.5 * twice;
}

Polygon convex_hull(std::vector<Vec2> points)
{
    std::sort(points.begin(), points.end(),
              [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    points.erase(std::unique(points.begin(), points.end(),
                             [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
                 points.end());
    if (points.size() < 3) {
        return points;
    }
    Polygon hull(2 * points.size());
    std::size_t k = 0;
    for (const Vec2& p : points) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) {
            --k;
        }
        hull[k++] = p;
    }
    for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
        const Vec2& p = points[i];
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) {
            --k;
        }
        hull[k++] = p;
    }
    hull.resize(k - 1);
    return hull;
}

bool contains(const Polygon& convex, Vec2 p, double tolerance)
{
    for (std::size_t i = 0; i < convex.size(); ++i) {
        const Vec2 a = convex[i];
        const Vec2 b = convex[(i + 1) % convex.size()];
        if (cross(b - a, p - a) < -tolerance * norm(b - a)) {
            return false;
        }
    }
    return true;
}

bool is_convex_ccw(const Polygon& polygon)
{
    const std::size_t n = polygon.size();
    if (n < 3) {
        return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = polygon[i];
        const Vec2 b = polygon[(i + 1) % n];
        const Vec2 c = polygon[(i + 2) % n];
        if (cross(b - a, c - b) <= 0.0) {
            return false;
        }
    }
    double twice = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        twice += cross(polygon[i], polygon[(i + 1) % n]);
    }
    // A star polygon turns left at every vertex too; its winding shows up as
    // an angle sum above 2 pi, which the area test does not catch.
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 u = polygon[(i + 1) % n] - polygon[i];
        const Vec2 v = polygon[(i + 2) % n] - polygon[(i + 1) % n];
        turning += std::atan2(cross(u, v), dot(u, v));
    }
    return twice > 0.0 && std::abs(turning - 2 * pi) < 1e-6;
}

Polygon rotated(const Polygon& polygon, double angle)
{
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Polygon out;
    out.reserve(polygon.size());
    for (const Vec2& p : polygon) {
        out.push_back({c * p.x - s * p.y, s * p.x + c * p.y});
    }
    return out;
}

namespace {

constexpr double kMinPairArea = 1e-4;

// Hull of n uniform points in the unit disk; empty when degenerate.
Polygon random_disk_hull(Xorshift64Star& rng, int n)
{
    std::vector<Vec2> pts;
    while (static_cast<int>(pts.size()) < n) {
        const Vec2 p{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        if (p.x * p.x + p.y * p.y < 1.0) {
            pts.push_back(p);
        }
    }
    Polygon hull = convex_hull(std::move(pts));
    if (hull.size() < 3 || area(hull) <= kMinPairArea) {
        return {};
    }
    return hull;
}

// Retries make_inner(outer) on fresh outer hulls until both are nondegenerate.
template <class MakeInner>
InclusionPair sample_pair(Xorshift64Star& rng, int n_outer, const char* who, MakeInner make_inner)
{
    for (int attempt = 1; attempt <= 100; ++attempt) {
        Polygon outer = random_disk_hull(rng, n_outer);
        if (outer.empty()) {
            continue;
        }
        Polygon inner = convex_hull(make_inner(outer));
        if (inner.size() < 3 || area(inner) <= kMinPairArea) {
            continue;
        }
        for (const Vec2& v : inner) {
            if (!contains(outer, v)) {
                throw std::logic_error(std::string(who) + ": containment check failed");
            }
        }
        return {std::move(inner), std::move(outer), attempt};
    }
    throw std::runtime_error(std::string(who) + ": degenerate hulls after 100 attempts");
}

}  // namespace

InclusionPair inclusion_pair(std::uint64_t seed, int n_outer, int n_inner)
{
    if (n_outer < 3 || n_inner < 3) {
        throw std::invalid_argument("inclusion_pair: need at least 3 points per hull");
    }
    Xorshift64Star rng(seed);
    return sample_pair(rng, n_outer, "inclusion_pair", [&](const Polygon& outer) {
        double x0 = outer[0].x, x1 = x0, y0 = outer[0].y, y1 = y0;
        for (const Vec2& v : outer) {
            x0 = std::min(x0, v.x);
            x1 = std::max(x1, v.x);
            y0 = std::min(y0, v.y);
            y1 = std::max(y1, v.y);
        }
        std::vector<Vec2> pts;
        while (static_cast<int>(pts.size()) < n_inner) {
            const Vec2 p{rng.uniform(x0, x1), rng.uniform(y0, y1)};
            if (contains(outer, p)) {
                pts.push_back(p);
            }
        }
        return pts;
    });
}

InclusionPair chord_inclusion_pair(std::uint64_t seed, int n_outer, int n_inner,
                                   double max_half_width)
{
    if (n_outer < 3 || n_inner < 3) {
        throw std::invalid_argument("chord_inclusion_pair: need at least 3 points per hull");
    }
    if (!(max_half_width > 0.02 && max_half_width <= 0.5)) {
        throw std::invalid_argument("chord_inclusion_pair: max_half_width must lie in (0.02, 0.5]");
    }
    Xorshift64Star rng(seed);
    return sample_pair(rng, n_outer, "chord_inclusion_pair", [&](const Polygon& outer) {
        std::size_t ia = 0, ib = 1;
        double best = -1.0;
        for (std::size_t i = 0; i < outer.size(); ++i) {
            for (std::size_t j = i + 1; j < outer.size(); ++j) {
                const double dij = norm(outer[j] - outer[i]);
                if (dij > best) {
                    best = dij;
                    ia = i;
                    ib = j;
                }
            }
        }
        const Vec2 p = outer[ia];
        const Vec2 u = (1.0 / best) * (outer[ib] - p);
        const Vec2 v{-u.y, u.x};
        const double w = rng.uniform(0.02, max_half_width) * best;
        std::vector<Vec2> pts{p, outer[ib]};
        while (static_cast<int>(pts.size()) < n_inner) {
            const Vec2 c = p + rng.uniform(0.0, best) * u + rng.uniform(-w, w) * v;
            if (contains(outer, c)) {
                pts.push_back(c);
            }
        }
        return pts;
    });
}

}  // namespace speclab
