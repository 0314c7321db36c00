#include "speclab/kernels.hpp"
#include "speclab/mesh.hpp"

#include <boost/math/constants/constants.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace speclab;

namespace {

const double pi = boost::math::constants::pi<double>();

double total_area(const Mesh& m)
{
    double s = 0.0;
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        s += triangle_area(m, t);
    }
    return s;
}

}  // namespace

TEST(Triangulate, UnitSquareAreaAndSize)
{
    const Mesh m = triangulate(Square{1.0}, 0.5);
    EXPECT_LE(m.h, 0.5 + 1e-15);
    EXPECT_NEAR(total_area(m), 1.0, 1e-14);
    EXPECT_NO_THROW(validate(m));
    EXPECT_EQ(m.dirichlet_edge_count(), 0u);
}

TEST(Triangulate, AreaMatchesPolygonForEveryVariant)
{
    const std::vector<DomainSpec> specs{
        Rhombus{2.0, 0.2},
        HalfRhombus{2.0, 0.2, RhombusCut::long_diagonal, Marker::dirichlet},
        HalfRhombus{2.0, 0.2, RhombusCut::short_diagonal, Marker::dirichlet},
        Rectangle{1.0, 0.3},
        EquilateralTriangle{1.0},
        RegularPolygon{9, 1.0},
        Sector{1.0, 1.654, 16},
        ReuleauxTriangle{1.0, 8},
        ConvexHullPolygon{{{0, 0}, {1, 0}, {0.8, 0.7}, {0.1, 0.4}}},
    };
    for (const auto& s : specs) {
        const Mesh m = triangulate_levels(s, 2);
        EXPECT_NO_THROW(validate(m)) << describe(s);
        EXPECT_NEAR(total_area(m), area(build(s)), 1e-13) << describe(s);
    }
}

TEST(Triangulate, RhombusDefaultsToNeumann)
{
    const Mesh m = triangulate_levels(Rhombus{2.0, 0.3}, 2);
    EXPECT_EQ(m.dirichlet_edge_count(), 0u);
    for (const auto& e : m.boundary_edges) {
        EXPECT_EQ(e.marker, Marker::neumann);
    }
}

TEST(Triangulate, HalfRhombusBaseCarriesMarker)
{
    const Mesh m = initial_mesh(HalfRhombus{2.0, 0.3, RhombusCut::long_diagonal, Marker::dirichlet},
                                DirichletSelector::none());
    ASSERT_GT(m.dirichlet_edge_count(), 0u);
    for (const auto& e : m.boundary_edges) {
        if (e.marker == Marker::dirichlet) {
            EXPECT_NEAR(m.vertices[e.a].y, 0.0, 1e-15);
            EXPECT_NEAR(m.vertices[e.b].y, 0.0, 1e-15);
        }
    }
}

TEST(Triangulate, SectorArcSelector)
{
    const Mesh m = initial_mesh(Sector{1.0, pi / 3, 32}, DirichletSelector::on_circle({0, 0}, 1.0));
    EXPECT_EQ(m.dirichlet_edge_count(), 32u);
    const Mesh r = refine(m);
    EXPECT_EQ(r.dirichlet_edge_count(), 64u);
}

TEST(Triangulate, CurvedBoundaryVerticesInscribed)
{
    const Mesh s = triangulate_levels(Sector{1.5, 1.0, 12}, 2);
    for (const auto& e : s.boundary_edges) {
        for (int v : {e.a, e.b}) {
            EXPECT_LE(norm(s.vertices[v]), 1.5 + 1e-12);
        }
    }
    const Polygon reuleaux = build(ReuleauxTriangle{1.0, 16});
    const Mesh r = triangulate_levels(ReuleauxTriangle{1.0, 16}, 1);
    for (const Vec2& v : r.vertices) {
        EXPECT_TRUE(contains(reuleaux, v, 1e-12));
    }
}

TEST(Refine, HalvesHAndQuadruplesTriangles)
{
    const Mesh m = triangulate_levels(RegularPolygon{7, 1.0}, 1);
    const Mesh r = refine(m);
    EXPECT_EQ(r.triangles.size(), 4 * m.triangles.size());
    EXPECT_NEAR(r.h, m.h / 2, 1e-14);
    EXPECT_EQ(r.boundary_edges.size(), 2 * m.boundary_edges.size());
    EXPECT_NEAR(total_area(r), total_area(m), 1e-14);
    EXPECT_NO_THROW(validate(r));
}

TEST(MeshIo, RoundTrip)
{
    const Mesh m = triangulate_levels(Sector{1.0, 1.2, 8}, 1, DirichletSelector::on_circle({0, 0}, 1.0));
    std::stringstream ss;
    write_mesh(ss, m);
    const Mesh back = read_mesh(ss);
    ASSERT_EQ(back.vertices.size(), m.vertices.size());
    ASSERT_EQ(back.triangles, m.triangles);
    ASSERT_EQ(back.boundary_edges.size(), m.boundary_edges.size());
    for (std::size_t i = 0; i < m.vertices.size(); ++i) {
        EXPECT_EQ(back.vertices[i].x, m.vertices[i].x);
        EXPECT_EQ(back.vertices[i].y, m.vertices[i].y);
    }
    EXPECT_EQ(back.dirichlet_edge_count(), m.dirichlet_edge_count());
    EXPECT_DOUBLE_EQ(back.h, m.h);
}

TEST(MeshIo, MalformedInputRejected)
{
    std::stringstream bad("3 1 x\n");
    EXPECT_THROW(read_mesh(bad), std::runtime_error);
}

TEST(Validate, BrokenMeshesRejected)
{
    Mesh m = triangulate_levels(Square{1.0}, 0);
    Mesh flipped = m;
    std::swap(flipped.triangles[0][1], flipped.triangles[0][2]);
    EXPECT_THROW(validate(flipped), std::invalid_argument);
    Mesh orphan = m;
    orphan.vertices.push_back({5, 5});
    EXPECT_THROW(validate(orphan), std::invalid_argument);
    Mesh open = m;
    open.boundary_edges.pop_back();
    EXPECT_THROW(validate(open), std::invalid_argument);
}

TEST(Selector, MatchingNothingThrows)
{
    EXPECT_THROW(initial_mesh(Square{1.0}, DirichletSelector::on_circle({0, 0}, 10.0)),
                 std::invalid_argument);
    EXPECT_THROW(DirichletSelector::on_line(0, 0, 1), std::invalid_argument);
    const Mesh m = initial_mesh(Square{1.0}, DirichletSelector::on_line(1, 0, 0));
    EXPECT_GT(m.dirichlet_edge_count(), 0u);
    EXPECT_LT(m.dirichlet_edge_count(), m.boundary_edges.size());
}

TEST(Kernels, ReferenceElement)
{
    std::array<double, 9> k{}, mm{};
    kernels::p1_element({0, 0}, {1, 0}, {0, 1}, k, mm);
    const std::array<double, 9> k_ref{1, -0.5, -0.5, -0.5, 0.5, 0, -0.5, 0, 0.5};
    for (int i = 0; i < 9; ++i) {
        EXPECT_NEAR(k[i], k_ref[i], 1e-15);
    }
    // Consistent mass: area/12 * (1 + delta_ij), area 1/2.
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            EXPECT_NEAR(mm[3 * i + j], (i == j ? 2.0 : 1.0) / 24.0, 1e-16);
        }
    }
}

TEST(Kernels, SerialAndOpenMpBitIdentical)
{
    const Mesh m = triangulate_levels(ReuleauxTriangle{2.0, 16}, 3);
    const auto a = kernels::serial::element_matrices(m);
    const auto b = kernels::omp::element_matrices(m);
    ASSERT_EQ(a.stiffness.size(), m.triangles.size());
    EXPECT_EQ(a.stiffness, b.stiffness);
    EXPECT_EQ(a.mass, b.mass);
}

TEST(Kernels, DegenerateTriangleRejected)
{
    Mesh m;
    m.vertices = {{0, 0}, {1, 0}, {2, 0}};
    m.triangles = {{0, 1, 2}};
    m.h = 2.0;
    EXPECT_THROW(kernels::serial::element_matrices(m), std::domain_error);
    EXPECT_THROW(kernels::omp::element_matrices(m), std::domain_error);
}
