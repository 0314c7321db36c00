#include "speclab/fem.hpp"

#include <boost/math/constants/constants.hpp>
#include <gtest/gtest.h>

#include <cmath>

using namespace speclab;

namespace {

const double pi = boost::math::constants::pi<double>();
const double pi2 = pi * pi;
const double j01 = 2.404825557695773;
const double jp11 = 1.841183781340659;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Assemble, RowSumsAndTotalMass)
{
    const Mesh m = triangulate_levels(RegularPolygon{11, 1.0}, 2);
    const Pencil p = assemble(m);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(p.stiffness.rows());
    EXPECT_LT((p.stiffness * ones).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(ones.dot(p.mass * ones), area(build(RegularPolygon{11, 1.0})), 1e-13);
    const Eigen::MatrixXd k = p.stiffness;
    EXPECT_LT((k - k.transpose()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Assemble, SerialAndOpenMpIdentical)
{
    const Mesh m = triangulate_levels(Sector{1.0, 1.654, 16}, 3);
    const Pencil a = assemble(m);
    const Pencil b = assemble_serial(m);
    const Eigen::MatrixXd da = a.stiffness, db = b.stiffness;
    const Eigen::MatrixXd ma = a.mass, mb = b.mass;
    EXPECT_EQ(da, db);
    EXPECT_EQ(ma, mb);
}

TEST(SolveMesh, UnitSquareNeumann)
{
    const Mesh m = triangulate_levels(Square{1.0}, 5);
    const EigResult r = solve_mesh(m, 4);
    EXPECT_EQ(r.bc_summary, "neumann");
    EXPECT_EQ(r.dof_count, m.vertices.size());
    EXPECT_LT(std::abs(r.eigenvalues[0]), 1e-8);
    EXPECT_LT(rel(r.eigenvalues[1], pi2), 0.01);
    EXPECT_LT(rel(r.eigenvalues[2], pi2), 0.01);
    EXPECT_LT(rel(r.eigenvalues[3], 2 * pi2), 0.01);
    for (double res : r.residuals) {
        EXPECT_LE(res, 1e-9);
    }
}

TEST(SolveMesh, ZeroModeIsConstant)
{
    const Mesh m = triangulate_levels(EquilateralTriangle{1.0}, 3);
    const EigResult r = solve_mesh(m, 2);
    const Eigen::VectorXd u0 = r.modes.col(0);
    EXPECT_LT((u0.array() - u0.mean()).abs().maxCoeff(), 1e-8 * std::abs(u0.mean()));
}

TEST(SolveMesh, ThinRectangle)
{
    const Mesh m = triangulate_levels(Rectangle{1.0, 0.01}, 5);
    const EigResult r = solve_mesh(m, 2);
    EXPECT_LT(rel(r.eigenvalues[1], pi2), 0.01);
}

TEST(SolveMesh, MixedSquare)
{
    const Mesh m = triangulate_levels(Square{1.0}, 5, DirichletSelector::on_line(1, 0, 0));
    const EigResult r = solve_mesh(m, 2);
    EXPECT_EQ(r.bc_summary.rfind("mixed(", 0), 0u);
    EXPECT_LT(rel(r.eigenvalues[0], pi2 / 4), 0.005);
    EXPECT_EQ(eigenvalue_position(m, 1), 0);
}

TEST(SolveMesh, DirichletSquareAboveNeumann)
{
    const Mesh n = triangulate_levels(Square{1.0}, 4);
    const Mesh d = triangulate_levels(Square{1.0}, 4, DirichletSelector::all());
    const EigResult rn = solve_mesh(n, 6);
    const EigResult rd = solve_mesh(d, 5);
    EXPECT_EQ(rd.bc_summary, "dirichlet");
    EXPECT_LT(rel(rd.eigenvalues[0], 2 * pi2), 0.01);
    for (int k = 1; k <= 5; ++k) {
        EXPECT_GE(rd.eigenvalues[eigenvalue_position(d, k)], rn.eigenvalues[eigenvalue_position(n, k)]);
    }
}

TEST(SolveMesh, ScalingLaw)
{
    const Mesh m = triangulate_levels(Rhombus{2.0, 0.4}, 2);
    Mesh s = m;
    const double c = 3.7;
    for (Vec2& v : s.vertices) {
        v = c * v;
    }
    s.h = c * m.h;
    const EigResult a = solve_mesh(m, 4);
    const EigResult b = solve_mesh(s, 4);
    for (int i = 1; i < 4; ++i) {
        EXPECT_LT(rel(b.eigenvalues[i] * c * c, a.eigenvalues[i]), 1e-10);
    }
}

TEST(SolveMesh, InvalidRequests)
{
    const Mesh m = triangulate_levels(Square{1.0}, 2);
    EXPECT_THROW(solve_mesh(m, 21), std::invalid_argument);
    EXPECT_THROW(solve_mesh(m, 0), std::invalid_argument);
    // A single triangle with every edge clamped leaves nothing to solve.
    Mesh t;
    t.vertices = {{0, 0}, {1, 0}, {0, 1}};
    t.triangles = {{0, 1, 2}};
    t.boundary_edges = {{0, 1, Marker::dirichlet}, {1, 2, Marker::dirichlet}, {2, 0, Marker::dirichlet}};
    t.h = std::sqrt(2.0);
    EXPECT_THROW(solve_mesh(t, 1), std::invalid_argument);
}

TEST(Richardson, OrderTwoFormula)
{
    // f(h) = 3 + 2 h^2 is extrapolated exactly.
    const std::array<double, 3> h{0.4, 0.2, 0.1};
    std::array<double, 3> f{};
    for (int i = 0; i < 3; ++i) {
        f[i] = 3 + 2 * h[i] * h[i];
    }
    const RichardsonEstimate e = richardson(f, h);
    EXPECT_NEAR(e.value, 3.0, 1e-14);
    EXPECT_NEAR(e.error_estimate, 0.02, 1e-14);
    EXPECT_NEAR(e.fitted_order, 2.0, 1e-12);
    EXPECT_TRUE(e.monotone);
    const RichardsonEstimate up = richardson({1.0, 1.1, 1.05}, h);
    EXPECT_FALSE(up.monotone);
}

TEST(MuK, ExtrapolatedBenchmarks)
{
    const RichardsonEstimate sq = mu_k(Square{std::sqrt(2.0)}, 1, 3);
    EXPECT_LT(rel(sq.value, pi2 / 2), 0.002);
    EXPECT_LE(sq.value, sq.levels[2]);
    const RichardsonEstimate tri = mu_k(EquilateralTriangle{1.0}, 1, 3);
    EXPECT_LT(rel(tri.value, 16 * pi2 / 9), 0.005);
    const RichardsonEstimate disk = mu_k(RegularPolygon{256, 1.0}, 1, 2);
    EXPECT_LT(rel(disk.value, jp11 * jp11), 0.005);
}

TEST(MuK, DiskDirichlet)
{
    const RichardsonEstimate d = dirichlet_lambda_k(RegularPolygon{256, 1.0}, 1, 2);
    EXPECT_LT(rel(d.value, j01 * j01), 0.005);
    EXPECT_GT(d.levels[0], d.value);
}

TEST(MuK, SpectrumAgreesWithSingleMode)
{
    const auto spec = extrapolated_spectrum(Square{1.0}, 3, 2, DirichletSelector::none());
    ASSERT_EQ(spec.size(), 3u);
    const RichardsonEstimate one = mu_k(Square{1.0}, 2, 2);
    EXPECT_DOUBLE_EQ(spec[2].value, one.value);
}

TEST(Records, JsonFields)
{
    const std::string s = eig_record_json("square", 1, richardson({5, 4.95, 4.94}, {0.4, 0.2, 0.1}));
    for (const char* key : {"\"domain\"", "\"k\"", "\"h\"", "\"dofs\"", "\"value\"", "\"residual\"",
                            "\"error_estimate\""}) {
        EXPECT_NE(s.find(key), std::string::npos) << key;
    }
}
