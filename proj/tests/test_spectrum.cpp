#include "speclab/spectrum.hpp"

#include "speclab/constants.hpp"
#include "speclab/lattice.hpp"
#include "speclab/specfun.hpp"

#include <boost/math/constants/constants.hpp>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace speclab;

namespace {

const double pi = boost::math::constants::pi<double>();

// Sorted pi^2 sum (k_i / l_i)^2 over a brute-force index cube.
std::vector<double> brute_box(const std::vector<double>& sides, bool dirichlet, int kmax,
                              std::size_t n)
{
    std::vector<double> values;
    const int lo = dirichlet ? 1 : 0;
    std::vector<int> idx(sides.size(), lo);
    while (true) {
        double v = 0.0;
        for (std::size_t i = 0; i < sides.size(); ++i) {
            v += (idx[i] / sides[i]) * (idx[i] / sides[i]);
        }
        values.push_back(pi * pi * v);
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] > kmax) {
            idx[i] = lo;
            ++i;
        }
        if (i == idx.size()) {
            break;
        }
    }
    std::sort(values.begin(), values.end());
    values.resize(n);
    return values;
}

void expect_values(const Spectrum& s, const std::vector<double>& expected, double rel = 1e-13)
{
    ASSERT_EQ(s.count(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_NEAR(s[i], expected[i], rel * std::max(1.0, std::abs(expected[i]))) << "index " << i;
    }
}

}  // namespace

TEST(Segment, ClosedForms)
{
    expect_values(segment_spectrum(1.0, BoundaryCondition::neumann, 2), {0.0, pi * pi});
    expect_values(segment_spectrum(2.0, BoundaryCondition::neumann, 2), {0.0, pi * pi / 4});
    const double m = 0.3;
    expect_values(segment_spectrum(m, BoundaryCondition::mixed, 1), {pi * pi / (4 * m * m)});
    expect_values(segment_spectrum(1.0, BoundaryCondition::dirichlet, 3),
                  {pi * pi, 4 * pi * pi, 9 * pi * pi});
    EXPECT_THROW(segment_spectrum(0.0, BoundaryCondition::neumann, 2), std::domain_error);
}

TEST(Box, ClosedFormsAndBruteForce)
{
    const double s = 1.0 / std::sqrt(2.0);
    expect_values(box_spectrum({s, s}, BoundaryCondition::neumann, 2), {0.0, 2 * pi * pi});
    expect_values(box_spectrum({std::sqrt(2.0), std::sqrt(2.0)}, BoundaryCondition::neumann, 2),
                  {0.0, pi * pi / 2});
    expect_values(box_spectrum({1.0}, BoundaryCondition::dirichlet, 3),
                  {pi * pi, 4 * pi * pi, 9 * pi * pi});
    const std::vector<std::vector<double>> boxes{{1.0, 1.0}, {2.0, 1.3}, {1.0, 0.7, 0.4},
                                                 {1.0, 1.0, 1.0}};
    for (const auto& sides : boxes) {
        for (bool dir : {false, true}) {
            const auto s1 = box_spectrum(
                sides, dir ? BoundaryCondition::dirichlet : BoundaryCondition::neumann, 60);
            expect_values(s1, brute_box(sides, dir, 25, 60), 1e-12);
        }
    }
}

TEST(Box, DirichletDominatesNeumann)
{
    for (const auto& sides : std::vector<std::vector<double>>{{1.0}, {1.0, 2.0}, {0.5, 0.9, 1.3}}) {
        const auto neu = box_spectrum(sides, BoundaryCondition::neumann, 101);
        const auto dir = box_spectrum(sides, BoundaryCondition::dirichlet, 100);
        for (std::size_t k = 1; k <= 100; ++k) {
            EXPECT_LE(neu[k], dir[k - 1]);
        }
    }
}

TEST(Box, DirichletDomainMonotonicity)
{
    const auto small = box_spectrum({1.0, 0.8}, BoundaryCondition::dirichlet, 100);
    const auto large = box_spectrum({1.2, 0.8}, BoundaryCondition::dirichlet, 100);
    for (std::size_t k = 0; k < 100; ++k) {
        EXPECT_GE(small[k], large[k]);
    }
}

TEST(Spectra, ScalingByFactor)
{
    const double c = 1.7;
    const auto a = box_spectrum({1.0, 0.6}, BoundaryCondition::neumann, 40);
    const auto b = box_spectrum({c, 0.6 * c}, BoundaryCondition::neumann, 40);
    for (std::size_t i = 0; i < 40; ++i) {
        EXPECT_NEAR(b[i], a[i] / (c * c), 1e-12 * std::max(1.0, a[i]));
    }
    const auto d1 = disk_neumann_spectrum(1.0, 12);
    const auto d2 = disk_neumann_spectrum(c, 12);
    for (std::size_t i = 0; i < 12; ++i) {
        EXPECT_NEAR(d2[i], d1[i] / (c * c), 1e-12 * std::max(1.0, d1[i]));
    }
    EXPECT_NEAR(equilateral_triangle_mu1(c), equilateral_triangle_mu1(1.0) / (c * c), 1e-12);
    EXPECT_NEAR(sector_mu1(c, 1.2), sector_mu1(1.0, 1.2) / (c * c), 1e-12);
}

TEST(Product, SmallEllKeepsBase)
{
    Spectrum base;
    base.values = {0.0, 5.0};
    const double ell = 1.0;  // pi^2 > 5
    expect_values(product_spectrum(base, ell, 2), {0.0, 5.0});
}

TEST(Product, PointTimesInterval)
{
    expect_values(product_spectrum(point_spectrum(), 1.0, 3), {0.0, pi * pi, 4 * pi * pi});
}

TEST(Product, SquareTimesIntervalIsCube)
{
    const auto square = box_spectrum({1.0, 1.0}, BoundaryCondition::neumann, 20);
    const auto cube = product_spectrum(square, 1.0, 20);
    expect_values(cube, brute_box({1.0, 1.0, 1.0}, false, 10, 20), 1e-12);
}

TEST(Product, LongEllFirstNonzeroFromInterval)
{
    const auto base = box_spectrum({1.0, 1.0}, BoundaryCondition::neumann, 5);
    const double ell = 50.0;
    EXPECT_NEAR(product_spectrum(base, ell, 2)[1], pi * pi / (ell * ell), 1e-15);
}

TEST(Product, RatioPreservedBelowThreshold)
{
    const auto s1 = segment_spectrum(1.0, BoundaryCondition::neumann, 3);
    const auto s2 = segment_spectrum(2.0, BoundaryCondition::neumann, 3);
    for (int k : {1, 2}) {
        const double threshold = pi / std::sqrt(std::max(s1[k], s2[k]));
        for (double ell : {0.1 * threshold, 0.99 * threshold, threshold}) {
            const double r = product_spectrum(s1, ell, k + 1)[k] / product_spectrum(s2, ell, k + 1)[k];
            EXPECT_NEAR(r, s1[k] / s2[k], 1e-12);
        }
        const double above = 1.01 * threshold;
        const double r = product_spectrum(s1, above, k + 1)[k] / product_spectrum(s2, above, k + 1)[k];
        EXPECT_GT(std::abs(r - s1[k] / s2[k]), 1e-6);
    }
}

TEST(Product, UncertifiableRequestThrows)
{
    Spectrum base;
    base.values = {0.0, 1.0};
    EXPECT_THROW(product_spectrum(base, 0.01, 3), std::invalid_argument);
}

TEST(DisjointUnion, Merges)
{
    Spectrum a, b;
    a.values = {0.0, 1.0, 2.0};
    a.complete = true;
    b.values = {0.0, 1.5};
    b.complete = true;
    expect_values(disjoint_union_spectrum({a, b}, 5), {0.0, 0.0, 1.0, 1.5, 2.0});
    const auto disk = disk_neumann_spectrum(1.0, 6);
    expect_values(disjoint_union_spectrum({disk}, 6), disk.values);
}

TEST(DisjointUnion, EqualDisksHaveZeroModes)
{
    for (int j : {2, 3}) {
        std::vector<Spectrum> parts(j * j, disk_neumann_spectrum(1.0 / j, 3));
        const auto u = disjoint_union_spectrum(parts, j * j + 1);
        for (int i = 0; i < j * j; ++i) {
            EXPECT_EQ(u[i], 0.0);
        }
        EXPECT_NEAR(u[j * j], disk_mu1(1.0) * j * j, 1e-12 * j * j);
        EXPECT_GT(u[j * j], 0.0);
    }
}

TEST(DisjointUnion, UncertifiableRequestThrows)
{
    Spectrum a, b;
    a.values = {0.0, 1.0};
    b.values = {0.0, 10.0};
    EXPECT_THROW(disjoint_union_spectrum({a, b}, 4), std::invalid_argument);
}

TEST(Disk, FirstValuesAndMultiplicity)
{
    const double jp11 = 1.841183781340659;
    EXPECT_NEAR(disk_mu1(1.0), jp11 * jp11, 1e-12);
    EXPECT_NEAR(disk_mu1(1.0), 3.39, 0.005);
    EXPECT_NEAR(disk_mu1(2.0), jp11 * jp11 / 4, 1e-12);
    const auto s = disk_neumann_spectrum(1.0, 6);
    EXPECT_EQ(s[0], 0.0);
    EXPECT_NEAR(s[1], jp11 * jp11, 1e-12);
    EXPECT_EQ(s[1], s[2]);
    const double jp21 = 3.054236928227140;  // doubly degenerate
    const double jp01 = 3.831705970207512;  // simple
    EXPECT_NEAR(s[3], jp21 * jp21, 1e-11);
    EXPECT_EQ(s[3], s[4]);
    EXPECT_NEAR(s[5], jp01 * jp01, 1e-11);
}

TEST(ClosedForms, TriangleConeSector)
{
    EXPECT_NEAR(equilateral_triangle_mu1(2.0), 4 * pi * pi / 9, 1e-13);
    EXPECT_NEAR(equilateral_triangle_mu1(1.0), 16 * pi * pi / 9, 1e-13);
    const double j01 = 2.404825557695773;
    EXPECT_NEAR(cone_tau1(1.0, 2), j01 * j01, 1e-12);
    EXPECT_NEAR(cone_tau1(1.0, 3), pi * pi, 1e-12);
    EXPECT_NEAR(cone_tau1(2.0, 2), j01 * j01 / 4, 1e-12);
    // Half disk: the m = 1 mode of the disk survives.
    EXPECT_NEAR(sector_mu1(1.0, pi), disk_mu1(1.0), 1e-12);
}

TEST(Rectangle, SmallIndices)
{
    EXPECT_EQ(rectangle_mu_k(1.0, 1.0, 0), 0.0);
    EXPECT_NEAR(rectangle_mu_k(1.0, 1.0, 1), pi * pi, 1e-12);
    EXPECT_NEAR(rectangle_mu_k(std::sqrt(2.0), std::sqrt(2.0), 1), pi * pi / 2, 1e-12);
}

TEST(Rectangle, MatchesBruteForceEnumeration)
{
    for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.3}, std::pair{1.0, 0.37}}) {
        const auto ref = brute_box({a, b}, false, 120, 3001);
        for (long long k : {1LL, 2LL, 5LL, 17LL, 100LL, 999LL, 3000LL}) {
            EXPECT_DOUBLE_EQ(rectangle_mu_k(a, b, k), ref[k]) << a << "x" << b << " k=" << k;
        }
    }
}

TEST(Rectangle, WeylLeadingTerm)
{
    const long long k = 100000;
    EXPECT_NEAR(rectangle_mu_k(1.0, 1.0, k) / (4 * pi * k), 1.0, 0.02);
    EXPECT_NEAR(rectangle_mu_k(1.0, 1.0, k) / polya_bound(k, 2), 1.0, 0.02);
}

TEST(Rectangle, CountingFunctionConsistent)
{
    for (double t : {0.0, 10.0, 100.0, 12345.6}) {
        const long long n = rectangle_counting_function(2.0, 1.3, t);
        EXPECT_EQ(n, kernels::serial::rectangle_lattice_count(2.0, 1.3, t));
        if (n > 0) {
            EXPECT_LE(rectangle_mu_k(2.0, 1.3, n - 1), t);
        }
        EXPECT_GT(rectangle_mu_k(2.0, 1.3, n), t);
    }
}

TEST(Rectangle, SerialAndParallelCountsAgree)
{
    for (double t : {1.0, 5e3, 2e5, 1.3e6}) {
        EXPECT_EQ(kernels::serial::rectangle_lattice_count(2.0, 1.3, t),
                  kernels::omp::rectangle_lattice_count(2.0, 1.3, t));
    }
}

TEST(Weyl, Ratio)
{
    EXPECT_NEAR(weyl_ratio(1.0, 2.6, 2), 2.6, 1e-15);
    EXPECT_NEAR(weyl_ratio(pi, pi, 2), 1.0, 1e-15);
    EXPECT_NEAR(weyl_ratio(1.0, 8.0, 3), 4.0, 1e-14);
}

TEST(Weyl, EqualRectanglesGiveRatioOne)
{
    for (long long k : {10LL, 1000LL, 100000LL}) {
        EXPECT_EQ(rectangle_mu_k(1.5, 0.7, k) / rectangle_mu_k(1.5, 0.7, k), 1.0);
    }
}
