#include "speclab/spectrum.hpp"

#include "speclab/lattice.hpp"
#include "speclab/specfun.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>

namespace speclab {
namespace {

constexpr double pi = boost::math::constants::pi<double>();
constexpr double pi2 = boost::math::constants::pi_sqr<double>();
constexpr long long kBoxEnumerationBudget = 50'000'000;

void require_positive(double value, const char* what)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::domain_error(std::string(what) + " must be positive and finite");
    }
}

void require_sorted(const Spectrum& s)
{
    if (!std::is_sorted(s.values.begin(), s.values.end())) {
        throw std::invalid_argument("spectrum '" + s.domain_label + "' is not sorted");
    }
}

// Calls visit(value) for every box multi-index with value <= t, where value is
// pi^2 * sum_i (k_i / l_i)^2 accumulated in dimension order. Returns the
// number of visits, stopping early once it exceeds limit.
long long box_enumerate(const std::vector<double>& sides, long long k0, double t, long long limit,
                        const std::function<void(double)>& visit)
{
    long long visited = 0;
    std::function<bool(std::size_t, double)> recurse = [&](std::size_t dim, double partial) {
        const double side = sides[dim];
        for (long long k = k0;; ++k) {
            const double q = static_cast<double>(k) / side;
            const double sum = partial + q * q;
            if (pi2 * sum > t) {
                return true;
            }
            if (dim + 1 == sides.size()) {
                if (++visited > limit) {
                    return false;
                }
                if (visit) {
                    visit(pi2 * sum);
                }
            } else if (!recurse(dim + 1, sum)) {
                return false;
            }
        }
    };
    recurse(0, 0.0);
    return visited;
}

}  // namespace

Spectrum point_spectrum()
{
    return Spectrum{{0.0}, SpectrumSource::analytic, "point", true};
}

Spectrum segment_spectrum(double length, BoundaryCondition bc, std::size_t n)
{
    require_positive(length, "segment length");
    Spectrum s;
    s.domain_label = "segment(" + std::to_string(length) + ")";
    s.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double q = 0.0;
        switch (bc) {
        case BoundaryCondition::neumann: q = static_cast<double>(i) / length; break;
        case BoundaryCondition::dirichlet: q = static_cast<double>(i + 1) / length; break;
        case BoundaryCondition::mixed: q = (2.0 * (i + 1) - 1.0) / (2.0 * length); break;
        }
        s.values.push_back(pi2 * q * q);
    }
    return s;
}

Spectrum box_spectrum(const std::vector<double>& sides, BoundaryCondition bc, std::size_t n)
{
    if (sides.empty() || sides.size() > 6) {
        throw std::invalid_argument("box_spectrum: dimension must be between 1 and 6");
    }
    for (double side : sides) {
        require_positive(side, "box side");
    }
    if (bc == BoundaryCondition::mixed) {
        throw std::invalid_argument("box_spectrum: mixed conditions are not supported");
    }
    if (n == 0) {
        return Spectrum{{}, SpectrumSource::analytic, "box", false};
    }
    if (n > 1'000'000) {
        throw std::length_error("box_spectrum: n above 10^6");
    }
    const long long k0 = bc == BoundaryCondition::neumann ? 0 : 1;
    const auto needed = static_cast<long long>(n);

    auto count = [&](double t) { return box_enumerate(sides, k0, t, kBoxEnumerationBudget, nullptr); };

    double lo = 0.0;
    double hi = pi2;
    while (count(hi) < needed) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) {
            throw std::length_error("box_spectrum: threshold search diverged");
        }
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) {
            break;
        }
        (count(mid) >= needed ? hi : lo) = mid;
    }
    if (count(hi) > kBoxEnumerationBudget) {
        throw std::length_error("box_spectrum: enumeration exceeds memory budget");
    }

    Spectrum s;
    s.domain_label = "box";
    box_enumerate(sides, k0, hi, kBoxEnumerationBudget, [&](double v) { s.values.push_back(v); });
    std::sort(s.values.begin(), s.values.end());
    s.values.resize(n);
    return s;
}

Spectrum product_spectrum(const Spectrum& base, double ell, std::size_t n)
{
    require_positive(ell, "interval length");
    require_sorted(base);
    if (base.values.empty()) {
        throw std::invalid_argument("product_spectrum: empty base spectrum");
    }
    const double step = pi2 / (ell * ell);

    using Entry = std::tuple<double, std::size_t, long long>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (std::size_t m = 0; m < base.count(); ++m) {
        heap.emplace(base[m], m, 0);
    }

    Spectrum out;
    out.source = base.source;
    out.domain_label = base.domain_label + " x [0," + std::to_string(ell) + "]";
    out.values.reserve(n);
    while (out.values.size() < n) {
        const auto [value, m, j] = heap.top();
        heap.pop();
        out.values.push_back(value);
        const double jj = static_cast<double>(j + 1);
        heap.emplace(base[m] + step * jj * jj, m, j + 1);
    }
    if (!base.complete && n > 0 && out.values.back() > base.values.back()) {
        throw std::invalid_argument("product_spectrum: base of length " +
                                    std::to_string(base.count()) + " cannot certify value " +
                                    std::to_string(n));
    }
    return out;
}

Spectrum disjoint_union_spectrum(const std::vector<Spectrum>& parts, std::size_t n)
{
    if (parts.empty()) {
        throw std::invalid_argument("disjoint_union_spectrum: no parts");
    }
    Spectrum out;
    out.source = parts.front().source;
    out.domain_label = "union";
    double certified = std::numeric_limits<double>::infinity();
    bool all_complete = true;
    for (const auto& p : parts) {
        require_sorted(p);
        out.values.insert(out.values.end(), p.values.begin(), p.values.end());
        if (!p.complete) {
            all_complete = false;
            certified = std::min(certified,
                                 p.values.empty() ? -std::numeric_limits<double>::infinity()
                                                  : p.values.back());
        }
    }
    std::sort(out.values.begin(), out.values.end());
    if (out.values.size() < n) {
        throw std::invalid_argument("disjoint_union_spectrum: only " +
                                    std::to_string(out.values.size()) + " values available");
    }
    out.complete = all_complete && out.values.size() == n;
    out.values.resize(n);
    if (n > 0 && out.values.back() > certified) {
        throw std::invalid_argument("disjoint_union_spectrum: parts too short to certify value " +
                                    std::to_string(n));
    }
    return out;
}

Spectrum disk_neumann_spectrum(double radius, std::size_t n)
{
    require_positive(radius, "disk radius");
    Spectrum s;
    s.domain_label = "disk(" + std::to_string(radius) + ")";
    if (n == 0) {
        return s;
    }
    // Work on the unit disk and collect every j'_{m,s} <= x_max; enlarge x_max
    // until at least n values are known, so the prefix is complete.
    double x_max = 2.0 * std::sqrt(static_cast<double>(n)) + 4.0;
    while (true) {
        if (x_max > kMaxBesselOrder) {
            throw std::out_of_range("disk_neumann_spectrum: n too large");
        }
        std::vector<double> unit{0.0};
        for (int m = 0; m < x_max; ++m) {
            for (int k = 1;; ++k) {
                const double z = bessel_j_prime_zero(m, k);
                if (z > x_max) {
                    break;
                }
                unit.push_back(z * z);
                if (m > 0) {
                    unit.push_back(z * z);
                }
            }
        }
        if (unit.size() >= n) {
            std::sort(unit.begin(), unit.end());
            unit.resize(n);
            for (double v : unit) {
                s.values.push_back(v / (radius * radius));
            }
            return s;
        }
        x_max *= 1.5;
    }
}

double disk_mu1(double radius)
{
    require_positive(radius, "disk radius");
    const double z = bessel_j_prime_zero(1.0, 1);
    return z * z / (radius * radius);
}

double equilateral_triangle_mu1(double side)
{
    require_positive(side, "triangle side");
    return 16.0 * pi2 / (9.0 * side * side);
}

double cone_tau1(double radius, int d)
{
    require_positive(radius, "cone radius");
    if (d < 2) {
        throw std::out_of_range("cone_tau1: d must be >= 2");
    }
    const double j = bessel_j_zero(0.5 * d - 1.0, 1);
    return j * j / (radius * radius);
}

double sector_mu1(double radius, double opening)
{
    require_positive(radius, "sector radius");
    if (!(opening > 0.0) || opening > 2.0 * pi) {
        throw std::domain_error("sector opening must lie in (0, 2 pi]");
    }
    const double angular = bessel_j_prime_zero(pi / opening, 1);
    const double radial = bessel_j_prime_zero(0.0, 1);
    const double z = std::min(angular, radial);
    return z * z / (radius * radius);
}

long long rectangle_counting_function(double a, double b, double t)
{
    require_positive(a, "rectangle side");
    require_positive(b, "rectangle side");
    return kernels::omp::rectangle_lattice_count(a, b, t);
}

double rectangle_mu_k(double a, double b, long long k)
{
    require_positive(a, "rectangle side");
    require_positive(b, "rectangle side");
    if (k < 0 || k > 10'000'000) {
        throw std::out_of_range("rectangle_mu_k: k outside [0, 10^7]");
    }
    if (k == 0) {
        return 0.0;
    }
    const long long needed = k + 1;
    double lo = 0.0;
    double hi = pi2 / (std::max(a, b) * std::max(a, b));
    while (kernels::omp::rectangle_lattice_count(a, b, hi) < needed) {
        lo = hi;
        hi *= 2.0;
    }
    while (true) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) {
            break;
        }
        (kernels::omp::rectangle_lattice_count(a, b, mid) >= needed ? hi : lo) = mid;
    }
    // The answer is the largest lattice value not exceeding hi.
    double best = 0.0;
    for (long long m = 0; kernels::rectangle_mode(a, b, m, 0) <= hi; ++m) {
        const double rem = hi / pi2 - (m / a) * (m / a);
        long long n = rem > 0.0 ? static_cast<long long>(std::floor(b * std::sqrt(rem))) : 0;
        while (kernels::rectangle_mode(a, b, m, n + 1) <= hi) {
            ++n;
        }
        while (n > 0 && kernels::rectangle_mode(a, b, m, n) > hi) {
            --n;
        }
        best = std::max(best, kernels::rectangle_mode(a, b, m, n));
    }
    return best;
}

double weyl_ratio(double vol1, double vol2, int d)
{
    require_positive(vol1, "volume");
    require_positive(vol2, "volume");
    if (d < 1) {
        throw std::out_of_range("weyl_ratio: d must be positive");
    }
    return std::pow(vol2 / vol1, 2.0 / d);
}

}  // namespace speclab
