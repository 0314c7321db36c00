#include "speclab/lattice.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>

namespace speclab::kernels {
namespace {

constexpr double pi2 = boost::math::constants::pi_sqr<double>();

// Largest n >= 0 with mode(m, n) <= t, or -1 when even n = 0 exceeds t.
long long column_top(double a, double b, long long m, double t)
{
    const double rem = t / pi2 - (m / a) * (m / a);
    long long n = rem > 0.0 ? static_cast<long long>(std::floor(b * std::sqrt(rem))) : 0;
    while (rectangle_mode(a, b, m, n + 1) <= t) {
        ++n;
    }
    while (n >= 0 && rectangle_mode(a, b, m, n) > t) {
        --n;
    }
    return n;
}

long long last_column(double a, double b, double t)
{
    if (t < 0.0) {
        return -1;
    }
    long long m = static_cast<long long>(std::floor(a * std::sqrt(t / pi2)));
    while (rectangle_mode(a, b, m + 1, 0) <= t) {
        ++m;
    }
    while (m >= 0 && rectangle_mode(a, b, m, 0) > t) {
        --m;
    }
    return m;
}

}  // namespace

double rectangle_mode(double a, double b, long long m, long long n)
{
    const double x = static_cast<double>(m) / a;
    const double y = static_cast<double>(n) / b;
    return pi2 * (x * x + y * y);
}

namespace serial {

long long rectangle_lattice_count(double a, double b, double t)
{
    const long long m_max = last_column(a, b, t);
    long long count = 0;
    for (long long m = 0; m <= m_max; ++m) {
        count += column_top(a, b, m, t) + 1;
    }
    return count;
}

}  // namespace serial

namespace omp {

long long rectangle_lattice_count(double a, double b, double t)
{
    const long long m_max = last_column(a, b, t);
    long long count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
    for (long long m = 0; m <= m_max; ++m) {
        count += column_top(a, b, m, t) + 1;
    }
    return count;
}

}  // namespace omp
}  // namespace speclab::kernels
