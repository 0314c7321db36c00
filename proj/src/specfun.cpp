#include "speclab/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace speclab {
namespace {

void check_argument(double nu, double x)
{
    if (!std::isfinite(nu) || !std::isfinite(x) || nu < 0.0 || x < 0.0) {
        throw std::domain_error("bessel: order and argument must be finite and non-negative");
    }
}

void check_zero_range(double nu, int k, int k_max)
{
    if (!std::isfinite(nu) || nu < 0.0 || nu > kMaxBesselOrder) {
        throw std::out_of_range("bessel zero: order " + std::to_string(nu) + " outside [0, 60]");
    }
    if (k < 1 || k > k_max) {
        throw std::out_of_range("bessel zero: index " + std::to_string(k) + " outside [1, " +
                                std::to_string(k_max) + "]");
    }
}

// J_nu''(x) from Bessel's equation.
double bessel_j_second(double nu, double x)
{
    return -bessel_j_prime(nu, x) / x - (1.0 - nu * nu / (x * x)) * bessel_j(nu, x);
}

// Root of f in [lo, hi] where f(lo) and f(hi) differ in sign. Bisection down to
// width 1e-8, then Newton with derivative df; a Newton iterate leaving the
// bracket or failing to settle within 50 steps reverts to plain bisection.
double refine_root(const std::function<double(double)>& f, const std::function<double(double)>& df,
                   double lo, double hi)
{
    double f_lo = f(lo);
    if (f_lo == 0.0) {
        return lo;
    }
    while (hi - lo > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if (f_mid == 0.0) {
            return mid;
        }
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }

    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 50; ++iter) {
        const double step = f(x) / df(x);
        const double next = x - step;
        if (!std::isfinite(next) || next < lo || next > hi) {
            break;
        }
        if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(next)) {
            return next;
        }
        x = next;
    }

    for (int iter = 0; iter < 200 && hi - lo > 2.0 * std::numeric_limits<double>::epsilon() * hi;
         ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if (f_mid == 0.0) {
            return mid;
        }
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Walks forward from start in unit steps and returns the k-th sign change of f.
double kth_sign_change(const std::function<double(double)>& f,
                       const std::function<double(double)>& df, double start, int k)
{
    constexpr double step = 1.0;
    double x = start;
    double fx = f(x);
    int found = 0;
    while (true) {
        const double next = x + step;
        const double f_next = f(next);
        if (f_next == 0.0 || (f_next > 0.0) != (fx > 0.0)) {
            if (++found == k) {
                return f_next == 0.0 ? next : refine_root(f, df, x, next);
            }
            if (f_next == 0.0) {
                // Step past an exact hit so the next interval starts with a sign.
                x = next + 1e-9;
                fx = f(x);
                continue;
            }
        }
        x = next;
        fx = f_next;
    }
}

}  // namespace

double bessel_j(double nu, double x)
{
    check_argument(nu, x);
    return boost::math::cyl_bessel_j(nu, x);
}

double bessel_j_prime(double nu, double x)
{
    check_argument(nu, x);
    if (x == 0.0) {
        if (nu == 1.0) {
            return 0.5;
        }
        return (nu > 0.0 && nu < 1.0) ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return boost::math::cyl_bessel_j_prime(nu, x);
}

double bessel_j_zero(double nu, int k)
{
    check_zero_range(nu, k, kMaxZeroIndex);
    auto f = [nu](double x) { return bessel_j(nu, x); };
    auto df = [nu](double x) { return bessel_j_prime(nu, x); };
    // J_nu > 0 on (0, j_{nu,1}) and j_{nu,1} > nu.
    return kth_sign_change(f, df, nu, k);
}

double bessel_j_prime_zero(double nu, int k)
{
    check_zero_range(nu, k, kMaxPrimeZeroIndex);
    auto f = [nu](double x) { return bessel_j_prime(nu, x); };
    auto df = [nu](double x) { return bessel_j_second(nu, x); };
    // For nu > 0, J_nu' > 0 on (0, j'_{nu,1}) and j'_{nu,1} > nu. For nu = 0 the
    // stationary point at the origin is skipped; J_0' = -J_1 < 0 just after it.
    const double start = nu > 0.0 ? nu : 0.5;
    return kth_sign_change(f, df, start, k);
}

}  // namespace speclab
