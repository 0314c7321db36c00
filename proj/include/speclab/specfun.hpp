#pragma once

// Bessel functions of the first kind, their zeros and the zeros of their
// derivatives. Orders are real and non-negative, arguments real.

namespace speclab {

inline constexpr double kMaxBesselOrder = 60.0;
inline constexpr int kMaxZeroIndex = 10000;
inline constexpr int kMaxPrimeZeroIndex = 1000;

/// J_nu(x). Throws std::domain_error for negative or non-finite input.
double bessel_j(double nu, double x);

/// J_nu'(x), from the recurrence J_nu' = (nu/x) J_nu - J_{nu+1}.
double bessel_j_prime(double nu, double x);

/// k-th positive zero j_{nu,k} of J_nu (k >= 1).
///
/// Zeros are bracketed by a forward sign-change scan starting at x = nu (no
/// zero lies below it); the gap between consecutive zeros exceeds 3 for every
/// nu >= 0, so a unit step never straddles two of them. The bracket is
/// narrowed by bisection to width 1e-8 and polished by Newton.
///
/// Throws std::out_of_range outside nu <= 60, k <= 10^4.
double bessel_j_zero(double nu, int k);

/// k-th positive zero of J_nu'. x = 0 is never counted, so for nu = 0 the
/// first zero is j_{1,1} = 3.8317... Supported range nu <= 60, k <= 10^3.
double bessel_j_prime_zero(double nu, int k);

}  // namespace speclab
