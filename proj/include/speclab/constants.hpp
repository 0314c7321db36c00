#pragma once

// Closed-form bounds on the worst-case ratio mu_k(inner)/mu_k(outer) over
// nested convex domains in dimension d, together with the diameter bounds they
// are built from.

#include <string>
#include <string_view>
#include <vector>

namespace speclab {

inline constexpr int kMaxDimension = 120;

enum class ConstantName {
    alpha1_sharp,
    alpha1_simple,
    alpha_k2_lower,
    alpha_2d_lower,
    c_upper,
    funano_lower,
    kroger_upper,
    payne_weinberger_lower,
    polya_bound,
};

std::string_view to_string(ConstantName name);

struct ConstantRecord {
    ConstantName name;
    int k;
    int d;
    double value;
    std::string formula;
};

/// Sharp constant for the first nontrivial eigenvalue: pi^2 / (4 j_{d/2-1,1}^2).
double alpha1_sharp(int d);

/// The weaker closed form pi^2 / (2 d (d + 4)).
double alpha1_simple(int d);

/// Universal lower bound (1/92^2) / d^2.
double funano_lower(int d);

/// pi^2 / D^2, the convex-domain lower bound on mu_1 in terms of diameter D.
double payne_weinberger_lower(double diameter);

/// Upper bound on mu_k of a convex domain of diameter D in dimension d.
double kroger_upper(int k, int d, double diameter);

/// c(k, d) = pi^2 k^2 / (D^2 kroger_upper(k, d, D)); an upper bound for the
/// optimal ratio constant.
double c_upper(int k, int d);

/// Non-sharp lower bounds: d = 2 with any k, or k = 2 with any d >= 3.
double alpha_lower_nonsharp(int k, int d);

/// 4 pi^2 k^{2/d} / omega_d^{2/d}, omega_d the unit-ball volume.
double polya_bound(int k, int d);

/// Every constant above on the grid 1..k_max x 2..d_max, ordered by
/// (name, k, d). Diameter-carrying bounds are reported at D = 1.
/// Combinations a formula does not cover are left out.
std::vector<ConstantRecord> emit_constant_table(int k_max, int d_max);

/// CSV with header name,k,d,value,formula; values at 15 significant digits.
std::string constants_csv(const std::vector<ConstantRecord>& records);

}  // namespace speclab
