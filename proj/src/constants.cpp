#include "speclab/constants.hpp"

#include "speclab/report.hpp"
#include "speclab/specfun.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace speclab {
namespace {

constexpr double pi = boost::math::constants::pi<double>();

void check_dimension(int d)
{
    if (d < 2 || d > kMaxDimension) {
        throw std::out_of_range("dimension " + std::to_string(d) + " outside [2, 120]");
    }
}

void check_order(int k)
{
    if (k < 1) {
        throw std::out_of_range("eigenvalue index must be >= 1");
    }
}

void check_diameter(double diameter)
{
    if (!(diameter > 0.0) || !std::isfinite(diameter)) {
        throw std::domain_error("diameter must be positive and finite");
    }
}

double bessel_order(int d) { return 0.5 * d - 1.0; }

// Kroger's bound times D^2.
double kroger_scaled(int k, int d)
{
    check_order(k);
    check_dimension(d);
    if (d == 2) {
        const double s = 2.0 * bessel_j_zero(0.0, 1) + pi * (k - 1);
        return s * s;
    }
    const double nu = bessel_order(d);
    if (k % 2 == 1) {
        const double j = bessel_j_zero(nu, (k + 1) / 2);
        return 4.0 * j * j;
    }
    const double s = bessel_j_zero(nu, k / 2) + bessel_j_zero(nu, k / 2 + 1);
    return s * s;
}

}  // namespace

std::string_view to_string(ConstantName name)
{
    switch (name) {
    case ConstantName::alpha1_sharp: return "alpha1_sharp";
    case ConstantName::alpha1_simple: return "alpha1_simple";
    case ConstantName::alpha_k2_lower: return "alpha_k2_lower";
    case ConstantName::alpha_2d_lower: return "alpha_2d_lower";
    case ConstantName::c_upper: return "c_upper";
    case ConstantName::funano_lower: return "funano_lower";
    case ConstantName::kroger_upper: return "kroger_upper";
    case ConstantName::payne_weinberger_lower: return "payne_weinberger_lower";
    case ConstantName::polya_bound: return "polya_bound";
    }
    return "unknown";
}

double alpha1_sharp(int d)
{
    check_dimension(d);
    const double j = bessel_j_zero(bessel_order(d), 1);
    return pi * pi / (4.0 * j * j);
}

double alpha1_simple(int d)
{
    check_dimension(d);
    return pi * pi / (2.0 * d * (d + 4.0));
}

double funano_lower(int d)
{
    check_dimension(d);
    return 1.0 / (92.0 * 92.0) / (static_cast<double>(d) * d);
}

double payne_weinberger_lower(double diameter)
{
    check_diameter(diameter);
    return pi * pi / (diameter * diameter);
}

double kroger_upper(int k, int d, double diameter)
{
    check_diameter(diameter);
    return kroger_scaled(k, d) / (diameter * diameter);
}

double c_upper(int k, int d)
{
    return pi * pi * k * k / kroger_scaled(k, d);
}

double alpha_lower_nonsharp(int k, int d)
{
    check_order(k);
    check_dimension(d);
    if (d == 2) {
        if (k > 1000) {
            throw std::out_of_range("alpha_lower_nonsharp: k > 1000 unsupported");
        }
        const double s = 2.0 * bessel_j_zero(0.0, 1) + (k - 1) * pi;
        return pi * pi / (s * s);
    }
    if (k == 2) {
        const double nu = bessel_order(d);
        const double s = bessel_j_zero(nu, 1) + bessel_j_zero(nu, 2);
        return pi * pi / (s * s);
    }
    throw std::invalid_argument("alpha_lower_nonsharp: no bound for k = " + std::to_string(k) +
                                ", d = " + std::to_string(d));
}

double polya_bound(int k, int d)
{
    check_order(k);
    if (d < 2) {
        throw std::out_of_range("polya_bound: d must be >= 2");
    }
    const double log_omega = 0.5 * d * std::log(pi) - std::lgamma(0.5 * d + 1.0);
    return 4.0 * pi * pi * std::exp((2.0 / d) * (std::log(static_cast<double>(k)) - log_omega));
}

std::vector<ConstantRecord> emit_constant_table(int k_max, int d_max)
{
    check_order(k_max);
    check_dimension(d_max);

    std::vector<ConstantRecord> out;
    auto add = [&](ConstantName name, int k, int d, double value, std::string formula) {
        out.push_back({name, k, d, value, std::move(formula)});
    };

    // Names are visited in alphabetical order so the output is sorted by
    // (name, k, d) without a separate pass.
    for (int d = 2; d <= d_max; ++d) {
        add(ConstantName::alpha1_sharp, 1, d, alpha1_sharp(d), "pi^2/(4 j_{d/2-1,1}^2)");
    }
    for (int d = 2; d <= d_max; ++d) {
        add(ConstantName::alpha1_simple, 1, d, alpha1_simple(d), "pi^2/(2 d (d+4))");
    }
    if (k_max >= 2) {
        for (int d = 3; d <= d_max; ++d) {
            add(ConstantName::alpha_2d_lower, 2, d, alpha_lower_nonsharp(2, d),
                "pi^2/(j_{(d-2)/2,1} + j_{(d-2)/2,2})^2");
        }
    }
    for (int k = 1; k <= std::min(k_max, 1000); ++k) {
        add(ConstantName::alpha_k2_lower, k, 2, alpha_lower_nonsharp(k, 2),
            "pi^2/(2 j_{0,1} + (k-1) pi)^2");
    }
    for (int k = 1; k <= k_max; ++k) {
        for (int d = 2; d <= d_max; ++d) {
            add(ConstantName::c_upper, k, d, c_upper(k, d), "pi^2 k^2 / (D^2 kroger_upper(k,d,D))");
        }
    }
    for (int d = 2; d <= d_max; ++d) {
        add(ConstantName::funano_lower, 1, d, funano_lower(d), "(1/92^2)/d^2");
    }
    for (int k = 1; k <= k_max; ++k) {
        for (int d = 2; d <= d_max; ++d) {
            const char* formula = d == 2 ? "(2 j_{0,1} + pi (k-1))^2/D^2, D=1"
                                  : k % 2 ? "4 j_{d/2-1,(k+1)/2}^2/D^2, D=1"
                                          : "(j_{d/2-1,k/2} + j_{d/2-1,k/2+1})^2/D^2, D=1";
            add(ConstantName::kroger_upper, k, d, kroger_upper(k, d, 1.0), formula);
        }
    }
    add(ConstantName::payne_weinberger_lower, 1, 2, payne_weinberger_lower(1.0), "pi^2/D^2, D=1");
    for (int k = 1; k <= k_max; ++k) {
        for (int d = 2; d <= d_max; ++d) {
            add(ConstantName::polya_bound, k, d, polya_bound(k, d), "4 pi^2 k^(2/d)/omega_d^(2/d)");
        }
    }
    return out;
}

std::string constants_csv(const std::vector<ConstantRecord>& records)
{
    std::ostringstream os;
    os << "name,k,d,value,formula\n";
    for (const auto& r : records) {
        os << to_string(r.name) << ',' << r.k << ',' << r.d << ',' << format_number(r.value) << ','
           << csv_escape(r.formula) << '\n';
    }
    return os.str();
}

}  // namespace speclab
