#include "speclab/experiments.hpp"

#include "speclab/constants.hpp"
#include "speclab/fem.hpp"
#include "speclab/geometry.hpp"
#include "speclab/mesh.hpp"
#include "speclab/specfun.hpp"
#include "speclab/spectrum.hpp"

#include <Eigen/Core>
#include <boost/math/constants/constants.hpp>
#include <boost/version.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace speclab {
namespace {

constexpr double pi = boost::math::constants::pi<double>();
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

double deg(double degrees) { return degrees * pi / 180.0; }

double rel_dev(double value, double target) { return std::abs(value - target) / std::abs(target); }

void expect_le(ExperimentReport& r, std::string name, std::string invariant, double measured,
               double bound, std::string detail = {})
{
    r.add_verdict(std::move(name), std::move(invariant), measured <= bound, measured, bound,
                  bound - measured, std::move(detail));
}

void expect_ge(ExperimentReport& r, std::string name, std::string invariant, double measured,
               double bound, std::string detail = {})
{
    r.add_verdict(std::move(name), std::move(invariant), measured >= bound, measured, bound,
                  measured - bound, std::move(detail));
}

void expect_lt(ExperimentReport& r, std::string name, std::string invariant, double measured,
               double bound, std::string detail = {})
{
    r.add_verdict(std::move(name), std::move(invariant), measured < bound, measured, bound,
                  bound - measured, std::move(detail));
}

// |value - target| <= rel_tol |target| + abs_extra.
void expect_near(ExperimentReport& r, std::string name, std::string invariant, double value,
                 double target, double rel_tol, double abs_extra = 0.0)
{
    std::ostringstream os;
    os << "value " << format_number(value) << ", target " << format_number(target);
    expect_le(r, std::move(name), std::move(invariant), std::abs(value - target),
              rel_tol * std::abs(target) + abs_extra, os.str());
}

std::string fmt_deg(double degrees) { return format_number(degrees) + "deg"; }

// Radius of the sector with the given opening whose diameter is d.
double sector_radius_for_diameter(double opening, double d)
{
    if (opening <= pi / 3.0) {
        return d;
    }
    if (opening < pi) {
        return d / (2.0 * std::sin(0.5 * opening));
    }
    return 0.5 * d;
}

}  // namespace

// ---------------------------------------------------------------- constants

ExperimentReport cmd_constants(int k_max, int d_max)
{
    if (k_max < 1 || k_max > 20 || d_max < 2 || d_max > kMaxDimension) {
        throw std::invalid_argument("constants: need 1 <= k_max <= 20 and 2 <= d_max <= 120");
    }
    ExperimentReport r;
    r.command = "constants";
    r.columns = {"name", "k", "d", "value", "formula"};
    const auto table = emit_constant_table(k_max, d_max);
    double c_max = 0.0;
    for (const auto& rec : table) {
        r.rows.push_back({std::string(to_string(rec.name)), static_cast<long long>(rec.k),
                          static_cast<long long>(rec.d), rec.value, rec.formula});
        if (rec.name == ConstantName::c_upper) {
            c_max = std::max(c_max, rec.value);
        }
    }
    expect_lt(r, "c_upper_below_one", "constants.c_upper_below_one", c_max, 1.0);

    const double a2 = alpha1_sharp(2);
    expect_le(r, "alpha1_sharp_d2_range", "constants.alpha1_sharp", std::abs(a2 - 0.4267), 0.0003,
              "alpha1_sharp(2) = " + format_number(a2) + ", expected in [0.4264, 0.4270]");
    if (d_max >= 3) {
        expect_near(r, "alpha1_sharp_d3_quarter", "constants.alpha1_sharp", alpha1_sharp(3), 0.25,
                    0.0, 1e-12);
        double worst = 0.0;
        for (int k = 1; k <= 20; ++k) {
            const double closed = static_cast<double>(k * k) / ((k + 1.0) * (k + 1.0));
            worst = std::max(worst, std::abs(c_upper(k, 3) - closed));
        }
        expect_le(r, "c_upper_d3_closed_form", "constants.c_upper", worst, 1e-12,
                  "max |c(k,3) - k^2/(k+1)^2| over k <= 20");
    }

    double sandwich = -std::numeric_limits<double>::infinity();
    double min_step = std::numeric_limits<double>::infinity();
    double top = 0.0;
    for (int d = 2; d <= d_max; ++d) {
        const double f = funano_lower(d), s = alpha1_simple(d), a = alpha1_sharp(d);
        sandwich = std::max({sandwich, f - s, s - a, std::abs(a - c_upper(1, d)) - 1e-12 * a});
        top = std::max(top, a * d * d);
        if (d > 2) {
            min_step = std::min(min_step, a * d * d - alpha1_sharp(d - 1) * (d - 1) * (d - 1));
        }
    }
    expect_le(r, "sandwich", "constants.sandwich", sandwich, 0.0,
              "funano <= simple <= sharp = c_upper(1, d) for 2 <= d <= d_max");
    if (d_max > 2) {
        expect_ge(r, "alpha1_sharp_d2_increasing", "constants.alpha1_d2_increasing", min_step,
                  std::numeric_limits<double>::min(), "smallest increment of alpha1_sharp(d) d^2");
    }
    expect_le(r, "alpha1_sharp_d2_below_pi2", "constants.alpha1_d2_increasing", top, pi * pi);

    double dim_step = -std::numeric_limits<double>::infinity();
    double k_step = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= k_max; ++k) {
        for (int d = 2; d <= d_max; ++d) {
            if (d < d_max) {
                dim_step = std::max(dim_step, c_upper(k, d + 1) - c_upper(k, d));
            }
            if (k < k_max) {
                k_step = std::min(k_step, c_upper(k + 1, d) - c_upper(k, d));
            }
        }
    }
    if (d_max > 2) {
        expect_le(r, "c_upper_dimension_monotone", "constants.dimension_monotone", dim_step, 0.0,
                  "largest c(k, d+1) - c(k, d)");
    }
    if (k_max > 1) {
        expect_ge(r, "c_upper_increasing_in_k", "constants.c_upper_increasing_in_k", k_step,
                  std::numeric_limits<double>::min(), "smallest c(k+1, d) - c(k, d)");
    }
    return r;
}

// ---------------------------------------------------------------- table-mu1

ExperimentReport cmd_table_mu1(const TableMu1Options& options)
{
    if (options.refine_offset < -1 || options.refine_offset > 2 || options.sector_angles.empty() ||
        options.arc_chords < 16) {
        throw std::invalid_argument("table-mu1: invalid options");
    }
    for (double a : options.sector_angles) {
        if (!(a > 0.0 && a < pi)) {
            throw std::invalid_argument("table-mu1: sector openings must lie in (0, pi)");
        }
    }
    ExperimentReport r;
    r.command = "table-mu1";
    r.columns = {"domain",    "method",      "mu1",   "error_estimate",  "reference",
                 "published_value", "rel_deviation", "ratio", "published_ratio", "ratio_deviation",
                 "tolerance", "detail"};
    const double seg = pi * pi / 4.0;  // mu_1 of the segment of length 2
    const int off = options.refine_offset;
    const std::string inv = "cli_experiments.table_mu1";

    struct Row {
        Row(std::string d, std::string m) : domain(std::move(d)), method(std::move(m)) {}
        std::string domain, method;
        double mu1 = nan, est = 0.0, reference = nan, published = nan, published_ratio = nan, tol = 0.0;
        std::string detail;
        bool failed = false;
    };
    auto emit = [&](Row row) {
        const double ratio = seg / row.mu1;
        const double ratio_err = ratio * row.est / row.mu1;
        r.rows.push_back({row.domain, row.method, row.mu1, row.est, row.reference, row.published,
                          rel_dev(row.mu1, row.published), ratio, row.published_ratio,
                          rel_dev(ratio, row.published_ratio), row.tol, row.detail});
        if (row.failed) {
            r.add_verdict(row.domain + ".value", inv, false, nan, row.published, nan, row.detail);
            return;
        }
        expect_near(r, row.domain + ".value", inv, row.mu1, row.published, row.tol, row.est);
        expect_near(r, row.domain + ".ratio", inv, ratio, row.published_ratio, row.tol, ratio_err);
        if (std::isfinite(row.reference)) {
            expect_near(r, row.domain + ".closed_form", inv, row.mu1, row.reference,
                        row.method == "analytic" ? 0.0 : row.tol,
                        row.method == "analytic" ? 1e-12 * row.reference : row.est);
        }
        if (row.method != "analytic") {
            expect_ge(r, row.domain + ".payne_weinberger", "fem.payne_weinberger",
                      row.mu1 + row.est, 0.995 * payne_weinberger_lower(2.0));
        }
    };
    auto fem_row = [&](Row row, const DomainSpec& spec, int refinements) {
        try {
            const RichardsonEstimate e = mu_k(spec, 1, std::max(0, refinements + off));
            row.mu1 = e.value;
            row.est = e.error_estimate;
            row.detail = describe(spec) + "; dofs " + std::to_string(e.finest_dofs);
        } catch (const std::exception& ex) {
            row.failed = true;
            row.detail = ex.what();
        }
        emit(row);
    };

    // Optimal bound: the closed form, plus degenerating rhombi approaching it.
    const double j01 = bessel_j_zero(0.0, 1);
    {
        Row row{"optimal_bound", "analytic"};
        row.mu1 = kroger_upper(1, 2, 2.0);
        row.reference = j01 * j01;
        row.published = 5.783;
        row.published_ratio = 0.427;
        row.tol = 0.005;
        row.detail = "j_{0,1}^2";
        emit(row);

        Series trend{"rhombus mu_1", {}, {}};
        std::vector<RichardsonEstimate> values;
        const std::vector<double> thetas{20.0, 10.0, 5.0};
        std::ostringstream detail;
        for (double t : thetas) {
            values.push_back(mu_k(Rhombus{2.0, deg(t)}, 1, std::max(0, 4 + off)));
            trend.x.push_back(t);
            trend.y.push_back(values.back().value);
            detail << fmt_deg(t) << "=" << format_number(values.back().value) << " ";
        }
        double worst_step = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < values.size(); ++i) {
            worst_step = std::min(worst_step, values[i].value - values[i - 1].value +
                                                  values[i].error_estimate +
                                                  values[i - 1].error_estimate);
        }
        expect_ge(r, "optimal_bound.rhombus_trend_increasing", inv, worst_step, 0.0, detail.str());
        const RichardsonEstimate& last = values.back();
        expect_near(r, "optimal_bound.rhombus_trend_close", inv, last.value, j01 * j01, 0.005,
                    last.error_estimate);
        expect_le(r, "optimal_bound.rhombus_below_kroger", "fem.kroger",
                  last.value - last.error_estimate, 1.005 * kroger_upper(1, 2, 2.0));
        r.plots.push_back({"table_mu1_rhombus_trend", "Rhombi of diameter 2", "theta (deg)",
                           "mu_1", {trend, {"j_{0,1}^2", {thetas.front(), thetas.back()},
                                            {j01 * j01, j01 * j01}}}});
    }

    {
        Row row{"square", "fem"};
        row.reference = pi * pi / 2.0;
        row.published = pi * pi / 2.0;
        row.published_ratio = 0.5;
        row.tol = 0.002;
        fem_row(row, Square{std::sqrt(2.0)}, 3);
    }

    // Optimal sector: the opening maximising mu_1 (minimising the ratio) over
    // the grid, each sector scaled to diameter 2.
    {
        Row row{"optimal_sector", "fem"};
        row.published = 4.67;
        row.published_ratio = 0.53;
        row.tol = 0.01;
        Series fem{"fem", {}, {}}, exact{"closed form", {}, {}};
        std::optional<RichardsonEstimate> best;
        double best_angle = nan, best_radius = nan;
        try {
            for (double a : options.sector_angles) {
                const double radius = sector_radius_for_diameter(a, 2.0);
                const RichardsonEstimate e =
                    mu_k(Sector{radius, a, options.arc_chords}, 1, std::max(0, 2 + off));
                fem.x.push_back(a);
                fem.y.push_back(e.value);
                exact.x.push_back(a);
                exact.y.push_back(sector_mu1(radius, a));
                if (!best || e.value > best->value) {
                    best = e;
                    best_angle = a;
                    best_radius = radius;
                }
            }
            row.mu1 = best->value;
            row.est = best->error_estimate;
            row.reference = sector_mu1(best_radius, best_angle);
            row.detail = "best opening " + format_number(best_angle) + " rad; dofs " +
                         std::to_string(best->finest_dofs);
        } catch (const std::exception& ex) {
            row.failed = true;
            row.detail = ex.what();
        }
        emit(row);
        r.metadata["optimal_sector_opening"] = format_number(best_angle);
        r.plots.push_back({"table_mu1_sector", "Sectors of diameter 2", "opening (rad)", "mu_1",
                           {fem, exact}});
    }

    {
        Row row{"equilateral_triangle", "fem"};
        row.reference = equilateral_triangle_mu1(2.0);
        row.published = 4.0 * pi * pi / 9.0;
        row.published_ratio = 0.5625;
        row.tol = 0.005;
        fem_row(row, EquilateralTriangle{2.0}, 3);
    }
    {
        Row row{"reuleaux_triangle", "fem"};
        row.published = 3.487;
        row.published_ratio = 0.707;
        row.tol = 0.01;
        fem_row(row, ReuleauxTriangle{2.0, options.arc_chords}, 2);
    }
    {
        Row row{"disk", "fem"};
        row.reference = disk_mu1(1.0);
        row.published = 3.39;
        row.published_ratio = 0.73;
        row.tol = 0.005;
        fem_row(row, RegularPolygon{256, 1.0}, 2);
    }
    {
        Row row{"segment", "analytic"};
        row.mu1 = segment_spectrum(2.0, BoundaryCondition::neumann, 2)[1];
        row.reference = seg;
        row.published = seg;
        row.published_ratio = 1.0;
        row.tol = 1e-12;
        row.detail = "pi^2/4";
        emit(row);
    }
    return r;
}

// ---------------------------------------------------------------- rhombus-sweep

ExperimentReport cmd_rhombus_sweep(const std::vector<double>& theta_degrees, int refinements)
{
    if (theta_degrees.empty() || refinements < 0) {
        throw std::invalid_argument("rhombus-sweep: need a theta list and refinements >= 0");
    }
    for (double t : theta_degrees) {
        if (!(t > 2.0 && t <= 45.0)) {
            throw std::invalid_argument("rhombus-sweep: theta must lie in (2, 45] degrees");
        }
    }
    ExperimentReport r;
    r.command = "rhombus-sweep";
    r.columns = {"theta_deg",  "mu1",          "mu1_error",  "normalized", "band_low",
                 "band_high",  "tau1_long",    "tau1_long_error", "tau1_lower_bound",
                 "tau1_short", "tau1_short_error", "tau1_cone", "tau1_cone_error"};
    const double j01 = bessel_j_zero(0.0, 1);
    const double j2 = j01 * j01;
    const double diam = 2.0;

    struct Sample {
        double theta;
        RichardsonEstimate full, long_half, short_half, cone;
    };
    std::vector<Sample> samples;
    for (double t : theta_degrees) {
        const double th = deg(t);
        Sample s{t, {}, {}, {}, {}};
        s.full = mu_k(Rhombus{diam, th}, 1, refinements);
        s.long_half = mu_k(HalfRhombus{diam, th, RhombusCut::long_diagonal, Marker::dirichlet}, 1,
                           refinements);
        s.short_half = mu_k(HalfRhombus{diam, th, RhombusCut::short_diagonal, Marker::dirichlet},
                            1, refinements);
        // Half of the flat cone: a sector of radius D/2 and half-angle theta,
        // Dirichlet on the arc.
        s.cone = mu_k(Sector{0.5 * diam, 2.0 * th, 32}, 1, std::max(0, refinements - 2),
                      DirichletSelector::on_circle({0.0, 0.0}, 0.5 * diam));
        samples.push_back(s);
    }

    Series mu_series{"mu_1 D^2/4", {}, {}}, low{"cos^2(theta) j^2", {}, {}}, high{"j^2", {}, {}};
    Series tau_series{"tau_1 (long half)", {}, {}}, bound_series{"pi^2/(4M^2)", {}, {}};
    for (const Sample& s : samples) {
        const double th = deg(s.theta);
        const double normalized = s.full.value * diam * diam / 4.0;
        const double eps = s.full.error_estimate * diam * diam / 4.0;
        const double lo = std::cos(th) * std::cos(th) * j2;
        const double m = 0.5 * diam * std::tan(th);
        const double tau_bound = pi * pi / (4.0 * m * m);
        r.rows.push_back({s.theta, s.full.value, s.full.error_estimate, normalized, lo, j2,
                          s.long_half.value, s.long_half.error_estimate, tau_bound,
                          s.short_half.value, s.short_half.error_estimate, s.cone.value,
                          s.cone.error_estimate});
        const std::string tag = fmt_deg(s.theta);

        expect_ge(r, "squeeze_low." + tag, "cli_experiments.rhombus_squeeze", normalized + eps, lo);
        expect_le(r, "squeeze_high." + tag, "cli_experiments.rhombus_squeeze", normalized - eps, j2);
        expect_ge(r, "tau1_half_rhombus_lower." + tag, "fem.lemma_half_rhombus",
                  s.long_half.value + s.long_half.error_estimate, 0.995 * tau_bound);
        expect_near(r, "short_half_nodal." + tag, "fem.nodal_half", s.short_half.value,
                    s.full.value, 0.0, s.full.error_estimate + s.short_half.error_estimate + 1e-9);
        const double cone_scale = 4.0 / (diam * diam);
        expect_ge(r, "cone_squeeze_low." + tag, "fem.cone_squeeze",
                  s.cone.value + s.cone.error_estimate, 0.99 * lo * cone_scale);
        expect_le(r, "cone_squeeze_high." + tag, "fem.cone_squeeze",
                  s.cone.value - s.cone.error_estimate, 1.01 * j2 * cone_scale);
        if (s.theta == 45.0) {
            expect_near(r, "square_cross_check", "cli_experiments.rhombus_squeeze", s.full.value,
                        pi * pi / 2.0, 0.002, s.full.error_estimate);
        }
        mu_series.x.push_back(s.theta);
        mu_series.y.push_back(normalized);
        low.x.push_back(s.theta);
        low.y.push_back(lo);
        high.x.push_back(s.theta);
        high.y.push_back(j2);
        tau_series.x.push_back(s.theta);
        tau_series.y.push_back(s.long_half.value);
        bound_series.x.push_back(s.theta);
        bound_series.y.push_back(tau_bound);
    }

    // Trends along decreasing theta.
    std::vector<const Sample*> order;
    for (const Sample& s : samples) {
        order.push_back(&s);
    }
    std::sort(order.begin(), order.end(),
              [](const Sample* a, const Sample* b) { return a->theta > b->theta; });
    for (std::size_t i = 1; i < order.size(); ++i) {
        const Sample& a = *order[i - 1];
        const Sample& b = *order[i];
        if (a.theta == b.theta) {
            continue;
        }
        const std::string tag = fmt_deg(a.theta) + "_to_" + fmt_deg(b.theta);
        expect_ge(r, "monotone_toward_j2." + tag, "cli_experiments.rhombus_squeeze",
                  b.full.value - a.full.value + a.full.error_estimate + b.full.error_estimate,
                  0.0);
        const double envelope = std::pow(std::sin(deg(a.theta)) / std::sin(deg(b.theta)), 2);
        expect_ge(r, "antisymmetric_divergence." + tag, "fem.lemma_half_rhombus",
                  b.long_half.value / a.long_half.value, 0.8 * envelope);
    }
    r.plots.push_back({"rhombus_sweep", "Normalised mu_1 of rhombi", "theta (deg)", "mu_1 D^2/4",
                       {mu_series, low, high}});
    r.plots.push_back({"rhombus_sweep_tau", "Mixed eigenvalue of the long half", "theta (deg)",
                       "tau_1", {tau_series, bound_series}});
    return r;
}

// ---------------------------------------------------------------- ratio-scan

ExperimentReport cmd_ratio_scan(const RatioScanOptions& o)
{
    if (o.n_pairs < 1 || o.n_pairs > 1000 || o.refinements < 0) {
        throw std::invalid_argument("ratio-scan: need 1 <= n_pairs <= 1000 and refinements >= 0");
    }
    ExperimentReport r;
    r.command = "ratio-scan";
    r.columns = {"pair",        "seed",       "family",      "status",       "inner_vertices",
                 "outer_vertices", "inner_area", "outer_area", "inner_diameter", "outer_diameter",
                 "mu1_inner",   "mu1_inner_error", "mu1_outer", "mu1_outer_error", "ratio",
                 "ratio_error"};

    struct Result {
        std::string family;
        std::string status = "ok";
        InclusionPair pair;
        RichardsonEstimate inner, outer;
    };
    std::vector<Result> results(o.n_pairs);

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < o.n_pairs; ++i) {
        Result& res = results[i];
        const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
        const bool chord = o.family == PairFamily::chord ||
                           (o.family == PairFamily::mixed && i % 2 == 1);
        res.family = chord ? "chord" : "uniform";
        try {
            res.pair = chord ? chord_inclusion_pair(seed, o.n_outer, o.chord_points, o.chord_width)
                             : inclusion_pair(seed, o.n_outer, o.n_inner);
            if (o.identical) {
                res.pair.inner = res.pair.outer;
            }
            res.outer = mu_k(ConvexHullPolygon{res.pair.outer}, 1, o.refinements);
            res.inner = o.identical ? res.outer
                                    : mu_k(ConvexHullPolygon{res.pair.inner}, 1, o.refinements);
        } catch (const std::exception& ex) {
            res.status = std::string("skipped: ") + ex.what();
        }
    }

    const double alpha = alpha1_sharp(2);
    double min_ratio = std::numeric_limits<double>::infinity();
    double min_ratio_plus_err = std::numeric_limits<double>::infinity();
    double max_identity_gap = 0.0;
    double min_pw = std::numeric_limits<double>::infinity();
    double max_diam_excess = -std::numeric_limits<double>::infinity();
    long long min_seed = -1, below_one = 0, skipped = 0, evaluated = 0;
    Series sorted{"ratio", {}, {}};
    for (int i = 0; i < o.n_pairs; ++i) {
        const Result& res = results[i];
        const long long seed = static_cast<long long>(o.seed) + i;
        if (res.status != "ok") {
            ++skipped;
            r.rows.push_back({static_cast<long long>(i), seed, res.family, res.status, 0LL, 0LL,
                              nan, nan, nan, nan, nan, nan, nan, nan, nan, nan});
            continue;
        }
        ++evaluated;
        const double ratio = res.inner.value / res.outer.value;
        const double ratio_err = ratio * (res.inner.error_estimate / res.inner.value +
                                          res.outer.error_estimate / res.outer.value);
        const double d_in = diameter(res.pair.inner), d_out = diameter(res.pair.outer);
        r.rows.push_back({static_cast<long long>(i), seed, res.family, res.status,
                          static_cast<long long>(res.pair.inner.size()),
                          static_cast<long long>(res.pair.outer.size()), area(res.pair.inner),
                          area(res.pair.outer), d_in, d_out, res.inner.value,
                          res.inner.error_estimate, res.outer.value, res.outer.error_estimate, ratio,
                          ratio_err});
        if (ratio < min_ratio) {
            min_ratio = ratio;
            min_seed = seed;
        }
        min_ratio_plus_err = std::min(min_ratio_plus_err, ratio + ratio_err);
        below_one += ratio + ratio_err < 1.0 ? 1 : 0;
        max_identity_gap = std::max(max_identity_gap, std::abs(ratio - 1.0));
        min_pw = std::min({min_pw,
                           (res.inner.value + res.inner.error_estimate) * d_in * d_in / (pi * pi),
                           (res.outer.value + res.outer.error_estimate) * d_out * d_out / (pi * pi)});
        max_diam_excess = std::max(max_diam_excess, d_in - d_out);
        sorted.y.push_back(ratio);
    }
    std::sort(sorted.y.begin(), sorted.y.end());
    for (std::size_t i = 0; i < sorted.y.size(); ++i) {
        sorted.x.push_back(static_cast<double>(i));
    }

    r.metadata["evaluated_pairs"] = std::to_string(evaluated);
    r.metadata["skipped_pairs"] = std::to_string(skipped);
    r.metadata["min_ratio"] = format_number(min_ratio);
    r.metadata["min_ratio_seed"] = std::to_string(min_seed);
    r.metadata["pairs_below_one"] = std::to_string(below_one);

    expect_ge(r, "pairs_evaluated", "cli_experiments.ratio_scan", static_cast<double>(evaluated),
              1.0, std::to_string(skipped) + " skipped");
    expect_ge(r, "ratio_above_alpha1_sharp", "constants.alpha1_sharp_bound", min_ratio_plus_err,
              0.995 * alpha,
              "min ratio " + format_number(min_ratio) + " at seed " + std::to_string(min_seed));
    if (o.identical) {
        expect_le(r, "identical_pair_ratio_one", "cli_experiments.ratio_scan", max_identity_gap,
                  1e-12);
    } else {
        expect_lt(r, "monotonicity_failure_witnessed", "cli_experiments.ratio_scan",
                  min_ratio_plus_err, 1.0,
                  std::to_string(below_one) + " pairs with ratio + error below 1");
    }
    expect_ge(r, "payne_weinberger_all_domains", "fem.payne_weinberger", min_pw, 0.995,
              "min (mu_1 + error) D^2 / pi^2");
    expect_le(r, "inner_diameter_le_outer", "geometry.inclusion_diameter", max_diam_excess, 1e-12);
    r.plots.push_back({"ratio_scan", "Sorted mu_1 ratios", "rank", "mu_1(inner)/mu_1(outer)",
                       {sorted, {"alpha_{1,2}", {0.0, std::max(1.0, sorted.x.empty() ? 1.0 : sorted.x.back())},
                                 {alpha, alpha}}}});
    return r;
}

// ---------------------------------------------------------------- weyl

ExperimentReport cmd_weyl(const std::vector<long long>& k_list, const std::vector<double>& rect1,
                          const std::vector<double>& rect2)
{
    if (rect1.size() != 2 || rect2.size() != 2) {
        throw std::invalid_argument("weyl: rectangles need exactly two sides");
    }
    if (rect1[0] > rect2[0] || rect1[1] > rect2[1]) {
        throw std::invalid_argument("weyl: rect1 must fit inside rect2 side by side");
    }
    for (long long k : k_list) {
        if (k < 1 || k > 10000000) {
            throw std::invalid_argument("weyl: k must lie in [1, 10^7]");
        }
    }
    ExperimentReport r;
    r.command = "weyl";
    r.columns = {"k", "mu_k_rect1", "mu_k_rect2", "ratio", "target", "rel_deviation", "tolerance"};
    const double target = weyl_ratio(rect1[0] * rect1[1], rect2[0] * rect2[1], 2);
    Series ratio_series{"mu_k ratio", {}, {}}, target_series{"area ratio", {}, {}};
    std::vector<double> devs;
    for (long long k : k_list) {
        const double m1 = rectangle_mu_k(rect1[0], rect1[1], k);
        const double m2 = rectangle_mu_k(rect2[0], rect2[1], k);
        const double ratio = m1 / m2;
        const double dev = rel_dev(ratio, target);
        // Envelope shrinking with k: 5% below 10^4, 2% below 10^5, 1% beyond.
        const double tol = k < 10000 ? 0.05 : (k < 100000 ? 0.02 : 0.01);
        r.rows.push_back({k, m1, m2, ratio, target, dev, tol});
        expect_le(r, "ratio_envelope.k" + std::to_string(k), "analytic_spectra.weyl_trend", dev,
                  tol, "ratio " + format_number(ratio) + ", target " + format_number(target));
        devs.push_back(dev);
        ratio_series.x.push_back(std::log10(static_cast<double>(k)));
        ratio_series.y.push_back(ratio);
        target_series.x.push_back(std::log10(static_cast<double>(k)));
        target_series.y.push_back(target);
    }
    for (std::size_t i = 1; i < devs.size(); ++i) {
        if (k_list[i] <= k_list[i - 1]) {
            continue;
        }
        expect_le(r, "deviation_decreasing.k" + std::to_string(k_list[i]),
                  "analytic_spectra.weyl_trend", devs[i], devs[i - 1]);
    }
    r.plots.push_back({"weyl", "Eigenvalue ratio of nested rectangles", "log10 k", "ratio",
                       {ratio_series, target_series}});
    return r;
}

// ---------------------------------------------------------------- dimension-demo

ExperimentReport cmd_dimension_demo(int k, const std::vector<double>& ell_list,
                                    const std::vector<double>& inner,
                                    const std::vector<double>& outer)
{
    if (k < 1 || ell_list.empty()) {
        throw std::invalid_argument("dimension-demo: need k >= 1 and a non-empty ell list");
    }
    if (inner.size() != outer.size() || inner.empty()) {
        throw std::invalid_argument("dimension-demo: boxes need the same number of sides");
    }
    for (std::size_t i = 0; i < inner.size(); ++i) {
        if (!(inner[i] > 0.0) || inner[i] > outer[i]) {
            throw std::invalid_argument("dimension-demo: inner box must fit inside outer box");
        }
    }
    for (double ell : ell_list) {
        if (!(ell > 0.0)) {
            throw std::invalid_argument("dimension-demo: ell must be positive");
        }
    }
    ExperimentReport r;
    r.command = "dimension-demo";
    r.columns = {"ell",          "threshold",    "predicted_preserved", "mu_k_inner_product",
                 "mu_k_outer_product", "product_ratio", "base_ratio",  "preserved"};
    const auto n = static_cast<std::size_t>(k) + 1;
    const Spectrum s1 = box_spectrum(inner, BoundaryCondition::neumann, n);
    const Spectrum s2 = box_spectrum(outer, BoundaryCondition::neumann, n);
    const double base_ratio = s1[k] / s2[k];
    const double threshold = pi / std::sqrt(std::max(s1[k], s2[k]));
    const double shared = pi * k / std::sqrt(std::min(s1[1], s2[1]));
    r.metadata["threshold"] = format_number(threshold);

    std::vector<double> ells = ell_list;
    ells.push_back(threshold * (1.0 - 1e-6));
    ells.push_back(threshold * (1.0 + 1e-6));
    for (double ell : ells) {
        const double p1 = product_spectrum(s1, ell, n)[k];
        const double p2 = product_spectrum(s2, ell, n)[k];
        const double ratio = p1 / p2;
        const bool predicted = ell <= threshold;
        const double gap = rel_dev(ratio, base_ratio);
        const bool preserved = gap <= 1e-12;
        r.rows.push_back({ell, threshold, std::string(predicted ? "yes" : "no"), p1, p2, ratio,
                          base_ratio, std::string(preserved ? "yes" : "no")});
        const std::string tag = "ell" + format_number(ell);
        if (predicted) {
            expect_le(r, "ratio_preserved." + tag, "analytic_spectra.product_threshold", gap, 1e-12);
        } else {
            expect_ge(r, "ratio_changed." + tag, "analytic_spectra.product_threshold", gap, 1e-12);
        }
        if (ell >= shared) {
            expect_near(r, "shared_factor_ratio_one." + tag, "analytic_spectra.product_threshold",
                        ratio, 1.0, 1e-12);
        }
    }
    return r;
}

// ---------------------------------------------------------------- counterexamples

ExperimentReport cmd_counterexamples()
{
    ExperimentReport r;
    r.command = "counterexamples";
    r.columns = {"item", "quantity", "value", "expected", "note"};
    const std::string inv = "analytic_spectra.counterexamples";

    // (a) The diagonal of a square of side 1/sqrt(2) inside the square.
    const double side = 1.0 / std::sqrt(2.0);
    const double mu_seg = segment_spectrum(1.0, BoundaryCondition::neumann, 2)[1];
    const double mu_sq = box_spectrum({side, side}, BoundaryCondition::neumann, 2)[1];
    r.rows.push_back({std::string("a"), std::string("mu_1(segment of length 1)"), mu_seg, pi * pi,
                      std::string("diagonal of the square")});
    r.rows.push_back({std::string("a"), std::string("mu_1(square of side 1/sqrt2)"), mu_sq,
                      2.0 * pi * pi, std::string("contains the segment")});
    r.rows.push_back({std::string("a"), std::string("ratio"), mu_seg / mu_sq, 0.5,
                      std::string("inner below outer: monotonicity fails")});
    expect_near(r, "segment_in_square_ratio", inv, mu_seg / mu_sq, 0.5, 0.0, 1e-12);

    // (b) j^2 disjoint disks of radius 1/j.
    for (int j : {2, 3}) {
        const int copies = j * j;
        std::vector<Spectrum> parts(copies, disk_neumann_spectrum(1.0 / j, 3));
        const Spectrum u = disjoint_union_spectrum(parts, static_cast<std::size_t>(copies) + 1);
        const double zero = u[copies - 1];
        const double first = u[copies];
        const std::string tag = "j" + std::to_string(j);
        r.rows.push_back({std::string("b"),
                          "mu_" + std::to_string(copies - 1) + "(" + std::to_string(copies) +
                              " disks of radius 1/" + std::to_string(j) + ")",
                          zero, 0.0, std::string("one zero mode per component")});
        r.rows.push_back({std::string("b"),
                          "mu_" + std::to_string(copies) + "(" + std::to_string(copies) +
                              " disks of radius 1/" + std::to_string(j) + ")",
                          first, disk_mu1(1.0 / j), std::string("first nonzero value")});
        expect_le(r, "disjoint_disks_zero." + tag, inv, std::abs(zero), 0.0);
        expect_near(r, "disjoint_disks_first_nonzero." + tag, inv, first, disk_mu1(1.0 / j), 0.0,
                    1e-12 * disk_mu1(1.0 / j));
        expect_ge(r, "disjoint_disks_positive." + tag, inv, first, std::numeric_limits<double>::min());
    }
    return r;
}

// ---------------------------------------------------------------- fem-properties

ExperimentReport cmd_fem_properties(int k_max, int refinements)
{
    if (k_max < 1 || k_max > 19 || refinements < 0) {
        throw std::invalid_argument("fem-properties: need 1 <= k_max <= 19 and refinements >= 0");
    }
    ExperimentReport r;
    r.command = "fem-properties";
    r.columns = {"domain", "k", "mu_k", "mu_k_error", "lambda_k", "lambda_k_error",
                 "mu_k_finest", "lambda_k_finest", "payne_weinberger", "kroger"};
    struct Case {
        std::string name;
        DomainSpec spec;
        int refinements;
    };
    // The 64-gon's fan starts with 64 triangles, so it gets one level less.
    const std::vector<Case> cases{
        {"square", Square{std::sqrt(2.0)}, refinements},
        {"rhombus_10deg", Rhombus{2.0, deg(10.0)}, refinements},
        {"equilateral_triangle", EquilateralTriangle{2.0}, refinements},
        {"regular_64gon", RegularPolygon{64, 1.0}, std::max(0, refinements - 1)},
    };
    for (const Case& c : cases) {
        const double diam = diameter(build(c.spec));
        const auto neu = extrapolated_spectrum(c.spec, k_max + 1, c.refinements,
                                               DirichletSelector::none());
        const auto dir = extrapolated_spectrum(c.spec, k_max, c.refinements,
                                               DirichletSelector::all());
        double bracket = -std::numeric_limits<double>::infinity();
        bool monotone = true;
        double kroger_excess = -std::numeric_limits<double>::infinity();
        for (int k = 1; k <= k_max; ++k) {
            const RichardsonEstimate& m = neu[k];
            const RichardsonEstimate& l = dir[k - 1];
            const double kb = kroger_upper(k, 2, diam);
            r.rows.push_back({c.name, static_cast<long long>(k), m.value, m.error_estimate,
                              l.value, l.error_estimate, m.levels[2], l.levels[2],
                              k == 1 ? payne_weinberger_lower(diam) : nan, kb});
            for (int lev = 0; lev < 3; ++lev) {
                bracket = std::max(bracket, m.levels[lev] - l.levels[lev]);
            }
            monotone = monotone && m.monotone && l.monotone;
            kroger_excess = std::max(kroger_excess, (m.value - m.error_estimate) / (1.005 * kb));
        }
        expect_le(r, c.name + ".bracketing", "fem.bracketing", bracket, 0.0,
                  "largest mu_k - lambda_k on a shared mesh");
        r.add_verdict(c.name + ".refinement_monotone", "fem.variational_upper_bias", monotone,
                      monotone ? 1.0 : 0.0, 1.0, monotone ? 0.0 : -1.0,
                      "all levels non-increasing for k <= " + std::to_string(k_max));
        expect_ge(r, c.name + ".payne_weinberger", "fem.payne_weinberger",
                  neu[1].value + neu[1].error_estimate, 0.995 * payne_weinberger_lower(diam));
        expect_le(r, c.name + ".kroger", "fem.kroger", kroger_excess, 1.0,
                  "largest (mu_k - error) / (1.005 kroger_upper)");
        expect_le(r, c.name + ".neumann_zero_mode", "fem.eig_result", std::abs(neu[0].levels[2]),
                  1e-8 * neu[1].levels[2]);
    }
    return r;
}

// ---------------------------------------------------------------- eigs

ExperimentReport cmd_eigs(const std::string& mesh_path, int n)
{
    std::ifstream is(mesh_path);
    if (!is) {
        throw std::invalid_argument("cannot open mesh file " + mesh_path);
    }
    const Mesh mesh = read_mesh(is);
    const EigenSolverOptions options;
    const EigResult res = solve_mesh(mesh, n, options);
    ExperimentReport r;
    r.command = "eigs";
    r.columns = {"position", "k", "value", "residual"};
    const bool neumann = mesh.dirichlet_edge_count() == 0;
    double worst_residual = 0.0;
    bool ascending = true;
    for (int i = 0; i < n; ++i) {
        const int k = neumann ? i : i + 1;
        r.rows.push_back({static_cast<long long>(i), static_cast<long long>(k), res.eigenvalues[i],
                          res.residuals[i]});
        r.records.push_back(eig_record_json(mesh_path, k, i, res));
        worst_residual = std::max(worst_residual, res.residuals[i]);
        if (i > 0 && res.eigenvalues[i] < res.eigenvalues[i - 1]) {
            ascending = false;
        }
    }
    r.metadata["bc"] = res.bc_summary;
    r.metadata["dofs"] = std::to_string(res.dof_count);
    r.metadata["h"] = format_number(res.h);
    expect_le(r, "residuals", "fem.eig_result", worst_residual, options.tol);
    r.add_verdict("ascending", "fem.eig_result", ascending, ascending ? 1.0 : 0.0, 1.0,
                  ascending ? 0.0 : -1.0);
    if (neumann && n >= 2) {
        expect_le(r, "neumann_zero_mode", "fem.eig_result", std::abs(res.eigenvalues[0]),
                  1e-8 * res.eigenvalues[1]);
    }
    return r;
}

// ---------------------------------------------------------------- dispatch

ExperimentReport run_experiment(const ExperimentConfig& cfg)
{
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport r;
    const std::string& c = cfg.command;
    if (c == "constants") {
        r = cmd_constants(static_cast<int>(cfg.integer("k_max")),
                          static_cast<int>(cfg.integer("d_max")));
    } else if (c == "table-mu1") {
        TableMu1Options o;
        o.refine_offset = static_cast<int>(cfg.integer("refine_offset"));
        o.sector_angles = cfg.reals("sector_angles");
        o.arc_chords = static_cast<int>(cfg.integer("arc_chords"));
        r = cmd_table_mu1(o);
    } else if (c == "rhombus-sweep") {
        r = cmd_rhombus_sweep(cfg.reals("theta_list"), static_cast<int>(cfg.integer("refinements")));
    } else if (c == "ratio-scan") {
        RatioScanOptions o;
        o.n_pairs = static_cast<int>(cfg.integer("n_pairs"));
        o.seed = cfg.seed;
        o.refinements = static_cast<int>(cfg.integer("refinements"));
        o.n_outer = static_cast<int>(cfg.integer("n_outer"));
        o.n_inner = static_cast<int>(cfg.integer("n_inner"));
        o.chord_points = static_cast<int>(cfg.integer("chord_points"));
        o.chord_width = cfg.real("chord_width");
        const std::string& f = cfg.text("family");
        o.family = f == "uniform" ? PairFamily::uniform
                                  : (f == "chord" ? PairFamily::chord : PairFamily::mixed);
        o.identical = cfg.integer("identical") != 0;
        r = cmd_ratio_scan(o);
    } else if (c == "weyl") {
        r = cmd_weyl(cfg.integers("k_list"), cfg.box("rect1"), cfg.box("rect2"));
    } else if (c == "dimension-demo") {
        r = cmd_dimension_demo(static_cast<int>(cfg.integer("k")), cfg.reals("ell_list"),
                               cfg.box("inner"), cfg.box("outer"));
    } else if (c == "counterexamples") {
        r = cmd_counterexamples();
    } else if (c == "fem-properties") {
        r = cmd_fem_properties(static_cast<int>(cfg.integer("k_max")),
                               static_cast<int>(cfg.integer("refinements")));
    } else if (c == "eigs") {
        r = cmd_eigs(cfg.text("mesh"), static_cast<int>(cfg.integer("n")));
    } else {
        throw std::invalid_argument("'" + c + "' is not an experiment command");
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.metadata["version"] = kVersion;
    r.metadata["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
                          std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION);
    r.metadata["boost"] = BOOST_LIB_VERSION;
    r.metadata["threads"] = std::to_string(omp_get_max_threads());
    r.metadata["wall_time_s"] = format_number(seconds);
    if (cfg.params.count("seed")) {
        r.metadata["seed"] = std::to_string(cfg.seed);
    }
    for (const auto& [key, value] : cfg.params) {
        r.metadata["param." + key] = value;
    }
    return r;
}

}  // namespace speclab
