// Acceptance run: one PASS/FAIL line per criterion. Tolerances are fixed here.
// Usage: acceptance [path-to-speclab-cli]
// With a CLI path, the determinism criterion runs the tool twice and compares
// the written CSV files; without one it compares in-process reports.

#include "speclab/constants.hpp"
#include "speclab/experiments.hpp"
#include "speclab/specfun.hpp"
#include "speclab/spectrum.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

using namespace speclab;

namespace {

const double pi = boost::math::constants::pi<double>();

// Pinned tolerances.
constexpr double kExact = 1e-12;
constexpr double kSquareTol = 0.002;
constexpr double kTriangleTol = 0.005;
constexpr double kDiskTol = 0.005;
constexpr double kReuleauxTol = 0.01;
constexpr double kJ01SquaredLow = 5.781;
constexpr double kJ01SquaredHigh = 5.785;
constexpr double kJ01SquaredPublished = 5.783;
constexpr double kHalfRhombusFactor = 0.995;
constexpr double kRatioFactor = 0.995;
constexpr double kWeylTolK1e3 = 0.05;
constexpr double kWeylTolK1e5 = 0.02;
constexpr double kConstantsSeconds = 1.0;
constexpr double kBesselSeconds = 5.0;
constexpr double kTableSeconds = 600.0;
constexpr double kSweepSeconds = 900.0;
constexpr double kScanSeconds = 1800.0;
constexpr double kWeylSeconds = 60.0;
constexpr double kCounterSeconds = 1.0;

struct Outcome {
    bool passed = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            passed = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double as_double(const Cell& c) { return std::get<double>(c); }

const std::vector<Cell>* find_row(const ExperimentReport& r, const std::string& key)
{
    for (const auto& row : r.rows) {
        if (std::holds_alternative<std::string>(row[0]) && std::get<std::string>(row[0]) == key) {
            return &row;
        }
    }
    return nullptr;
}

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& ex) {
        o.passed = false;
        o.detail = std::string("exception: ") + ex.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0.0) {
        o.require(s < limit_s, "runtime " + fmt(s) + " s over " + fmt(limit_s) + " s");
    }
    failures += o.passed ? 0 : 1;
    std::printf("%s criterion %d  %-34s %8.2f s  %s\n", o.passed ? "PASS" : "FAIL", id, title.c_str(), s,
                o.detail.c_str());
    std::fflush(stdout);
}

Outcome constants_criterion()
{
    Outcome o;
    const double a2 = alpha1_sharp(2);
    o.require(a2 >= 0.4264 && a2 <= 0.4270, "alpha1_sharp(2) = " + fmt(a2));
    o.require(std::abs(alpha1_sharp(3) - 0.25) <= kExact, "alpha1_sharp(3) = " + fmt(alpha1_sharp(3)));
    for (int k = 1; k <= 20; ++k) {
        const double expect = double(k * k) / double((k + 1) * (k + 1));
        o.require(std::abs(c_upper(k, 3) - expect) <= kExact, "c_upper(" + std::to_string(k) + ",3)");
    }
    o.detail = o.passed ? "alpha1_sharp(2)=" + fmt(a2) : o.detail;
    return o;
}

Outcome bessel_criterion()
{
    Outcome o;
    for (int k = 1; k <= 20; ++k) {
        o.require(rel(bessel_j_zero(0.5, k), k * pi) <= kExact, "j_{1/2," + std::to_string(k) + "}");
    }
    const double j01 = bessel_j_zero(0.0, 1);
    o.require(j01 * j01 >= kJ01SquaredLow && j01 * j01 <= kJ01SquaredHigh, "j01^2 = " + fmt(j01 * j01));
    int checked = 0;
    for (int step = 0; step <= 20; ++step) {
        const double nu = 0.5 * step;
        const double j1 = bessel_j_zero(nu, 1);
        o.require(j1 * j1 <= 2 * (nu + 1) * (nu + 3), "upper bound nu=" + fmt(nu));
        for (int k = 1; k <= 10; ++k) {
            const double j = bessel_j_zero(nu, k);
            const double j_next_order = bessel_j_zero(nu + 1, k);
            const double j_next_zero = bessel_j_zero(nu, k + 1);
            if (nu > 0.5) {
                o.require(j > nu + k * pi - 0.5, "lower bound nu=" + fmt(nu) + " k=" + std::to_string(k));
            }
            o.require(j < j_next_order && j_next_order < j_next_zero,
                      "interlacing nu=" + fmt(nu) + " k=" + std::to_string(k));
            if (step > 0) {
                o.require(bessel_j_zero(nu - 0.5, k) < j, "order monotone nu=" + fmt(nu));
            }
            ++checked;
        }
    }
    if (o.passed) {
        o.detail = "j01^2=" + fmt(j01 * j01) + ", " + std::to_string(checked) + " grid points";
    }
    return o;
}

Outcome table_criterion()
{
    Outcome o;
    const ExperimentReport r = cmd_table_mu1();
    const double seg = pi * pi / 4;
    struct Expect {
        const char* row;
        double value;
        double ratio;
        double tol;
    };
    const Expect expects[] = {
        {"square", pi * pi / 2, 0.5, kSquareTol},
        {"equilateral_triangle", 4 * pi * pi / 9, 0.5625, kTriangleTol},
        {"disk", 3.39, 0.73, kDiskTol},
        {"reuleaux_triangle", 3.487, 0.707, kReuleauxTol},
    };
    std::string summary;
    for (const auto& e : expects) {
        const auto* row = find_row(r, e.row);
        if (!row) {
            o.require(false, std::string("missing row ") + e.row);
            continue;
        }
        const double mu1 = as_double((*row)[2]);
        const double ratio = as_double((*row)[7]);
        o.require(rel(mu1, e.value) <= e.tol, std::string(e.row) + " mu1=" + fmt(mu1));
        o.require(rel(ratio, e.ratio) <= e.tol, std::string(e.row) + " ratio=" + fmt(ratio));
        o.require(std::abs(ratio - seg / mu1) <= kExact, std::string(e.row) + " ratio column");
        summary += std::string(e.row) + "=" + fmt(mu1) + " ";
    }
    const auto* segment = find_row(r, "segment");
    o.require(segment && as_double((*segment)[2]) == seg && as_double((*segment)[7]) == 1.0,
              "segment row not exact");
    if (o.passed) {
        o.detail = summary;
    }
    return o;
}

Outcome sweep_criterion()
{
    Outcome o;
    const std::vector<double> thetas{20, 10, 5};
    const ExperimentReport r = cmd_rhombus_sweep(thetas, 5);
    double previous = -INFINITY;
    std::string summary;
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        const auto& row = r.rows.at(i);
        const double theta = thetas[i] * pi / 180;
        o.require(as_double(row[0]) == thetas[i], "row order");
        const double normalized = as_double(row[3]);
        const double eps = as_double(row[2]);  // D^2/4 = 1
        const double low = std::cos(theta) * std::cos(theta) * kJ01SquaredPublished;
        const std::string tag = fmt(thetas[i]) + "deg";
        o.require(normalized + eps >= low && normalized - eps <= kJ01SquaredPublished,
                  "band " + tag + " normalized=" + fmt(normalized));
        o.require(normalized > previous, "not increasing at " + tag);
        previous = normalized;
        const double m = std::tan(theta);  // M = (D/2) tan(theta)
        const double tau = as_double(row[6]);
        o.require(tau >= kHalfRhombusFactor * pi * pi / (4 * m * m), "tau1 " + tag + " = " + fmt(tau));
        summary += tag + ": mu1=" + fmt(normalized) + " tau1=" + fmt(tau) + " ";
    }
    if (o.passed) {
        o.detail = summary;
    }
    return o;
}

ExperimentReport scan_report;

Outcome scan_criterion()
{
    Outcome o;
    scan_report = cmd_ratio_scan(RatioScanOptions{});
    const double bound = kRatioFactor * alpha1_sharp(2);
    double min_ratio = INFINITY;
    int ok = 0, below_one = 0;
    for (const auto& row : scan_report.rows) {
        if (std::get<std::string>(row[3]) != "ok") {
            continue;
        }
        ++ok;
        const double ratio = as_double(row[14]);
        min_ratio = std::min(min_ratio, ratio);
        below_one += ratio < 1.0 ? 1 : 0;
        o.require(ratio >= bound, "pair ratio " + fmt(ratio) + " below " + fmt(bound));
    }
    o.require(ok == 200, std::to_string(ok) + " of 200 pairs evaluated");
    o.require(below_one >= 1, "no pair with ratio < 1");
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("min ratio ") + fmt(min_ratio) + ", " +
                std::to_string(below_one) + " pairs below 1";
    return o;
}

Outcome weyl_criterion()
{
    Outcome o;
    const long long ks[] = {1000, 10000, 100000};
    const double target = 2.6;
    double dev[3];
    for (int i = 0; i < 3; ++i) {
        dev[i] = rel(rectangle_mu_k(1.0, 1.0, ks[i]) / rectangle_mu_k(2.0, 1.3, ks[i]), target);
    }
    o.require(dev[0] <= kWeylTolK1e3, "k=1e3 deviation " + fmt(dev[0]));
    o.require(dev[2] <= kWeylTolK1e5, "k=1e5 deviation " + fmt(dev[2]));
    o.require(dev[1] < dev[0], "deviation not decreasing from k=1e3 to 1e4");
    o.require(dev[2] < dev[1], "deviation not decreasing from k=1e4 to 1e5");
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("deviations ") + fmt(dev[0]) + ", " +
                fmt(dev[1]) + ", " + fmt(dev[2]);
    return o;
}

Outcome properties_criterion()
{
    Outcome o;
    const ExperimentReport r = cmd_fem_properties(5, 4);
    for (const auto& v : r.verdicts) {
        o.require(v.passed, v.name);
    }
    if (o.passed) {
        o.detail = std::to_string(r.verdicts.size()) + " checks";
    }
    return o;
}

Outcome counterexample_criterion()
{
    Outcome o;
    const double side = 1.0 / std::sqrt(2.0);
    const double ratio = segment_spectrum(1.0, BoundaryCondition::neumann, 2)[1] /
                         box_spectrum({side, side}, BoundaryCondition::neumann, 2)[1];
    o.require(std::abs(ratio - 0.5) <= kExact, "segment/square ratio " + fmt(ratio));
    for (int j : {2, 3}) {
        const int copies = j * j;
        std::vector<Spectrum> parts(copies, disk_neumann_spectrum(1.0 / j, 3));
        const Spectrum u = disjoint_union_spectrum(parts, static_cast<std::size_t>(copies) + 1);
        o.require(u[copies - 1] == 0.0, "mu_" + std::to_string(copies - 1) + " nonzero");
        o.require(u[copies] > 0.0, "mu_" + std::to_string(copies) + " zero");
    }
    o.require(cmd_counterexamples().all_passed(), "counterexamples command verdicts");
    if (o.passed) {
        o.detail = "ratio " + fmt(ratio);
    }
    return o;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

Outcome determinism_criterion(const std::string& cli)
{
    Outcome o;
    if (cli.empty()) {
        const std::string first = scan_report.rows.empty() ? to_csv(cmd_ratio_scan({})) : to_csv(scan_report);
        o.require(first == to_csv(cmd_ratio_scan({})), "in-process CSV differs");
        o.detail += (o.detail.empty() ? "" : "; ") + std::string("in-process comparison");
        return o;
    }
    const auto base = std::filesystem::temp_directory_path() / "speclab_acceptance";
    std::filesystem::remove_all(base);
    std::string csv[2];
    for (int run = 0; run < 2; ++run) {
        const auto dir = base / ("run" + std::to_string(run));
        const std::string cmd = "\"" + cli + "\" ratio-scan --seed 1 --out \"" + dir.string() + "\" > /dev/null";
        o.require(std::system(cmd.c_str()) == 0, "run " + std::to_string(run) + " exited nonzero");
        csv[run] = slurp(dir / "ratio-scan.csv");
    }
    o.require(!csv[0].empty() && csv[0] == csv[1], "CSV files differ");
    if (!scan_report.rows.empty()) {
        o.require(csv[0] == to_csv(scan_report), "CLI CSV differs from in-process report");
    }
    std::filesystem::remove_all(base);
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(csv[0].size()) + " identical bytes";
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    const std::string cli = argc > 1 ? argv[1] : "";
    criterion(1, "constants", kConstantsSeconds, constants_criterion);
    criterion(2, "bessel zeros", kBesselSeconds, bessel_criterion);
    criterion(3, "mu1 table", kTableSeconds, table_criterion);
    criterion(4, "rhombus sweep", kSweepSeconds, sweep_criterion);
    criterion(5, "ratio scan (200 pairs)", kScanSeconds, scan_criterion);
    criterion(6, "weyl ratio trend", kWeylSeconds, weyl_criterion);
    criterion(7, "fem property suites", 0.0, properties_criterion);
    criterion(8, "counterexamples", kCounterSeconds, counterexample_criterion);
    criterion(9, "determinism", 0.0, [&] { return determinism_criterion(cli); });
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
