#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace speclab {

/// Shortest round-trip-free rendering at 15 significant digits, '.' separator.
std::string format_number(double value);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_escape(const std::string& field);

using Cell = std::variant<double, long long, std::string>;

struct Verdict {
    std::string name;       // assertion identifier
    std::string invariant;  // owning module invariant it checks
    bool passed = false;
    double measured = 0.0;
    double bound = 0.0;
    double slack = 0.0;     // signed distance to failure; >= 0 when passed
    std::string detail;
};

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct Plot {
    std::string file_stem;
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
};

struct ExperimentReport {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::map<std::string, std::string> metadata;
    std::vector<Verdict> verdicts;
    std::vector<Plot> plots;
    std::vector<std::string> records;  // JSON lines, written as <command>.jsonl

    void add_verdict(std::string name, std::string invariant, bool passed, double measured,
                     double bound, double slack, std::string detail = {});
    bool all_passed() const;
    /// Looks up the first verdict with this name; nullptr when absent.
    const Verdict* find_verdict(const std::string& name) const;
};

std::string to_csv(const ExperimentReport& report);

/// Verdicts and metadata as a JSON document.
std::string verdicts_json(const ExperimentReport& report);

std::string to_svg(const Plot& plot);

/// Writes <command>.csv, <command>.json, one SVG per plot and, when there are
/// records, <command>.jsonl into dir.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace speclab
