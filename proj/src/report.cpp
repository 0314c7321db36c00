#include "speclab/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace speclab {

std::string format_number(double value)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", value);
    return buf;
}

std::string csv_escape(const std::string& field)
{
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

void ExperimentReport::add_verdict(std::string name, std::string invariant, bool passed,
                                   double measured, double bound, double slack, std::string detail)
{
    verdicts.push_back({std::move(name), std::move(invariant), passed, measured, bound, slack,
                        std::move(detail)});
}

bool ExperimentReport::all_passed() const
{
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

const Verdict* ExperimentReport::find_verdict(const std::string& name) const
{
    for (const auto& v : verdicts) {
        if (v.name == name) {
            return &v;
        }
    }
    return nullptr;
}

std::string to_csv(const ExperimentReport& report)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        os << (i ? "," : "") << csv_escape(report.columns[i]);
    }
    os << '\n';
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                os << ',';
            }
            std::visit(
                [&os](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        os << format_number(v);
                    } else if constexpr (std::is_same_v<T, long long>) {
                        os << v;
                    } else {
                        os << csv_escape(v);
                    }
                },
                row[i]);
        }
        os << '\n';
    }
    return os.str();
}

namespace {

nlohmann::json number_or_string(double v)
{
    if (std::isfinite(v)) {
        return v;
    }
    return format_number(v);
}

}  // namespace

std::string verdicts_json(const ExperimentReport& report)
{
    nlohmann::json doc;
    doc["command"] = report.command;
    doc["metadata"] = report.metadata;
    doc["all_passed"] = report.all_passed();
    auto& list = doc["verdicts"] = nlohmann::json::array();
    for (const auto& v : report.verdicts) {
        list.push_back({{"name", v.name},
                        {"invariant", v.invariant},
                        {"passed", v.passed},
                        {"measured", number_or_string(v.measured)},
                        {"bound", number_or_string(v.bound)},
                        {"slack", number_or_string(v.slack)},
                        {"detail", v.detail}});
    }
    return doc.dump(2) + "\n";
}

std::string to_svg(const Plot& plot)
{
    constexpr double width = 640, height = 420;
    constexpr double left = 70, right = 20, top = 40, bottom = 50;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const auto& s : plot.series) {
        for (double x : s.x) {
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
        }
        for (double y : s.y) {
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    if (!(x_max > x_min)) {
        x_min -= 1;
        x_max += 1;
    }
    if (!(y_max > y_min)) {
        y_min -= 1;
        y_max += 1;
    }
    const double pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;

    auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * (width - left - right); };
    auto py = [&](double y) { return height - bottom - (y - y_min) / (y_max - y_min) * (height - top - bottom); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << plot.title << "</text>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right
       << "\" y2=\"" << height - bottom << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
       << height - bottom << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x_min + (x_max - x_min) * i / 4.0;
        const double yv = y_min + (y_max - y_min) * i / 4.0;
        os << "<text x=\"" << px(xv) << "\" y=\"" << height - bottom + 16
           << "\" text-anchor=\"middle\">" << format_number(std::round(xv * 1e4) / 1e4) << "</text>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
           << format_number(std::round(yv * 1e4) / 1e4) << "</text>\n";
    }
    os << "<text x=\"" << width / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">"
       << plot.x_label << "</text>\n";
    os << "<text x=\"16\" y=\"" << height / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << height / 2 << ")\">" << plot.y_label << "</text>\n";

    for (std::size_t s = 0; s < plot.series.size(); ++s) {
        const auto& series = plot.series[s];
        const char* color = colors[s % 5];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series.x.size() && i < series.y.size(); ++i) {
            os << (i ? " " : "") << px(series.x[i]) << ',' << py(series.y[i]);
        }
        os << "\"/>\n";
        os << "<text x=\"" << width - right - 4 << "\" y=\"" << top + 14 * (s + 1)
           << "\" text-anchor=\"end\" fill=\"" << color << "\">" << series.label << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    auto write = [](const std::filesystem::path& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write " + path.string());
        }
        out << text;
    };
    write(dir / (report.command + ".csv"), to_csv(report));
    write(dir / (report.command + ".json"), verdicts_json(report));
    for (const auto& plot : report.plots) {
        write(dir / (plot.file_stem + ".svg"), to_svg(plot));
    }
    if (!report.records.empty()) {
        std::string lines;
        for (const auto& r : report.records) {
            lines += r + "\n";
        }
        write(dir / (report.command + ".jsonl"), lines);
    }
}

}  // namespace speclab
