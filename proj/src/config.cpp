#include "speclab/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace speclab {
namespace {

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) {
        out.push_back(item);
    }
    if (!s.empty() && s.back() == sep) {
        out.emplace_back();
    }
    return out;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_real(const std::string& s, const std::string& what)
{
    const std::string t = trim(s);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
        throw std::invalid_argument(what + ": '" + s + "' is not a finite number");
    }
    return v;
}

long long to_integer(const std::string& s, const std::string& what)
{
    const std::string t = trim(s);
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
        throw std::invalid_argument(what + ": '" + s + "' is not an integer");
    }
    return v;
}

std::vector<double> to_reals(const std::string& s, const std::string& what)
{
    std::vector<double> out;
    for (const auto& item : split(s, ',')) {
        out.push_back(to_real(item, what));
    }
    if (out.empty()) {
        throw std::invalid_argument(what + ": empty list");
    }
    return out;
}

const ParamSpec* find_param(const CommandSpec& cmd, const std::string& key)
{
    for (const auto& p : cmd.params) {
        if (p.key == key) {
            return &p;
        }
    }
    return nullptr;
}

void check_range(const ParamSpec& p, double v, const std::string& what)
{
    const bool low_ok = p.min_exclusive ? v > p.min : v >= p.min;
    if (!low_ok || v > p.max) {
        std::ostringstream os;
        os << what << ": " << v << " outside " << (p.min_exclusive ? "(" : "[") << p.min << ", "
           << p.max << "]";
        throw std::invalid_argument(os.str());
    }
}

void check_value(const ParamSpec& p, const std::string& value)
{
    const std::string what = "parameter '" + p.key + "'";
    switch (p.kind) {
    case ParamKind::integer:
        check_range(p, static_cast<double>(to_integer(value, what)), what);
        break;
    case ParamKind::real:
        check_range(p, to_real(value, what), what);
        break;
    case ParamKind::integer_list:
        for (const auto& item : split(value, ',')) {
            check_range(p, static_cast<double>(to_integer(item, what)), what);
        }
        if (split(value, ',').empty()) {
            throw std::invalid_argument(what + ": empty list");
        }
        break;
    case ParamKind::real_list:
        for (double v : to_reals(value, what)) {
            check_range(p, v, what);
        }
        break;
    case ParamKind::text:
        if (value.empty()) {
            throw std::invalid_argument(what + ": empty value");
        }
        break;
    case ParamKind::choice:
        if (std::find(p.choices.begin(), p.choices.end(), value) == p.choices.end()) {
            throw std::invalid_argument(what + ": '" + value + "' is not one of the allowed values");
        }
        break;
    case ParamKind::box:
        for (double v : parse_box(value)) {
            check_range(p, v, what);
        }
        break;
    case ParamKind::domain:
        parse_domain(value);
        break;
    case ParamKind::selector:
        parse_selector(value);
        break;
    }
}

ParamSpec integer(std::string key, std::string def, double lo, double hi, std::string help)
{
    return {std::move(key), ParamKind::integer, std::move(def), lo, hi, false, {}, std::move(help)};
}

ParamSpec real(std::string key, std::string def, double lo, double hi, bool lo_open,
               std::string help)
{
    return {std::move(key), ParamKind::real, std::move(def), lo, hi, lo_open, {}, std::move(help)};
}

ParamSpec of_kind(ParamKind kind, std::string key, std::string def, double lo, double hi,
                  bool lo_open, std::string help)
{
    return {std::move(key), kind, std::move(def), lo, hi, lo_open, {}, std::move(help)};
}

ParamSpec choice(std::string key, std::string def, std::vector<std::string> choices,
                 std::string help)
{
    return {std::move(key), ParamKind::choice, std::move(def), 0, 0, false, std::move(choices),
            std::move(help)};
}

std::vector<CommandSpec> build_specs()
{
    using K = ParamKind;
    return {
        {"constants",
         "bound constants on a (k, d) grid",
         {integer("k_max", "3", 1, 20, "largest k"),
          integer("d_max", "10", 2, 120, "largest dimension")}},
        {"table-mu1",
         "mu_1 of planar domains of diameter 2",
         {integer("refine_offset", "0", -1, 2, "extra refinements added to every FEM row"),
          of_kind(K::real_list, "sector_angles", "1.6,1.62,1.64,1.654,1.66,1.68,1.7", 0.2, 3.0,
                  false, "sector openings in radians searched for the optimal sector"),
          integer("arc_chords", "64", 16, 1024, "chords per curved arc")}},
        {"rhombus-sweep",
         "degenerating rhombi and their half-domain mixed problems",
         {of_kind(K::real_list, "theta_list", "45,30,20,10,5", 2.0, 45.0, true,
                  "half-angles in degrees"),
          integer("refinements", "5", 0, 7, "coarsest refinement level")}},
        {"ratio-scan",
         "mu_1 ratios over random nested convex pairs",
         {integer("n_pairs", "200", 1, 1000, "number of pairs"),
          integer("seed", "1", 0, 9.0e15, "seed of the first pair; pair i uses seed + i"),
          integer("refinements", "3", 0, 6, "coarsest refinement level"),
          integer("n_outer", "12", 3, 200, "points spanning the outer hull"),
          integer("n_inner", "6", 3, 200, "points spanning a uniform inner hull"),
          integer("chord_points", "8", 3, 200, "points spanning a chord inner hull"),
          real("chord_width", "0.1", 0.02, 0.5, true, "largest relative half-width of chord hulls"),
          choice("family", "mixed", {"uniform", "chord", "mixed"},
                 "pair generator; mixed alternates uniform and chord"),
          integer("identical", "0", 0, 1, "use the outer domain as the inner one")}},
        {"weyl",
         "high rectangle eigenvalue ratios against the volume ratio",
         {of_kind(K::integer_list, "k_list", "1000,10000,100000", 1, 1e7, false, "indices k"),
          of_kind(K::box, "rect1", "1x1", 0, 1e6, true, "inner rectangle AxB"),
          of_kind(K::box, "rect2", "2x1.3", 0, 1e6, true, "outer rectangle AxB")}},
        {"dimension-demo",
         "ratio preservation under products with an interval",
         {integer("k", "1", 1, 50, "eigenvalue index"),
          of_kind(K::real_list, "ell_list", "0.1,0.5,0.9,1.5,3,100", 0, 1e6, true,
                  "interval lengths"),
          of_kind(K::box, "inner", "1", 0, 1e6, true, "inner box sides"),
          of_kind(K::box, "outer", "2", 0, 1e6, true, "outer box sides")}},
        {"counterexamples", "failures of Neumann domain monotonicity", {}},
        {"fem-properties",
         "FEM property checks on convex test domains",
         {integer("k_max", "5", 1, 19, "largest k"),
          integer("refinements", "4", 0, 6, "coarsest refinement level")}},
        {"mesh",
         "write a mesh in the plain-text format",
         {of_kind(K::domain, "domain", "", 0, 0, false, "domain string"),
          integer("refinements", "3", 0, 9, "uniform refinements of the initial mesh"),
          of_kind(K::selector, "dirichlet", "none", 0, 0, false, "Dirichlet edge rule"),
          of_kind(K::text, "file", "mesh.txt", 0, 0, false, "file name inside the output directory")}},
        {"eigs",
         "smallest eigenvalues of a mesh file",
         {of_kind(K::text, "mesh", "", 0, 0, false, "mesh file"),
          integer("n", "6", 1, 20, "number of eigenvalues")}},
    };
}

}  // namespace

const std::vector<CommandSpec>& command_specs()
{
    static const std::vector<CommandSpec> specs = build_specs();
    return specs;
}

const CommandSpec* find_command(const std::string& name)
{
    for (const auto& c : command_specs()) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

ExperimentConfig make_config(const std::string& command,
                             const std::vector<std::pair<std::string, std::string>>& overrides)
{
    const CommandSpec* cmd = find_command(command);
    if (!cmd) {
        throw std::invalid_argument("unknown command '" + command + "'");
    }
    ExperimentConfig cfg;
    cfg.command = command;
    for (const auto& p : cmd->params) {
        cfg.params[p.key] = p.default_value;
    }
    for (const auto& [key, value] : overrides) {
        if (!find_param(*cmd, key)) {
            throw std::invalid_argument("unknown key '" + key + "' for command '" + command + "'");
        }
        cfg.params[key] = trim(value);
    }
    for (const auto& p : cmd->params) {
        const std::string& v = cfg.params[p.key];
        if (v.empty()) {
            throw std::invalid_argument("missing required key '" + p.key + "'");
        }
        check_value(p, v);
    }
    if (cfg.params.count("seed")) {
        cfg.seed = static_cast<std::uint64_t>(cfg.integer("seed"));
    }
    return cfg;
}

long long ExperimentConfig::integer(const std::string& key) const
{
    return to_integer(text(key), key);
}

double ExperimentConfig::real(const std::string& key) const { return to_real(text(key), key); }

std::vector<long long> ExperimentConfig::integers(const std::string& key) const
{
    std::vector<long long> out;
    for (const auto& item : split(text(key), ',')) {
        out.push_back(to_integer(item, key));
    }
    return out;
}

std::vector<double> ExperimentConfig::reals(const std::string& key) const
{
    return to_reals(text(key), key);
}

const std::string& ExperimentConfig::text(const std::string& key) const
{
    const auto it = params.find(key);
    if (it == params.end()) {
        throw std::out_of_range("config has no key '" + key + "'");
    }
    return it->second;
}

std::vector<double> ExperimentConfig::box(const std::string& key) const
{
    return parse_box(text(key));
}

DomainSpec ExperimentConfig::domain(const std::string& key) const
{
    return parse_domain(text(key));
}

DirichletSelector ExperimentConfig::selector(const std::string& key) const
{
    return parse_selector(text(key));
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path)
{
    std::ifstream is(path);
    if (!is) {
        throw std::invalid_argument("cannot open config file " + path.string());
    }
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                        ": expected key=value");
        }
        out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return out;
}

DomainSpec parse_domain(const std::string& text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("domain '" + text + "': expected kind:arguments");
    }
    const std::string kind = trim(text.substr(0, colon));
    const std::vector<std::string> args = split(text.substr(colon + 1), ',');
    const std::string what = "domain '" + text + "'";
    auto need = [&](std::size_t n) {
        if (args.size() != n) {
            throw std::invalid_argument(what + ": expected " + std::to_string(n) + " arguments");
        }
    };
    auto count_arg = [&](std::size_t i) {
        const long long v = to_integer(args[i], what);
        if (v < 0 || v > 1000000) {
            throw std::invalid_argument(what + ": count out of range");
        }
        return static_cast<int>(v);
    };
    DomainSpec spec;
    if (kind == "square") {
        need(1);
        spec = Square{to_real(args[0], what)};
    } else if (kind == "rectangle") {
        need(2);
        spec = Rectangle{to_real(args[0], what), to_real(args[1], what)};
    } else if (kind == "rhombus") {
        need(2);
        spec = Rhombus{to_real(args[0], what), to_real(args[1], what)};
    } else if (kind == "halfrhombus") {
        need(4);
        HalfRhombus h{to_real(args[0], what), to_real(args[1], what)};
        const std::string cut = trim(args[2]), base = trim(args[3]);
        if (cut != "long" && cut != "short") {
            throw std::invalid_argument(what + ": cut must be long or short");
        }
        if (base != "dirichlet" && base != "neumann") {
            throw std::invalid_argument(what + ": base marker must be dirichlet or neumann");
        }
        h.cut = cut == "long" ? RhombusCut::long_diagonal : RhombusCut::short_diagonal;
        h.base_marker = base == "dirichlet" ? Marker::dirichlet : Marker::neumann;
        spec = h;
    } else if (kind == "triangle") {
        need(1);
        spec = EquilateralTriangle{to_real(args[0], what)};
    } else if (kind == "polygon") {
        need(2);
        spec = RegularPolygon{count_arg(0), to_real(args[1], what)};
    } else if (kind == "sector") {
        need(3);
        spec = Sector{to_real(args[0], what), to_real(args[1], what), count_arg(2)};
    } else if (kind == "reuleaux") {
        need(2);
        spec = ReuleauxTriangle{to_real(args[0], what), count_arg(1)};
    } else if (kind == "hull") {
        if (args.size() < 6 || args.size() % 2 != 0) {
            throw std::invalid_argument(what + ": expected an even number (>= 6) of coordinates");
        }
        std::vector<Vec2> pts;
        for (std::size_t i = 0; i < args.size(); i += 2) {
            pts.push_back({to_real(args[i], what), to_real(args[i + 1], what)});
        }
        spec = ConvexHullPolygon{convex_hull(std::move(pts))};
    } else {
        throw std::invalid_argument(what + ": unknown kind '" + kind + "'");
    }
    validate(spec);
    return spec;
}

DirichletSelector parse_selector(const std::string& text)
{
    if (text == "none") {
        return DirichletSelector::none();
    }
    if (text == "all") {
        return DirichletSelector::all();
    }
    const auto colon = text.find(':');
    const std::string kind = colon == std::string::npos ? text : text.substr(0, colon);
    const std::string what = "selector '" + text + "'";
    if (colon != std::string::npos) {
        const auto args = split(text.substr(colon + 1), ',');
        if (args.size() == 3 && kind == "line") {
            return DirichletSelector::on_line(to_real(args[0], what), to_real(args[1], what),
                                              to_real(args[2], what));
        }
        if (args.size() == 3 && kind == "circle") {
            return DirichletSelector::on_circle({to_real(args[0], what), to_real(args[1], what)},
                                                to_real(args[2], what));
        }
    }
    throw std::invalid_argument(what + ": expected none, all, line:NX,NY,OFFSET or circle:CX,CY,R");
}

std::vector<double> parse_box(const std::string& text)
{
    std::vector<double> sides;
    for (const auto& item : split(text, 'x')) {
        sides.push_back(to_real(item, "box '" + text + "'"));
    }
    if (sides.empty() || sides.size() > 6) {
        throw std::invalid_argument("box '" + text + "': expected 1 to 6 sides");
    }
    return sides;
}

}  // namespace speclab
