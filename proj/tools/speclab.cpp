// speclab <command> [--key=value ...] [--config <file>] --out <dir>

#include "speclab/config.hpp"
#include "speclab/experiments.hpp"
#include "speclab/mesh.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

namespace {

void apply_thread_limit()
{
    const char* env = std::getenv("SPECLAB_THREADS");
    if (!env || !*env) {
        return;
    }
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096) {
        throw std::invalid_argument(std::string("SPECLAB_THREADS must be a positive integer, got '") +
                                    env + "'");
    }
    omp_set_num_threads(static_cast<int>(n));
}

int write_mesh_command(const speclab::ExperimentConfig& cfg, const std::filesystem::path& out)
{
    const speclab::Mesh mesh = speclab::triangulate_levels(
        cfg.domain("domain"), static_cast<int>(cfg.integer("refinements")), cfg.selector("dirichlet"));
    speclab::validate(mesh);
    std::filesystem::create_directories(out);
    const auto path = out / cfg.text("file");
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot write " + path.string());
    }
    speclab::write_mesh(os, mesh);
    std::printf("wrote %s: %zu vertices, %zu triangles, %zu boundary edges (%zu dirichlet), h=%s\n",
                path.string().c_str(), mesh.vertices.size(), mesh.triangles.size(),
                mesh.boundary_edges.size(), mesh.dirichlet_edge_count(),
                speclab::format_number(mesh.h).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Neumann eigenvalue experiments on nested convex domains"};
    app.require_subcommand(1);
    std::string out = ".";
    std::string config_path;
    std::map<std::string, std::map<std::string, std::string>> given;
    std::map<std::string, CLI::App*> subs;
    for (const auto& spec : speclab::command_specs()) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.summary);
        sub->add_option("--out", out, "output directory")->capture_default_str();
        sub->add_option("--config", config_path, "file of key=value lines");
        for (const auto& p : spec.params) {
            auto* opt = sub->add_option("--" + p.key, given[spec.name][p.key], p.help);
            if (p.default_value.empty()) {
                opt->description(p.help + " (required)");
            } else {
                opt->default_str(p.default_value);
            }
        }
        subs[spec.name] = sub;
    }
    CLI11_PARSE(app, argc, argv);

    std::string command;
    for (const auto& [name, sub] : subs) {
        if (sub->parsed()) {
            command = name;
        }
    }

    speclab::ExperimentConfig cfg;
    try {
        apply_thread_limit();
        std::vector<std::pair<std::string, std::string>> overrides;
        if (!config_path.empty()) {
            overrides = speclab::read_config_file(config_path);
        }
        for (const auto& [key, value] : given[command]) {
            if (subs[command]->count("--" + key) > 0) {
                overrides.emplace_back(key, value);
            }
        }
        cfg = speclab::make_config(command, overrides);
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "speclab %s: %s\n", command.c_str(), ex.what());
        return 2;
    }

    try {
        if (command == "mesh") {
            return write_mesh_command(cfg, out);
        }
        const speclab::ExperimentReport report = speclab::run_experiment(cfg);
        speclab::write_report(report, out);
        for (const auto& v : report.verdicts) {
            std::printf("%s %-48s %-40s measured=%s bound=%s\n", v.passed ? "PASS" : "FAIL",
                        v.name.c_str(), v.invariant.c_str(),
                        speclab::format_number(v.measured).c_str(),
                        speclab::format_number(v.bound).c_str());
        }
        std::printf("%s: %zu rows, %zu verdicts, %s; output in %s\n", command.c_str(),
                    report.rows.size(), report.verdicts.size(),
                    report.all_passed() ? "all passed" : "FAILURES", out.c_str());
        return report.all_passed() ? 0 : 1;
    } catch (const std::invalid_argument& ex) {
        std::fprintf(stderr, "speclab %s: %s\n", command.c_str(), ex.what());
        return 2;
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "speclab %s: %s\n", command.c_str(), ex.what());
        return 3;
    }
}
