#pragma once

// Command parameters: a per-command schema of typed keys with defaults and
// ranges. Everything is parsed and checked before a command starts.

#include "speclab/geometry.hpp"
#include "speclab/mesh.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace speclab {

enum class ParamKind { integer, real, integer_list, real_list, text, choice, box, domain, selector };

struct ParamSpec {
    std::string key;
    ParamKind kind;
    std::string default_value;  // empty: required
    double min = 0.0;           // numeric kinds: inclusive range, per element for lists
    double max = 0.0;
    bool min_exclusive = false;
    std::vector<std::string> choices;  // ParamKind::choice
    std::string help;
};

struct CommandSpec {
    std::string name;
    std::string summary;
    std::vector<ParamSpec> params;
};

/// All commands in display order.
const std::vector<CommandSpec>& command_specs();

/// nullptr for an unknown command.
const CommandSpec* find_command(const std::string& name);

struct ExperimentConfig {
    std::string command;
    std::map<std::string, std::string> params;  // every schema key, defaults filled in
    std::uint64_t seed = 0;                     // the "seed" key when the command has one

    long long integer(const std::string& key) const;
    double real(const std::string& key) const;
    std::vector<long long> integers(const std::string& key) const;
    std::vector<double> reals(const std::string& key) const;
    const std::string& text(const std::string& key) const;
    std::vector<double> box(const std::string& key) const;
    DomainSpec domain(const std::string& key) const;
    DirichletSelector selector(const std::string& key) const;
};

/// Builds and validates a config. Throws std::invalid_argument naming the
/// offending key for unknown commands or keys, malformed values, values out
/// of range, or a missing required key.
ExperimentConfig make_config(const std::string& command,
                             const std::vector<std::pair<std::string, std::string>>& overrides);

/// key=value lines; blank lines and lines starting with '#' are skipped.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);

/// Domain strings:
///   square:SIDE  rectangle:A,B  rhombus:D,THETA  halfrhombus:D,THETA,long|short,dirichlet|neumann
///   triangle:SIDE  polygon:N,R  sector:R,OPENING,NARC  reuleaux:WIDTH,NARC
///   hull:x1,y1,x2,y2,...
/// Angles in radians. The result is validated.
DomainSpec parse_domain(const std::string& text);

/// none | all | line:NX,NY,OFFSET | circle:CX,CY,R
DirichletSelector parse_selector(const std::string& text);

/// Box sides separated by 'x', e.g. "2x1.3".
std::vector<double> parse_box(const std::string& text);

}  // namespace speclab
