#pragma once

// Reproducible experiments. Each returns a report whose rows are fixed by
// input order and whose verdicts name the invariant they check.

#include "speclab/config.hpp"
#include "speclab/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace speclab {

inline constexpr const char* kVersion = "1.0.0";

ExperimentReport cmd_constants(int k_max, int d_max);

struct TableMu1Options {
    int refine_offset = 0;
    std::vector<double> sector_angles{1.6, 1.62, 1.64, 1.654, 1.66, 1.68, 1.7};
    int arc_chords = 64;
};
ExperimentReport cmd_table_mu1(const TableMu1Options& options = {});

ExperimentReport cmd_rhombus_sweep(const std::vector<double>& theta_degrees, int refinements);

enum class PairFamily { uniform, chord, mixed };

struct RatioScanOptions {
    int n_pairs = 200;
    std::uint64_t seed = 1;
    int refinements = 3;
    int n_outer = 12;
    int n_inner = 6;
    int chord_points = 8;
    double chord_width = 0.1;
    PairFamily family = PairFamily::mixed;
    bool identical = false;
};
ExperimentReport cmd_ratio_scan(const RatioScanOptions& options);

ExperimentReport cmd_weyl(const std::vector<long long>& k_list, const std::vector<double>& rect1,
                          const std::vector<double>& rect2);

ExperimentReport cmd_dimension_demo(int k, const std::vector<double>& ell_list,
                                    const std::vector<double>& inner,
                                    const std::vector<double>& outer);

ExperimentReport cmd_counterexamples();

/// Bracketing, refinement monotonicity, Payne-Weinberger and Kroger checks
/// for k <= k_max on a square, a 10 degree rhombus, an equilateral triangle
/// and a regular 64-gon, all of diameter 2.
ExperimentReport cmd_fem_properties(int k_max, int refinements);

/// Smallest n eigenvalues of a mesh file.
ExperimentReport cmd_eigs(const std::string& mesh_path, int n);

/// Dispatches an experiment command and fills the metadata (version,
/// parameters, seed, threads, wall time). "mesh" is not an experiment.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace speclab
