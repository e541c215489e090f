#pragma once

#include <string>

#include "bdbgeo/params.hpp"

namespace bdbgeo {

enum class OutputFormat { csv, json };

/// Effective configuration of one CLI run.  Precedence of sources is
/// flags > config file > defaults; the resolved values are echoed into
/// every output file header.
struct RunConfig {
    ModelParams params;
    double grid_min = -2.0;
    double grid_max = 2.0;
    int grid_n = 401;
    std::string output_dir = ".";
    OutputFormat format = OutputFormat::csv;
    bool strict = false;
    double threshold = 0.05;        // |2Mz| smallness bound of the chain
    double q_margin = 0.1;          // |Q/(2m^2c^2)| smallness threshold
    bool svg = false;
    // trajectory settings
    double x1_0 = 0.3;
    double x2_0 = 0.2;
    double lambda_span = 10.0;
    double ode_tol = 1e-10;
};

// Exit codes shared by all subcommands: 0 success, 1 strict verification
// failure, 2 usage/config error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitStrictFailure = 1;
inline constexpr int kExitUsage = 2;

/// Validates grid count, parameter invariants, and output-dir writability.
/// Returns an empty string when fine, else the complaint.
std::string check_run_config(const RunConfig& cfg);

int run_airy_example(const RunConfig& cfg);
int run_static_example(const RunConfig& cfg);
int run_verify(const RunConfig& cfg);
int run_trajectories(const RunConfig& cfg);
int run_horizons(const RunConfig& cfg);

} // namespace bdbgeo
