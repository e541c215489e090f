// Command-line frontend: effective-geometry models of an entangled
// two-particle scalar system, residual verification, and trajectory export.

#include <CLI11.hpp>
#include <cstring>
#include <fstream>
#include <iostream>

#include "bdbgeo/errors.hpp"
#include "bdbgeo/run.hpp"

using namespace bdbgeo;

namespace {

// Applies a flat `key = value` config file before flag parsing, so flags
// override the file and the file overrides defaults.  Parameter keys are
// handled by the params module; run-level keys (grid, output, thresholds)
// are handled here.
bool apply_config_file(const std::string& path, RunConfig& cfg) {
    try {
        for (const auto& problem : load_config_file(path, cfg.params)) {
            if (problem.find("unknown key") == std::string::npos)
                std::cerr << "warning: config: " << problem << '\n';
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return false;
    }
    std::ifstream in(path);
    std::string raw;
    while (std::getline(in, raw)) {
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string stripped;
        for (char ch : raw)
            if (ch != ' ' && ch != '\t' && ch != '\r') stripped.push_back(ch);
        const auto eq = stripped.find('=');
        if (stripped.empty() || eq == std::string::npos || eq == 0) continue;
        std::string key = stripped.substr(0, eq);
        const std::string val = stripped.substr(eq + 1);
        for (char& ch : key)
            if (ch == '_') ch = '-';
        try {
            if (key == "grid-min") cfg.grid_min = std::stod(val);
            else if (key == "grid-max") cfg.grid_max = std::stod(val);
            else if (key == "grid-n") cfg.grid_n = std::stoi(val);
            else if (key == "threshold") cfg.threshold = std::stod(val);
            else if (key == "q-margin") cfg.q_margin = std::stod(val);
            else if (key == "out") cfg.output_dir = val;
            else if (key == "strict") cfg.strict = (val == "1" || val == "true");
            else if (key == "format") cfg.format = (val == "json") ? OutputFormat::json
                                                                   : OutputFormat::csv;
            else if (key == "svg") cfg.svg = (val == "1" || val == "true");
            else {
                ModelParams probe;
                if (!apply_param_key(probe, key, 0.0))
                    std::cerr << "warning: config: unknown key '" << key << "'\n";
            }
        } catch (const std::exception&) {
            std::cerr << "warning: config: bad value for " << key << '\n';
        }
    }
    return true;
}

void add_common_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--m", cfg.params.m, "particle mass");
    cmd->add_option("--c", cfg.params.c, "speed scale");
    cmd->add_option("--hbar", cfg.params.hbar, "action scale");
    cmd->add_option("--big-m", cfg.params.big_m, "integration constant M");
    cmd->add_option("--k-const", cfg.params.k_const, "integration constant K");
    cmd->add_option("--c-const", cfg.params.c_const, "metric constant C");
    cmd->add_option("--a", cfg.params.a_norm, "amplitude normalization A");
    cmd->add_option("--c1", cfg.params.c1, "static solution constant C1");
    cmd->add_option("--c2", cfg.params.c2, "static solution constant C2");
    cmd->add_option("--grid-min", cfg.grid_min, "grid lower bound");
    cmd->add_option("--grid-max", cfg.grid_max, "grid upper bound");
    cmd->add_option("--grid-n", cfg.grid_n, "grid point count (>= 3)");
    cmd->add_option("--out", cfg.output_dir, "output directory");
    cmd->add_option("--format", cfg.format, "report format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, OutputFormat>{{"csv", OutputFormat::csv},
                                                {"json", OutputFormat::json}}));
    cmd->add_flag("--strict", cfg.strict, "exit 1 when any residual report fails");
    cmd->add_option("--threshold", cfg.threshold, "validity smallness bound on |2Mz|");
    cmd->add_option("--q-margin", cfg.q_margin, "smallness threshold on |Q/(2 m^2 c^2)|");
    cmd->add_flag("--svg", cfg.svg, "also write SVG line plots");
    // consumed by the pre-scan in main; registered here for parsing and help
    cmd->add_option("--config")
        ->description("flat key = value config file ('#' comments), overridden by explicit flags");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Effective geometry of entangled two-particle scalar systems"};
    app.require_subcommand(1);

    RunConfig cfg;
    int selected = 0;

    // Config file first, explicit flags second (they overwrite at parse).
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) config_path = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0) config_path = arg.substr(std::strlen("--config="));
    }
    if (!config_path.empty() && !apply_config_file(config_path, cfg))
        return kExitUsage;

    auto* airy = app.add_subcommand("airy-example",
                                    "linear-potential model: fields, coordinate chain, "
                                    "horizon-form metric, residual suite");
    add_common_flags(airy, cfg);
    airy->callback([&] { selected = 1; });

    auto* stat = app.add_subcommand("static-example",
                                    "static sinusoidal model: derived G, effective metric, "
                                    "singularities, residual suite");
    add_common_flags(stat, cfg);
    stat->callback([&] { selected = 2; });

    auto* verify = app.add_subcommand("verify", "full residual suite at three resolutions "
                                                "plus convergence orders");
    add_common_flags(verify, cfg);
    verify->callback([&] { selected = 3; });

    auto* traj = app.add_subcommand("trajectories", "integrate a guided pair of the static model");
    add_common_flags(traj, cfg);
    traj->add_option("--x1", cfg.x1_0, "start coordinate of particle 1");
    traj->add_option("--x2", cfg.x2_0, "start coordinate of particle 2");
    traj->add_option("--lambda-span", cfg.lambda_span, "affine-parameter span");
    traj->add_option("--tol", cfg.ode_tol, "integrator local error tolerance");
    traj->callback([&] { selected = 4; });

    auto* hor = app.add_subcommand("horizons", "horizon locations and region classification");
    add_common_flags(hor, cfg);
    hor->callback([&] { selected = 5; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const std::string complaint = check_run_config(cfg);
    if (!complaint.empty()) {
        std::cerr << "error: " << complaint << '\n';
        return kExitUsage;
    }

    try {
        switch (selected) {
            case 1: return run_airy_example(cfg);
            case 2: return run_static_example(cfg);
            case 3: return run_verify(cfg);
            case 4: return run_trajectories(cfg);
            case 5: return run_horizons(cfg);
        }
    } catch (const CoverageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
