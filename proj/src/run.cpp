#include "bdbgeo/run.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <vector>

#include "bdbgeo/errors.hpp"
#include "bdbgeo/fields.hpp"
#include "bdbgeo/geometry.hpp"
#include "bdbgeo/quantum_potential.hpp"
#include "bdbgeo/report_io.hpp"
#include "bdbgeo/static_model.hpp"
#include "bdbgeo/svg.hpp"
#include "bdbgeo/trajectories.hpp"
#include "bdbgeo/verifier.hpp"

namespace fs = std::filesystem;

namespace bdbgeo {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string check_params(const ModelParams& p) {
    const auto v = validate(p);
    if (v.ok()) {
        for (const auto& w : v.warnings) std::cerr << "warning: " << w << '\n';
        return {};
    }
    std::string msg = "invalid parameters:";
    for (const auto& s : v.violations) msg += " " + s + ";";
    return msg;
}

std::ofstream open_csv(const RunConfig& cfg, const std::string& name,
                       std::vector<std::string>& artifacts) {
    const fs::path path = fs::path(cfg.output_dir) / name;
    std::ofstream os(path);
    os.precision(17);
    os << params_comment(cfg.params) << '\n'
       << "# grid = [" << cfg.grid_min << ", " << cfg.grid_max << "], n = " << cfg.grid_n
       << ", threshold = " << cfg.threshold << '\n';
    artifacts.push_back(path.string());
    return os;
}

void write_json_file(const RunConfig& cfg, const std::string& name,
                     const nlohmann::json& j, std::vector<std::string>& artifacts) {
    const fs::path path = fs::path(cfg.output_dir) / name;
    std::ofstream os(path);
    os << j.dump(2) << '\n';
    artifacts.push_back(path.string());
}

void print_report_line(const ResidualReport& r) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << equation_name(r.equation)
              << "  max=" << r.max_residual << "  normalized=" << r.normalized_max()
              << "  tol=" << r.tolerance << "  (n=" << r.grid.n
              << ", skipped=" << r.skipped << ")\n";
}

int finish(const RunConfig& cfg, const std::vector<ResidualReport>& reports) {
    bool all = true;
    for (const auto& r : reports) all = all && r.passed;
    if (!all && cfg.strict) return kExitStrictFailure;
    return kExitOk;
}

} // namespace

std::string check_run_config(const RunConfig& cfg) {
    if (cfg.grid_n < 3) return "grid count must be >= 3";
    if (!(cfg.grid_max > cfg.grid_min)) return "grid-max must exceed grid-min";
    const std::string bad = check_params(cfg.params);
    if (!bad.empty()) return bad;
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    const fs::path probe = fs::path(cfg.output_dir) / ".write_probe";
    std::ofstream f(probe);
    if (!f) return "output directory not writable: " + cfg.output_dir;
    f.close();
    fs::remove(probe, ec);
    return {};
}

int run_airy_example(const RunConfig& cfg) {
    const ModelParams& p = cfg.params;
    std::vector<std::string> artifacts;

    const auto ampl = airy_amplitude(p);
    const auto q = quantum_potential(ampl, QpMode::epr_reduced, p);
    const auto exp_metric = conformal_metric_exp(q, p);

    // (a) amplitude / potential / conformal factor grid
    {
        auto os = open_csv(cfg, "airy_grid.csv", artifacts);
        os << "z,R,Q,omega_sq\n";
        for (int i = 0; i < cfg.grid_n; ++i) {
            const double z = cfg.grid_min + (cfg.grid_max - cfg.grid_min) * i / (cfg.grid_n - 1);
            double r = kNan, qv = kNan, w2 = kNan;
            try {
                r = ampl.value(z);
                qv = q.eval(z);
                w2 = std::exp(-qv / p.q0());
            } catch (const Error&) {
            }
            os << z << ',' << r << ',' << qv << ',' << w2 << '\n';
        }
    }
    {
        auto os = open_csv(cfg, "q_grid.csv", artifacts);
        // re-emit header: the potential dump carries its own column set
        write_q_grid_csv(os, q, p, cfg.grid_min, cfg.grid_max, cfg.grid_n);
    }

    // (b) coordinate chain table and (c) horizon-form metric grid
    const auto map_zy = z_to_y(q, p, Interval{cfg.grid_min - 0.25, cfg.grid_max + 0.25});
    const auto map_yx = y_to_x(p);
    const auto chain = pushforward(pushforward(exp_metric, map_zy, MetricCoords::y_conformal),
                                   map_yx, MetricCoords::x_bh);
    const auto bh = bh_metric(p);
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    {
        auto os = open_csv(cfg, "chain_grid.csv", artifacts);
        os << "z,y,x,g_tt_chain,g_xx_chain,g_tt_bh,g_xx_bh\n";
        for (int i = 0; i < cfg.grid_n; ++i) {
            const double z = cfg.grid_min + (cfg.grid_max - cfg.grid_min) * i / (cfg.grid_n - 1);
            try {
                const double y = map_zy.forward(z);
                const double x = map_yx.forward(y);
                x_lo = std::min(x_lo, x);
                x_hi = std::max(x_hi, x);
                os << z << ',' << y << ',' << x << ',' << chain.g_tt(x) << ','
                   << chain.g_xx(x) << ',' << bh.g_tt(x) << ',' << bh.g_xx(x) << '\n';
            } catch (const Error&) {
            }
        }
    }
    const auto vw = validity_window(p, cfg.threshold);
    {
        auto os = open_csv(cfg, "bh_metric_grid.csv", artifacts);
        if (!std::isfinite(x_lo)) { x_lo = vw.lo - 1.0; x_hi = vw.hi + 1.0; }
        write_metric_grid_csv(os, bh, p, std::min(x_lo, vw.lo - 0.5), std::max(x_hi, vw.hi + 0.5),
                              cfg.grid_n, &vw);
    }

    // (d) horizons
    const auto horizons = find_horizons(p);
    std::cout << "horizons:";
    for (double h : horizons.locations) std::cout << ' ' << h;
    if (horizons.locations.empty()) std::cout << " none";
    std::cout << "\nvalidity window: center " << vw.center << ", x in [" << vw.lo << ", "
              << vw.hi << "]\n";

    // Exponential-factor trustworthiness over the requested window.
    {
        double worst_margin = 0.0;
        for (int i = 0; i < cfg.grid_n; ++i) {
            try {
                worst_margin = std::max(
                    worst_margin,
                    validity_margin(q.eval(cfg.grid_min +
                                           (cfg.grid_max - cfg.grid_min) * i / (cfg.grid_n - 1)),
                                    p));
            } catch (const Error&) {
            }
        }
        if (worst_margin > cfg.q_margin) {
            std::cout << "note: |Q/(2 m^2 c^2)| reaches " << worst_margin
                      << " on this grid (threshold " << cfg.q_margin
                      << "); the exponential conformal factor is a first-order "
                         "approximation only where the margin is small\n";
        }
    }

    // (e) residual suite; the last entry re-checks the amplitude equation
    // through finite differences at the run's own grid resolution, so a
    // too-coarse grid shows up as a failed report rather than a silent one.
    const GridSpec grid{cfg.grid_min, cfg.grid_max, cfg.grid_n};
    std::vector<ResidualReport> reports;
    reports.push_back(check_airy_ode(ampl, p, grid));
    reports.push_back(check_q_slope(q, p, grid));
    reports.push_back(check_bh_chain(p, grid));
    {
        // Sampling must stay inside the positivity region (the sampled-field
        // representation requires non-negative values) and extends a few
        // cells beyond the checked window so the checked points see interior
        // stencils.
        const double pad = 1e-6 * (cfg.grid_max - cfg.grid_min);
        double lo = cfg.grid_min, hi = cfg.grid_max;
        if (std::isfinite(ampl.domain.lo)) lo = std::max(lo, ampl.domain.lo + pad);
        if (std::isfinite(ampl.domain.hi)) hi = std::min(hi, ampl.domain.hi - pad);
        const double h = (hi - lo) / (cfg.grid_n - 1);
        double ext_lo = lo - 3.0 * h, ext_hi = hi + 3.0 * h;
        if (std::isfinite(ampl.domain.lo)) ext_lo = std::max(ext_lo, ampl.domain.lo + pad);
        if (std::isfinite(ampl.domain.hi)) ext_hi = std::min(ext_hi, ampl.domain.hi - pad);
        const int n_ext = static_cast<int>(std::round((ext_hi - ext_lo) / h)) + 1;
        if (hi > lo && cfg.grid_n >= 3 && n_ext >= 5) {
            std::vector<double> xs(n_ext), vs(n_ext);
            for (int i = 0; i < n_ext; ++i) {
                xs[i] = ext_lo + (ext_hi - ext_lo) * i / (n_ext - 1);
                vs[i] = ampl.value(xs[i]);
            }
            const GridSpec fd_grid{std::max(lo, ext_lo + 2.5 * h),
                                   std::min(hi, ext_hi - 2.5 * h), cfg.grid_n};
            reports.push_back(check_airy_ode(sampled_amplitude(xs, vs), p, fd_grid, kTolFd));
        }
    }
    for (const auto& r : reports) print_report_line(r);

    nlohmann::json out{{"params", params_json(p)},
                       {"horizons", horizons_json(horizons)},
                       {"validity_window", {{"center", vw.center},
                                            {"epsilon", vw.epsilon},
                                            {"lo", vw.lo},
                                            {"hi", vw.hi},
                                            {"threshold", vw.threshold}}},
                       {"reports", reports_json(reports)}};
    out["artifacts"] = artifacts;
    write_json_file(cfg, "airy_report.json", out, artifacts);

    if (cfg.svg) {
        std::vector<SvgSeries> series(3);
        series[0].label = "R";
        series[1].label = "Q";
        series[2].label = "omega^2";
        for (int i = 0; i < cfg.grid_n; ++i) {
            const double z = cfg.grid_min + (cfg.grid_max - cfg.grid_min) * i / (cfg.grid_n - 1);
            double r = kNan, qv = kNan, w2 = kNan;
            try {
                r = ampl.value(z);
                qv = q.eval(z);
                w2 = std::exp(-qv / p.q0());
            } catch (const Error&) {
            }
            for (auto* s : {&series[0], &series[1], &series[2]}) s->x.push_back(z);
            series[0].y.push_back(r);
            series[1].y.push_back(qv);
            series[2].y.push_back(w2);
        }
        std::ofstream os(fs::path(cfg.output_dir) / "airy_fields.svg");
        write_svg_chart(os, "Amplitude, potential, conformal factor", "z", series);
    }
    return finish(cfg, reports);
}

int run_static_example(const RunConfig& cfg) {
    const ModelParams& p = cfg.params;
    std::vector<std::string> artifacts;

    const auto ampl = static_sine_amplitude_sq(p);
    const auto g = derive_g(p);
    const auto q = quantum_potential(ampl, QpMode::two_particle_sum, p);
    const Interval window{cfg.grid_min, cfg.grid_max};
    const auto singularities = find_metric_singularities(p, window);
    const auto excluded = g.excluded_intervals(window);

    auto samples = nlohmann::json::array();
    {
        auto os = open_csv(cfg, "static_grid.csv", artifacts);
        os << "u,R2,Q,G,g11_derived,g11_alt_form,discrepancy\n";
        for (int i = 0; i < cfg.grid_n; ++i) {
            const double u = cfg.grid_min + (cfg.grid_max - cfg.grid_min) * i / (cfg.grid_n - 1);
            const double r2 = ampl.sq_value(u);
            double qv = kNan, gv = kNan, g11 = kNan, g11_alt = kNan, disc = kNan;
            try {
                qv = q.eval(u);
            } catch (const Error&) {
            }
            try {
                gv = g.eval(u);
            } catch (const Error&) {
            }
            try {
                const auto cmp = compare_g11(p, g, ampl, u);
                g11 = cmp.g11_derived;
                g11_alt = cmp.g11_alt_form;
                disc = cmp.discrepancy;
            } catch (const Error&) {
            }
            os << u << ',' << r2 << ',' << qv << ',' << gv << ',' << g11 << ','
               << g11_alt << ',' << disc << '\n';
            if (cfg.format == OutputFormat::json) {
                samples.push_back({{"u", u}, {"R2", r2}, {"Q", qv}, {"G", gv},
                                   {"g11_derived", g11}, {"g11_alt_form", g11_alt},
                                   {"discrepancy", disc}});
            }
        }
    }

    // Residual checks run on the largest contiguous subwindow where the
    // solution is actually defined (R^2 > 0 and 8G^2 >= 0); the sample
    // table above still covers the full requested window.
    GridSpec grid{cfg.grid_min, cfg.grid_max, cfg.grid_n};
    {
        int best_lo = -1, best_len = 0, run_lo = -1, run_len = 0;
        for (int i = 0; i < cfg.grid_n; ++i) {
            const double u = grid.point(i);
            bool good = false;
            try {
                good = ampl.sq_value(u) > 0.0 && g.g_sq8(u) >= 0.0;
            } catch (const Error&) {
            }
            if (good) {
                if (run_len == 0) run_lo = i;
                if (++run_len > best_len) { best_len = run_len; best_lo = run_lo; }
            } else {
                run_len = 0;
            }
        }
        if (best_len < 3) {
            std::cerr << "error: no usable subwindow with R^2 > 0 and real G\n";
            return kExitUsage;
        }
        const double pad = grid.spacing();
        const double lo = grid.point(best_lo);
        const double hi = grid.point(best_lo + best_len - 1);
        grid = GridSpec{lo == cfg.grid_min ? lo : lo + pad,
                        hi == cfg.grid_max ? hi : hi - pad,
                        std::max(3, best_len - 2)};
    }
    const auto phase = static_phase_gradient(p, [g](double u) { return g.eval(u); }, ampl);
    std::vector<ResidualReport> reports;
    reports.push_back(check_nonlinear(ampl, g, p, grid));
    reports.push_back(check_chain_consistency(ampl, g, p, grid));
    reports.push_back(check_continuity(ampl, phase, grid));
    reports.push_back(check_hamilton_jacobi(ampl, phase, p, grid));
    for (const auto& r : reports) print_report_line(r);

    auto excluded_json = nlohmann::json::array();
    for (const auto& iv : excluded)
        excluded_json.push_back({{"lo", iv.lo}, {"hi", iv.hi}});
    nlohmann::json out{{"params", params_json(p)},
                       {"singularities", singularities},
                       {"real_g_exclusions", excluded_json},
                       {"reports", reports_json(reports)}};
    if (cfg.format == OutputFormat::json) out["samples"] = samples;
    out["artifacts"] = artifacts;
    write_json_file(cfg, "static_report.json", out, artifacts);

    std::cout << "singularities:";
    for (double s : singularities) std::cout << ' ' << s;
    if (singularities.empty()) std::cout << " none";
    std::cout << '\n';

    if (cfg.svg) {
        std::vector<SvgSeries> series(2);
        series[0].label = "g11_derived";
        series[1].label = "g11_alt_form";
        for (int i = 0; i < cfg.grid_n; ++i) {
            const double u = cfg.grid_min + (cfg.grid_max - cfg.grid_min) * i / (cfg.grid_n - 1);
            double a = kNan, b = kNan;
            try {
                const auto cmp = compare_g11(p, g, ampl, u);
                a = cmp.g11_derived;
                b = cmp.g11_alt_form;
            } catch (const Error&) {
            }
            series[0].x.push_back(u);
            series[1].x.push_back(u);
            series[0].y.push_back(a);
            series[1].y.push_back(b);
        }
        std::ofstream os(fs::path(cfg.output_dir) / "static_g11.svg");
        write_svg_chart(os, "Effective metric component", "u", series);
    }
    return finish(cfg, reports);
}

int run_verify(const RunConfig& cfg) {
    const ModelParams& p = cfg.params;
    std::vector<std::string> artifacts;
    std::vector<ResidualReport> reports;

    const auto ampl = airy_amplitude(p);
    const auto q = quantum_potential(ampl, QpMode::epr_reduced, p);
    const auto static_ampl = static_sine_amplitude_sq(p);
    const auto g = derive_g(p);
    const auto phase = static_phase_gradient(p, [g](double u) { return g.eval(u); }, static_ampl);

    for (const int n : {cfg.grid_n / 4 + 3, cfg.grid_n / 2 + 1, cfg.grid_n}) {
        const GridSpec grid{cfg.grid_min, cfg.grid_max, n};
        reports.push_back(check_airy_ode(ampl, p, grid));
        reports.push_back(check_q_slope(q, p, grid));
        reports.push_back(check_bh_chain(p, grid));
        reports.push_back(check_nonlinear(static_ampl, g, p, grid));
        reports.push_back(check_chain_consistency(static_ampl, g, p, grid));
        reports.push_back(check_continuity(static_ampl, phase, grid));
        reports.push_back(check_hamilton_jacobi(static_ampl, phase, p, grid));
    }
    for (const auto& r : reports) print_report_line(r);

    // Convergence orders for the finite-difference machinery: interior
    // stencils of a resampled amplitude (4th order) and the one-sided edge
    // stencils (2nd order).
    // The residual is evaluated at sample nodes so the measured error is the
    // stencil truncation alone, not interpolation between nodes.
    auto sampled_check = [&](double h, bool interior) {
        const double pad = interior ? 1.0 : 0.0;
        const double lo = cfg.grid_min - pad, hi = cfg.grid_max + pad;
        const int n = static_cast<int>(std::round((hi - lo) / h)) + 1;
        std::vector<double> xs(n), vs(n);
        for (int i = 0; i < n; ++i) {
            xs[i] = lo + (hi - lo) * i / (n - 1);
            vs[i] = ampl.value(xs[i]);
        }
        const auto sampled = sampled_amplitude(xs, vs);
        const int cn = static_cast<int>(std::round((cfg.grid_max - cfg.grid_min) / h)) + 1;
        const GridSpec grid{cfg.grid_min, cfg.grid_max, cn};
        return check_airy_ode(sampled, p, grid, kTolFd);
    };
    const std::vector<double> hs{0.2, 0.1, 0.05};
    const auto conv_interior =
        convergence_order([&](double h) { return sampled_check(h, true); }, hs);
    const auto conv_edge =
        convergence_order([&](double h) { return sampled_check(h, false); }, hs);
    const auto conv_analytic = convergence_order(
        [&](double h) {
            (void)h;
            const GridSpec grid{cfg.grid_min, cfg.grid_max, cfg.grid_n};
            return check_airy_ode(ampl, p, grid);
        },
        hs);

    auto conv_json = [](const char* name, const ConvergenceResult& c) {
        return nlohmann::json{{"check", name},
                              {"floor_reached", c.floor_reached},
                              {"slope", c.floor_reached ? nlohmann::json() : nlohmann::json(c.slope)},
                              {"residuals", c.residuals}};
    };
    auto convergences = nlohmann::json::array();
    convergences.push_back(conv_json("airy_ode_fd_interior", conv_interior));
    convergences.push_back(conv_json("airy_ode_fd_with_edges", conv_edge));
    convergences.push_back(conv_json("airy_ode_analytic", conv_analytic));
    std::cout << "convergence airy_ode_fd_interior: "
              << (conv_interior.floor_reached ? -1.0 : conv_interior.slope) << '\n';
    std::cout << "convergence airy_ode_fd_with_edges: "
              << (conv_edge.floor_reached ? -1.0 : conv_edge.slope) << '\n';

    nlohmann::json out{{"params", params_json(p)},
                       {"reports", reports_json(reports)},
                       {"convergence", convergences},
                       {"artifacts", artifacts}};
    write_json_file(cfg, "verify_report.json", out, artifacts);
    return finish(cfg, reports);
}

int run_trajectories(const RunConfig& cfg) {
    const ModelParams& p = cfg.params;
    std::vector<std::string> artifacts;
    const auto ampl = static_sine_amplitude_sq(p);
    const auto g = derive_g(p);
    const auto phase = static_phase_gradient(p, [g](double u) { return g.eval(u); }, ampl);

    const auto traj = integrate_pair(phase, cfg.x1_0, cfg.x2_0, cfg.lambda_span, p, cfg.ode_tol);
    {
        auto os = open_csv(cfg, "trajectory.csv", artifacts);
        write_trajectory_csv(os, traj);
    }
    const auto [du, dp] = epr_drift(traj);
    std::cout << "samples: " << traj.size() << ", u drift: " << du
              << ", momentum antisymmetry defect: " << dp << '\n';
    if (cfg.format == OutputFormat::json) {
        nlohmann::json out{{"params", params_json(p)},
                           {"u_drift", du},
                           {"p_antisym_max", dp},
                           {"steps_accepted", traj.integrator_stats.accepted},
                           {"steps_rejected", traj.integrator_stats.rejected},
                           {"artifacts", artifacts}};
        write_json_file(cfg, "trajectory_report.json", out, artifacts);
    }
    return kExitOk;
}

int run_horizons(const RunConfig& cfg) {
    const ModelParams& p = cfg.params;
    std::vector<std::string> artifacts;
    const auto hs = find_horizons(p);
    std::cout << "horizons:";
    for (double h : hs.locations) std::cout << ' ' << h;
    if (hs.locations.empty()) std::cout << " none";
    std::cout << '\n';
    for (const auto& [iv, type] : hs.regions) {
        std::cout << "  (" << iv.lo << ", " << iv.hi << "): "
                  << (type == RegionType::timelike ? "timelike" : "spacelike") << '\n';
    }
    if (cfg.format == OutputFormat::json) {
        nlohmann::json out{{"params", params_json(p)}, {"horizons", horizons_json(hs)}};
        write_json_file(cfg, "horizons.json", out, artifacts);
    } else {
        auto os = open_csv(cfg, "horizons.csv", artifacts);
        os << "location\n";
        for (double h : hs.locations) os << h << '\n';
    }
    return kExitOk;
}

} // namespace bdbgeo
