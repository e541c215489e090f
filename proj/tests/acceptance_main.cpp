// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Tolerances are pinned here, not configurable.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bdbgeo/errors.hpp"
#include "bdbgeo/fields.hpp"
#include "bdbgeo/geometry.hpp"
#include "bdbgeo/quantum_potential.hpp"
#include "bdbgeo/static_model.hpp"
#include "bdbgeo/trajectories.hpp"
#include "bdbgeo/verifier.hpp"

using namespace bdbgeo;

namespace {

constexpr double kPi = 3.14159265358979323846;

int failures = 0;

void criterion(int number, const std::string& label, const std::function<bool()>& body) {
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" (exception: ") + e.what() + ")";
    }
    std::printf("%s criterion %2d: %s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
                note.c_str());
    if (!ok) ++failures;
}

bool check(bool cond, const char* what) {
    if (!cond) std::printf("       failed: %s\n", what);
    return cond;
}

AmplitudeField resample(const AmplitudeField& f, double lo, double hi, double h) {
    const int n = static_cast<int>(std::round((hi - lo) / h)) + 1;
    std::vector<double> xs(n), vs(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = lo + (hi - lo) * i / (n - 1);
        vs[i] = f.value(xs[i]);
    }
    return sampled_amplitude(xs, vs);
}

// 1. amplitude equation: analytic residual <= 1e-10 on [-2, 2] x 401;
//    FD residual <= 1e-6 with convergence slope 4 +- 0.3.
bool criterion_airy_ode() {
    const auto p = natural_units();
    const auto ampl = airy_amplitude(p);
    const GridSpec grid{-2.0, 2.0, 401};
    const auto analytic = check_airy_ode(ampl, p, grid, 1e-10);
    bool ok = check(analytic.normalized_max() <= 1e-10, "analytic residual <= 1e-10");

    const auto fd = check_airy_ode(resample(ampl, -2.5, 2.5, 1e-3), p, grid, 1e-6);
    ok = check(fd.normalized_max() <= 1e-6, "FD residual <= 1e-6") && ok;

    // convergence is measured at sample nodes (pure stencil truncation)
    const auto conv = convergence_order(
        [&](double h) {
            const GridSpec node_grid{-2.0, 2.0, static_cast<int>(std::round(4.0 / h)) + 1};
            return check_airy_ode(resample(ampl, -3.0, 3.0, h), p, node_grid, 1e-6);
        },
        {0.2, 0.1, 0.05});
    ok = check(!conv.floor_reached, "FD residuals above round-off floor") && ok;
    ok = check(std::fabs(conv.slope - 4.0) <= 0.3, "convergence slope 4 +- 0.3") && ok;
    return ok;
}

// 2. potential slope law within 1e-8 for K in {0, 2}, M in {0.1, 0.5}.
bool criterion_q_slope() {
    bool ok = true;
    for (const double k_const : {0.0, 2.0}) {
        for (const double big_m : {0.1, 0.5}) {
            auto p = natural_units();
            p.k_const = k_const;
            p.big_m = big_m;
            const auto q = quantum_potential(airy_amplitude(p), QpMode::epr_reduced, p);
            const auto rep = check_q_slope(q, p, GridSpec{-1.0, 1.0, 201}, 1e-8);
            ok = check(rep.normalized_max() <= 1e-8, "slope residual <= 1e-8 normalized") && ok;
        }
    }
    return ok;
}

// 3. conformal chain reproduces the horizon-form metric to 1e-10 with
//    g_tt * g_xx = -1 within 1e-12, over 100 samples.
bool criterion_chain() {
    const auto p = natural_units();
    const auto q = quantum_potential(airy_amplitude(p), QpMode::epr_reduced, p);
    const auto conformal = conformal_metric_exp(q, p);
    const auto zy = z_to_y(q, p, Interval{-2.2, 2.2});
    const auto yx = y_to_x(p);
    const auto chain = pushforward(pushforward(conformal, zy, MetricCoords::y_conformal), yx,
                                   MetricCoords::x_bh);
    const auto bh = bh_metric(p);
    double worst = 0.0, worst_prod = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double z = -2.0 + 4.0 * i / 99.0;
        const double x = yx.forward(zy.forward(z));
        worst = std::max({worst, std::fabs(chain.g_tt(x) - bh.g_tt(x)),
                          std::fabs(chain.g_xx(x) - bh.g_xx(x))});
        worst_prod = std::max(worst_prod, std::fabs(chain.g_tt(x) * chain.g_xx(x) + 1.0));
    }
    bool ok = check(worst <= 1e-10, "component error <= 1e-10");
    ok = check(worst_prod <= 1e-12, "g_tt * g_xx = -1 within 1e-12") && ok;
    return ok;
}

// 4. horizons at +-C/(2M) within 1e-12 when signs agree, empty otherwise,
//    {0} for C = 0; spacelike between, timelike outside for C, M > 0.
bool criterion_horizons() {
    bool ok = true;
    {
        auto p = natural_units();
        p.big_m = 1.0;
        p.c_const = 2.0;
        const auto hs = find_horizons(p);
        ok = check(hs.locations.size() == 2, "two horizons for C, M > 0") && ok;
        if (hs.locations.size() == 2) {
            ok = check(std::fabs(hs.locations[0] + 1.0) <= 1e-12, "left horizon at -C/(2M)") && ok;
            ok = check(std::fabs(hs.locations[1] - 1.0) <= 1e-12, "right horizon at C/(2M)") && ok;
        }
        ok = check(hs.regions.size() == 3 && hs.regions[0].second == RegionType::timelike &&
                       hs.regions[1].second == RegionType::spacelike &&
                       hs.regions[2].second == RegionType::timelike,
                   "spacelike between, timelike outside") && ok;
    }
    {
        auto p = natural_units();
        p.big_m = 0.5;
        p.c_const = 1.25;
        const auto hs = find_horizons(p);
        ok = check(hs.locations.size() == 2 && std::fabs(hs.locations[1] - 1.25) <= 1e-12,
                   "horizon at C/(2M) for M = 0.5") && ok;
    }
    {
        auto p = natural_units();
        p.big_m = 1.0;
        p.c_const = -1.0;
        ok = check(find_horizons(p).locations.empty(), "no horizons for opposite signs") && ok;
    }
    {
        auto p = natural_units();
        p.big_m = 1.0;
        p.c_const = 0.0;
        const auto hs = find_horizons(p);
        ok = check(hs.locations.size() == 1 && hs.locations[0] == 0.0, "single horizon at 0") && ok;
    }
    return ok;
}

// 5. every x flagged valid maps back to |2Mz| <= threshold within 1e-12.
bool criterion_validity() {
    bool ok = true;
    for (const double big_m : {0.1, 0.5}) {
        auto p = natural_units();
        p.big_m = big_m;
        const double threshold = 0.05;
        const auto vw = validity_window(p, threshold);
        const auto q = quantum_potential(airy_amplitude(p), QpMode::epr_reduced, p);
        const auto zy = z_to_y(q, p, Interval{-1.0, 1.0});
        const auto yx = y_to_x(p);
        double worst = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const double x = vw.lo + (vw.hi - vw.lo) * i / 100.0;
            if (!vw.contains(x)) continue;
            const double z = zy.inverse(yx.inverse(x));
            worst = std::max(worst, std::fabs(2.0 * big_m * z));
        }
        ok = check(worst <= threshold + 1e-12, "|2Mz| <= threshold within 1e-12") && ok;
    }
    return ok;
}

// 6. momentum-balance residual <= 1e-10 normalized on the R^2 > 0 domain
//    for (C1, C2) in {(1,2), (2,1) on valid intervals, (0,2)}.
bool criterion_nonlinear() {
    bool ok = true;
    const std::vector<std::tuple<double, double, GridSpec>> cases = {
        {1.0, 2.0, GridSpec{-2.0 * kPi, 2.0 * kPi, 401}},
        {2.0, 1.0, GridSpec{0.0, kPi, 401}},
        {0.0, 2.0, GridSpec{-5.0, 5.0, 401}},
    };
    for (const auto& [c1, c2, grid] : cases) {
        auto p = natural_units();
        p.c1 = c1;
        p.c2 = c2;
        const auto ampl = static_sine_amplitude_sq(p);
        const auto g = derive_g(p);
        const auto rep = check_nonlinear(ampl, g, p, grid, 1e-10);
        ok = check(rep.normalized_max() <= 1e-10, "nonlinear residual <= 1e-10") && ok;
    }
    return ok;
}

// 7. 2 (G/R^2)^2 = 2 m^2 c^2 - Q within 1e-10 on the same domains.
bool criterion_chain_consistency() {
    bool ok = true;
    const std::vector<std::tuple<double, double, GridSpec>> cases = {
        {1.0, 2.0, GridSpec{-2.0 * kPi, 2.0 * kPi, 401}},
        {2.0, 1.0, GridSpec{0.02, kPi - 0.02, 401}},
        {0.0, 2.0, GridSpec{-5.0, 5.0, 401}},
    };
    for (const auto& [c1, c2, grid] : cases) {
        auto p = natural_units();
        p.c1 = c1;
        p.c2 = c2;
        const auto ampl = static_sine_amplitude_sq(p);
        const auto g = derive_g(p);
        const auto rep = check_chain_consistency(ampl, g, p, grid, 1e-10);
        ok = check(rep.normalized_max() <= 1e-10, "consistency residual <= 1e-10") && ok;
    }
    return ok;
}

// 8. singularities of the static metric at {7pi/6, 11pi/6} within 1e-12 for
//    C1 = 2, C2 = 1, with |g11| > 1e4 within 1e-3 of each root.
bool criterion_singularities() {
    auto p = natural_units();
    p.c1 = 2.0;
    p.c2 = 1.0;
    const auto roots = find_metric_singularities(p, Interval{0.0, 2.0 * kPi});
    bool ok = check(roots.size() == 2, "two roots in [0, 2pi]");
    if (ok) {
        ok = check(std::fabs(roots[0] - 7.0 * kPi / 6.0) <= 1e-12, "root at 7pi/6") && ok;
        ok = check(std::fabs(roots[1] - 11.0 * kPi / 6.0) <= 1e-12, "root at 11pi/6") && ok;
    }
    const auto ampl = static_sine_amplitude_sq(p);
    const auto g = derive_g(p);
    const double probes[2] = {7.0 * kPi / 6.0 - 1e-3, 11.0 * kPi / 6.0 + 1e-3};
    for (const double u : probes)
        ok = check(std::fabs(g11_derived(p, g, ampl, u)) > 1e4, "|g11| > 1e4 near root") && ok;
    return ok;
}

// 9. both metric forms are emitted with their discrepancy; the derived form
//    satisfies criteria 6-7; both diverge at the same denominator zeros.
bool criterion_g11_comparison() {
    auto p = natural_units();
    const auto ampl = static_sine_amplitude_sq(p);
    const auto g = derive_g(p);
    bool ok = true;
    for (double u : {0.0, 0.4, 1.1, 2.9}) {
        const auto rep = compare_g11(p, g, ampl, u);
        ok = check(std::isfinite(rep.g11_derived) && std::isfinite(rep.g11_alt_form),
                   "both forms evaluable") && ok;
        ok = check(rep.discrepancy ==
                       std::fabs(rep.g11_derived - rep.g11_alt_form),
                   "discrepancy is the pointwise difference") && ok;
    }
    // shared poles for C1 = 2, C2 = 1
    p.c1 = 2.0;
    p.c2 = 1.0;
    const auto ampl2 = static_sine_amplitude_sq(p);
    const auto g2 = derive_g(p);
    const double u_near = 7.0 * kPi / 6.0 - 1e-3;
    ok = check(std::fabs(g11_derived(p, g2, ampl2, u_near)) > 1e4 &&
                   std::fabs(g11_alt_form(p, u_near)) > 1e4,
               "shared pole locations") && ok;
    return ok;
}

// 10. tachyon flag iff Q > 2 m^2 c^2, including the exact threshold.
bool criterion_tachyon() {
    const auto p = natural_units();
    bool ok = true;
    for (double q = -4.0; q <= 6.0; q += 0.05)
        ok = ok && (effective_mass_sq(q, p).tachyonic == (q > p.q0()));
    ok = check(ok, "flag matches sign of Q - 2 m^2 c^2 on the sweep");
    ok = check(!effective_mass_sq(p.q0(), p).tachyonic, "threshold itself non-tachyonic") && ok;
    ok = check(effective_mass_sq(p.q0() + 1e-12, p).tachyonic, "just above threshold") && ok;
    return ok;
}

// 11. trajectory conservation at tol 1e-10 over span 10, and detection of a
//     1% corruption of dS/dx2.
bool criterion_trajectories() {
    const auto p = natural_units();
    const auto ampl = static_sine_amplitude_sq(p);
    const auto g = derive_g(p);
    const auto phase = static_phase_gradient(p, [g](double u) { return g.eval(u); }, ampl);
    const auto traj = integrate_pair(phase, 0.3, 0.2, 10.0, p, 1e-10);
    const auto [du, dp] = epr_drift(traj);
    bool ok = check(traj.stop == StopReason::completed, "span completed");
    ok = check(du <= 1e-9, "|delta(x1 + x2)| <= 1e-9") && ok;
    ok = check(dp <= 1e-9, "max |p1 + p2| <= 1e-9") && ok;

    PhaseField bad = phase;
    bad.dx2 = [inner = phase.dx1](double a, double b) { return -0.99 * inner(a, b); };
    const auto corrupted = integrate_pair(bad, 0.3, 0.2, 10.0, p, 1e-10);
    const auto [du2, dp2] = epr_drift(corrupted);
    ok = check(dp2 > 1e-3, "1% corruption detected") && ok;
    (void)du2;
    return ok;
}

// 12. detector property: every check fails under a 1% perturbation of its
//     defining field.
bool criterion_detectors() {
    const auto p = natural_units();
    bool ok = true;

    // amplitude equation and potential slope: 1% position-dependent factor
    {
        const auto ampl = airy_amplitude(p);
        AmplitudeField wobbly = ampl;
        auto w = [](double x) { return 1.0 + 0.01 * std::sin(3.0 * x); };
        auto w1 = [](double x) { return 0.03 * std::cos(3.0 * x); };
        auto w2 = [](double x) { return -0.09 * std::sin(3.0 * x); };
        wobbly.value = [=](double x) { return ampl.value(x) * w(x); };
        wobbly.deriv1 = [=](double x) { return ampl.deriv1(x) * w(x) + ampl.value(x) * w1(x); };
        wobbly.deriv2 = [=](double x) {
            return ampl.deriv2(x) * w(x) + 2.0 * ampl.deriv1(x) * w1(x) + ampl.value(x) * w2(x);
        };
        wobbly.deriv3 = nullptr;
        const GridSpec grid{-2.0, 2.0, 401};
        ok = check(!check_airy_ode(wobbly, p, grid).passed, "amplitude-equation detector") && ok;
        const auto q = quantum_potential(wobbly, QpMode::epr_reduced, p);
        ok = check(!check_q_slope(q, p, grid).passed, "slope-law detector") && ok;
    }

    // static-model checks: 1% scalings of the defining fields
    {
        const auto ampl = static_sine_amplitude_sq(p);
        const auto g = derive_g(p);
        const auto phase = static_phase_gradient(p, [g](double u) { return g.eval(u); }, ampl);
        const GridSpec grid{-2.0, 2.0, 401};

        const auto g_scaled = user_g([g](double u) { return 1.01 * g.eval(u); });
        ok = check(!check_nonlinear(ampl, g_scaled, p, grid).passed, "momentum-balance detector") && ok;
        ok = check(!check_chain_consistency(ampl, g_scaled, p, grid).passed,
                   "consistency detector") && ok;

        PhaseField hj_bad = phase;
        hj_bad.dx1 = [inner = phase.dx1](double a, double b) { return 1.01 * inner(a, b); };
        hj_bad.dx2 = [inner = phase.dx2](double a, double b) { return 1.01 * inner(a, b); };
        ok = check(!check_hamilton_jacobi(ampl, hj_bad, p, grid).passed,
                   "energy-balance detector") && ok;

        PhaseField cont_bad = phase;
        cont_bad.dx1 = [inner = phase.dx1](double a, double b) { return 1.01 * inner(a, b); };
        ok = check(!check_continuity(ampl, cont_bad, grid).passed, "continuity detector") && ok;
    }
    return ok;
}

} // namespace

int main() {
    criterion(1, "amplitude equation (analytic 1e-10, FD 1e-6, slope 4 +- 0.3)",
              criterion_airy_ode);
    criterion(2, "potential slope 4 M m^2 c^2 within 1e-8 (K in {0,2}, M in {0.1,0.5})",
              criterion_q_slope);
    criterion(3, "conformal chain reproduces horizon-form metric (1e-10 / 1e-12)",
              criterion_chain);
    criterion(4, "horizon locations and region classification (1e-12)", criterion_horizons);
    criterion(5, "validity window maps back to |2Mz| <= threshold (1e-12)", criterion_validity);
    criterion(6, "momentum-balance residual <= 1e-10 on valid domains", criterion_nonlinear);
    criterion(7, "momentum-split consistency <= 1e-10", criterion_chain_consistency);
    criterion(8, "metric singularities at {7pi/6, 11pi/6} (1e-12), poles > 1e4",
              criterion_singularities);
    criterion(9, "both metric forms emitted with discrepancy, shared poles",
              criterion_g11_comparison);
    criterion(10, "tachyon flag iff Q > 2 m^2 c^2 (exact threshold included)", criterion_tachyon);
    criterion(11, "EPR conservation (1e-9 at tol 1e-10), corruption detected",
              criterion_trajectories);
    criterion(12, "every check fails under a 1% field perturbation", criterion_detectors);

    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
