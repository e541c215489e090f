#include "bdbgeo/trajectories.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

#include "bdbgeo/errors.hpp"

namespace bdbgeo {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 35.0 / 384.0 - 5179.0 / 57600.0;
constexpr double e3 = 500.0 / 1113.0 - 7571.0 / 16695.0;
constexpr double e4 = 125.0 / 192.0 - 393.0 / 640.0;
constexpr double e5 = -2187.0 / 6784.0 + 92097.0 / 339200.0;
constexpr double e6 = 11.0 / 84.0 - 187.0 / 2100.0;
constexpr double e7 = -1.0 / 40.0;

using State = std::array<double, 2>;

} // namespace

TrajectoryPair integrate_pair(const PhaseField& phase, double x1_0, double x2_0,
                              double lambda_span, const ModelParams& p, double tol) {
    if (!(tol > 0.0))
        throw PreconditionError("integrate_pair: tol must be > 0");
    if (!phase.dx1 || !phase.dx2)
        throw PreconditionError("integrate_pair: phase field must provide both gradients");

    const double inv_m = 1.0 / p.m;
    auto rhs = [&](const State& x, State& dx) {
        dx[0] = phase.dx1(x[0], x[1]) * inv_m;
        dx[1] = phase.dx2(x[0], x[1]) * inv_m;
    };

    TrajectoryPair traj;
    State x{x1_0, x2_0};
    State k1;
    try {
        rhs(x, k1);   // also validates the start point
    } catch (const Error& e) {
        throw DomainError(std::string("integrate_pair: start outside domain: ") + e.what());
    }

    auto record = [&](double lam, const State& s) {
        traj.lambda_samples.push_back(lam);
        traj.x1_samples.push_back(s[0]);
        traj.x2_samples.push_back(s[1]);
        traj.p1_samples.push_back(phase.dx1(s[0], s[1]));
        traj.p2_samples.push_back(phase.dx2(s[0], s[1]));
    };
    record(0.0, x);
    if (lambda_span <= 0.0) return traj;

    const double coord_scale = std::max({1.0, std::fabs(x1_0), std::fabs(x2_0)});
    const double h_min = 1e-14 * std::max(1.0, lambda_span);
    double h = std::min(lambda_span, 1e-2 * std::max(1.0, lambda_span));
    double lam = 0.0;

    while (lam < lambda_span) {
        h = std::min(h, lambda_span - lam);
        State k2, k3, k4, k5, k6, k7, xt;
        bool ok = true;
        State x5{}, err{};
        try {
            xt = {x[0] + h * a21 * k1[0], x[1] + h * a21 * k1[1]};
            rhs(xt, k2);
            xt = {x[0] + h * (a31 * k1[0] + a32 * k2[0]), x[1] + h * (a31 * k1[1] + a32 * k2[1])};
            rhs(xt, k3);
            xt = {x[0] + h * (a41 * k1[0] + a42 * k2[0] + a43 * k3[0]),
                  x[1] + h * (a41 * k1[1] + a42 * k2[1] + a43 * k3[1])};
            rhs(xt, k4);
            xt = {x[0] + h * (a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0]),
                  x[1] + h * (a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1])};
            rhs(xt, k5);
            xt = {x[0] + h * (a61 * k1[0] + a62 * k2[0] + a63 * k3[0] + a64 * k4[0] + a65 * k5[0]),
                  x[1] + h * (a61 * k1[1] + a62 * k2[1] + a63 * k3[1] + a64 * k4[1] + a65 * k5[1])};
            rhs(xt, k6);
            for (int i = 0; i < 2; ++i)
                x5[i] = x[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
            rhs(x5, k7);
            for (int i = 0; i < 2; ++i)
                err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        } catch (const Error&) {
            ok = false;   // a stage left the field's domain
        }

        if (!ok) {
            // A stage crossed a domain edge / zero-amplitude surface.  Once
            // the step's coordinate extent shrinks below 1e-6 of the
            // coordinate scale, the boundary is considered reached.
            ++traj.integrator_stats.rejected;
            const double speed = std::max({std::fabs(k1[0]), std::fabs(k1[1]), 1e-30});
            if (h * speed < 1e-6 * coord_scale) {
                traj.stop = StopReason::boundary;
                return traj;
            }
            h *= 0.5;
            continue;
        }

        const double err_norm = std::max(std::fabs(err[0]), std::fabs(err[1]));
        if (err_norm <= tol) {
            lam += h;
            x = x5;
            k1 = k7;   // FSAL
            record(lam, x);
            ++traj.integrator_stats.accepted;
            traj.integrator_stats.max_error_estimate =
                std::max(traj.integrator_stats.max_error_estimate, err_norm);
            const double grow = err_norm > 0.0 ? 0.9 * std::pow(tol / err_norm, 0.2) : 5.0;
            h *= std::clamp(grow, 0.2, 5.0);
            continue;
        }
        ++traj.integrator_stats.rejected;
        h *= std::max(0.2, 0.9 * std::pow(tol / err_norm, 0.2));
        if (h < h_min) {
            traj.stop = StopReason::singular_step_underflow;
            return traj;
        }
    }
    return traj;
}

std::pair<double, double> epr_drift(const TrajectoryPair& traj) {
    if (traj.size() == 0)
        throw PreconditionError("epr_drift: empty trajectory");
    const double u0 = traj.x1_samples[0] + traj.x2_samples[0];
    double du = 0.0, dp = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        du = std::max(du, std::fabs(traj.x1_samples[i] + traj.x2_samples[i] - u0));
        dp = std::max(dp, std::fabs(traj.p1_samples[i] + traj.p2_samples[i]));
    }
    return {du, dp};
}

void write_trajectory_csv(std::ostream& os, const TrajectoryPair& traj) {
    os << "lambda,x1,x2,u,p1,p2\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        os << traj.lambda_samples[i] << ',' << traj.x1_samples[i] << ','
           << traj.x2_samples[i] << ',' << traj.x1_samples[i] + traj.x2_samples[i]
           << ',' << traj.p1_samples[i] << ',' << traj.p2_samples[i] << '\n';
    }
}

} // namespace bdbgeo
