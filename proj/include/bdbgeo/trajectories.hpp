#pragma once

#include <iosfwd>
#include <vector>

#include "bdbgeo/fields.hpp"
#include "bdbgeo/params.hpp"

namespace bdbgeo {

enum class StopReason { completed, boundary, singular_step_underflow };

/// Pair of guided trajectories dx_i/dlambda = (dS/dx_i)/m, with the momenta
/// recorded along the way.  lambda is an affine parameter normalized by
/// dx/dlambda = p/m; no proper-time meaning is claimed.
struct TrajectoryPair {
    std::vector<double> lambda_samples;
    std::vector<double> x1_samples, x2_samples;
    std::vector<double> p1_samples, p2_samples;
    StopReason stop = StopReason::completed;

    struct Stats {
        long accepted = 0;
        long rejected = 0;
        double max_error_estimate = 0.0;
    } integrator_stats;

    std::size_t size() const { return lambda_samples.size(); }
};

/// Integrates the guided pair from (x1_0, x2_0) over lambda in
/// [0, lambda_span] with an adaptive embedded Runge-Kutta 5(4) scheme,
/// local error <= tol per step.  Stops early (flagged) when the state
/// approaches a domain edge or zero-amplitude surface of the supplying
/// field within 1e-6 of the coordinate scale, and reports a partial
/// trajectory on step-size underflow near singular points.
///
/// Throws DomainError when the start is outside the phase field's domain
/// and PreconditionError for tol <= 0.
TrajectoryPair integrate_pair(const PhaseField& phase, double x1_0, double x2_0,
                              double lambda_span, const ModelParams& p, double tol);

/// EPR drift diagnostics: max |u(lambda) - u(0)| with u = x1 + x2, and
/// max |p1 + p2| over the samples.
std::pair<double, double> epr_drift(const TrajectoryPair& traj);

/// CSV export: lambda, x1, x2, u, p1, p2.
void write_trajectory_csv(std::ostream& os, const TrajectoryPair& traj);

} // namespace bdbgeo
