#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "bdbgeo/params.hpp"

namespace bdbgeo {

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double x) const { return x >= lo && x <= hi; }
    double width() const { return hi - lo; }
    bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
};

enum class FieldKind { airy, static_sine, sampled, custom };

// How a one-coordinate field sits inside the two-particle configuration
// space: either it depends on x1 alone or on the sum u = x1 + x2.
enum class Reduction { coordinate_x1, coordinate_sum };

/// Amplitude field R with analytic (or finite-difference) derivatives in its
/// reduced coordinate, plus the squared view R^2 used by the static model.
/// Immutable after construction; evaluation is pure.
struct AmplitudeField {
    FieldKind kind = FieldKind::custom;
    Reduction reduction = Reduction::coordinate_sum;
    Interval domain;        // positivity bounds: R > 0 inside (metadata)
    Interval eval_domain;   // where the closures evaluate at all

    std::function<double(double)> value;    // R(xi)
    std::function<double(double)> deriv1;   // dR/dxi
    std::function<double(double)> deriv2;   // d2R/dxi2
    std::function<double(double)> deriv3;   // optional; may be empty

    // Optional analytic d/dxi of the curvature ratio R''/R.  The generic
    // quotient route (R''' R - R'' R') / R^2 cancels badly near amplitude
    // zeros; fields whose governing equation fixes the ratio provide it
    // directly.
    std::function<double(double)> curvature_ratio_deriv;

    std::function<double(double)> sq_value;  // R^2 and derivatives
    std::function<double(double)> sq_deriv1;
    std::function<double(double)> sq_deriv2;

    std::function<bool(double)> in_domain;   // pointwise validity

    double reduce(double x1, double x2) const {
        return reduction == Reduction::coordinate_x1 ? x1 : x1 + x2;
    }
    // Weight dxi/dx_axis of the reduction (0 or 1).
    double axis_weight(int axis) const {
        return (reduction == Reduction::coordinate_x1 && axis == 1) ? 0.0 : 1.0;
    }
    double eval_pair(double x1, double x2) const { return value(reduce(x1, x2)); }
    double d1_pair(int axis, double x1, double x2) const {
        const double w = axis_weight(axis);
        return w == 0.0 ? 0.0 : deriv1(reduce(x1, x2)) * w;
    }
    double d2_pair(int axis, double x1, double x2) const {
        const double w = axis_weight(axis);
        return w == 0.0 ? 0.0 : deriv2(reduce(x1, x2)) * w * w;
    }
};

/// Phase field S(x1, x2).  The value closure fixes an arbitrary constant
/// offset and is only meaningful for bookkeeping; the gradients dx1/dx2 are
/// the physical content (guidance momenta).
struct PhaseField {
    FieldKind kind = FieldKind::custom;
    std::function<double(double, double)> value;
    std::function<double(double, double)> dx1;
    std::function<double(double, double)> dx2;
};

/// Amplitude of the linear-potential model: R(z) = A * Ai(w(z)) with
/// w(z) = -(z + K/beta) * beta^{1/3}, beta = 2 M m^2 c^2 / hbar^2.
/// Second and third derivatives come from the governing equation
/// R'' = -(K + beta z) R, so they are exact.  The domain is the interval on
/// which R > 0, bounded by the first zero of Ai.
///
/// Throws DegenerateParameterError when M = 0 and PreconditionError for an
/// otherwise invalid parameter set.
AmplitudeField airy_amplitude(const ModelParams& p);

/// Static sinusoidal solution, represented primarily through its square
/// R^2(u) = (C1 sin(k u) + C2) / (2 m^2 c^2), u = x1 + x2, k = m c / hbar.
/// The R view (value/deriv1/deriv2/deriv3) is exposed on the positivity
/// intervals only; evaluating it where R^2 <= 0 throws DomainError naming
/// the offending interval.
AmplitudeField static_sine_amplitude_sq(const ModelParams& p);

/// Phase field with dS/dx1 = G(u)/R^2(u) = -dS/dx2 (the antisymmetric
/// momentum pair).  S itself is fixed by the line-integral convention
/// S = (G/R^2)(u) * x1, enough for trajectory bookkeeping.  Evaluations
/// where R^2 = 0 throw SingularPointError.
PhaseField static_phase_gradient(const ModelParams& p,
                                 std::function<double(double)> g_of_u,
                                 const AmplitudeField& ampl_sq);

/// Field sampled on a uniform grid: cubic interpolation for values,
/// 4th-order centered stencils for node derivatives in the interior and
/// 2nd-order stencils at the edges.  Requires >= 5 points, a uniform grid,
/// and non-negative samples; evaluation outside the grid throws DomainError.
AmplitudeField sampled_amplitude(const std::vector<double>& coords,
                                 const std::vector<double>& values,
                                 Reduction reduction = Reduction::coordinate_x1);

/// Reads a two-column CSV (coordinate, value; '#' comments allowed, header
/// line required) into a sampled amplitude.
AmplitudeField load_sampled_csv(const std::string& path,
                                Reduction reduction = Reduction::coordinate_x1);

} // namespace bdbgeo
