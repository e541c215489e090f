#pragma once

#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "bdbgeo/params.hpp"
#include "bdbgeo/quantum_potential.hpp"

namespace bdbgeo {

enum class MetricCoords { z_conformal, y_conformal, x_bh };

/// Diagonal 2D metric ds^2 = g_tt dt^2 + g_xx dx^2 as coordinate functions,
/// signature (-, +).  In conformal coordinates g_xx = -g_tt pointwise; in
/// horizon-form coordinates g_tt * g_xx = -1 wherever both are finite.
struct Metric2D {
    MetricCoords coords = MetricCoords::z_conformal;
    std::function<double(double)> g_tt;
    std::function<double(double)> g_xx;
    std::vector<double> singular_points;   // component zero or divergence
};

/// Invertible coordinate change with explicit Jacobian, so pushforwards are
/// computed from closures rather than by sampling differences.
struct CoordinateMap {
    std::function<double(double)> forward;   // new(old)
    std::function<double(double)> inverse;   // old(new)
    std::function<double(double)> jacobian;  // d(new)/d(old) at old
    Interval domain;                         // old-coordinate validity
};

/// Transports a metric through a map: g'_tt(v) = g_tt(old(v)),
/// g'_xx(v) = g_xx(old(v)) / J(old(v))^2.
Metric2D pushforward(const Metric2D& g, const CoordinateMap& map, MetricCoords new_coords);

/// Conformal factor to first order: Omega^2 = 1 - Q/(2 m^2 c^2).
/// Sign changes of Omega^2 inside the field domain are recorded as
/// singular points (the tachyonic boundary).
Metric2D conformal_metric_linear(const QuantumPotentialField& q, const ModelParams& p);

/// Exponential conformal factor Omega^2 = exp(-Q/(2 m^2 c^2)), strictly
/// positive.
Metric2D conformal_metric_exp(const QuantumPotentialField& q, const ModelParams& p);

/// Coordinate change 2 M y = -Q(z)/(2 m^2 c^2), i.e. y(z) = -Q(z)/(4 M m^2 c^2),
/// restricted to a window where it is strictly monotone (checked by sampling;
/// a sign change of the derivative raises PreconditionError naming the
/// subinterval).  The inverse solves y(z) = y* by bracketing.
CoordinateMap z_to_y(const QuantumPotentialField& q, const ModelParams& p, Interval window);

/// Coordinate change 2 M x = C + e^{2 M y}, mapping y in R onto
/// x in (C/(2M), inf); the inverse throws DomainError at or below the edge.
CoordinateMap y_to_x(const ModelParams& p);

/// Horizon-form metric ds^2 = -(2M|x| - C) dt^2 + dx^2/(2M|x| - C) on the
/// whole line (symmetric extension).  The extension beyond the image of the
/// conformal chain lies outside the construction's validity and is exposed
/// as-is, without any claim attached.
Metric2D bh_metric(const ModelParams& p);

enum class RegionType { timelike, spacelike };

struct HorizonSet {
    std::vector<double> locations;
    std::vector<std::pair<Interval, RegionType>> regions;
};

/// Zeros of alpha(x) = 2M|x| - C: {-C/2M, +C/2M} when C and M share a sign,
/// {0} when C = 0, empty otherwise.  Closed forms are cross-checked with a
/// bracketing root refinement.  Throws DegenerateParameterError when M = 0.
HorizonSet find_horizons(const ModelParams& p);

/// x-interval on which the conformal chain stays inside |2Mz| <= threshold.
/// The exact image of that z-window is asymmetric around the center
/// (1+C)/(2M): [center - (1-e^-t)/(2M), center + (e^t - 1)/(2M)].  epsilon
/// reports the outer (larger) excursion; containment tests use lo/hi.
struct ValidityWindow {
    double center = 0.0;
    double epsilon = 0.0;
    double lo = 0.0, hi = 0.0;
    double threshold = 0.0;
    char coord = 'x';

    bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Requires M > 0 and threshold in (0, ln 2); beyond ln 2 the window
/// invariant epsilon < 1/(2M) fails, and the smallness assumption is long
/// gone anyway.
ValidityWindow validity_window(const ModelParams& p, double threshold = 0.05);

/// Conformal factor 1 + b^2/(x - x0)^2 of the conformally flat wormhole
/// profile; the divergence at x0 reads as space opening out to a second
/// asymptotic region rather than a true singularity.  Throws
/// SingularPointError at x = x0.
double hawking_conformal_factor(double x, double b, double x0);

/// Metric grid export: columns coord, g_tt, g_xx, alpha, in_validity_window.
void write_metric_grid_csv(std::ostream& os, const Metric2D& m, const ModelParams& p,
                           double lo, double hi, int n, const ValidityWindow* vw);

} // namespace bdbgeo
