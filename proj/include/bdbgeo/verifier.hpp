#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bdbgeo/fields.hpp"
#include "bdbgeo/params.hpp"
#include "bdbgeo/quantum_potential.hpp"
#include "bdbgeo/static_model.hpp"

namespace bdbgeo {

enum class EquationId {
    hamilton_jacobi,
    continuity,
    airy_ode,
    q_slope,
    nonlinear_r2,
    chain_consistency,
    bh_chain,
};

std::string equation_name(EquationId id);

struct GridSpec {
    double lo = -2.0;
    double hi = 2.0;
    int n = 401;

    double spacing() const { return n > 1 ? (hi - lo) / (n - 1) : 0.0; }
    double point(int i) const { return n > 1 ? lo + (hi - lo) * i / (n - 1) : lo; }
};

/// Residuals of one differential constraint over a sample grid.  Residuals
/// are always reported both raw and against a stated normalization scale;
/// passed means max_residual / normalization <= tolerance.  Grid points
/// whose evaluation lands outside a field domain are skipped and counted;
/// more than 20% skipped raises CoverageError (a vacuous pass is worse than
/// no answer).
struct ResidualReport {
    EquationId equation = EquationId::airy_ode;
    GridSpec grid;
    double max_residual = 0.0;
    double rms_residual = 0.0;
    double normalization = 1.0;
    double tolerance = 1e-10;
    double max_location = 0.0;
    int evaluated = 0;
    int skipped = 0;
    bool passed = false;

    double normalized_max() const { return max_residual / normalization; }
};

// Default tolerances: analytic-derivative checks 1e-10, finite-difference
// checks 1e-6 (1e-8 for the potential-slope law, which differences an
// affine function).
inline constexpr double kTolAnalytic = 1e-10;
inline constexpr double kTolFd = 1e-6;
inline constexpr double kTolSlope = 1e-8;

/// Static Hamilton-Jacobi constraint
///   (dS/dx1)^2 + (dS/dx2)^2 = 2 m^2 c^2 (1 - Q/(2 m^2 c^2)),
/// sampled along the diagonal x1 = x2 = u/2; normalization 2 m^2 c^2.
ResidualReport check_hamilton_jacobi(const AmplitudeField& ampl, const PhaseField& phase,
                                     const ModelParams& p, const GridSpec& grid,
                                     double tolerance = kTolAnalytic);

/// Continuity constraint d/dx1 (R^2 dS/dx1) + d/dx2 (R^2 dS/dx2) = 0,
/// with the fluxes differenced along each axis (4th-order, step
/// 1e-4 * grid width); normalization max |R^2 dS/dx1|.
ResidualReport check_continuity(const AmplitudeField& ampl, const PhaseField& phase,
                                const GridSpec& grid, double tolerance = kTolAnalytic);

/// Amplitude equation R'' + (K + 2 M m^2 c^2 z / hbar^2) R = 0 using the
/// field's own derivatives; normalization max |R|.
ResidualReport check_airy_ode(const AmplitudeField& ampl, const ModelParams& p,
                              const GridSpec& grid, double tolerance = kTolAnalytic);

/// Potential slope law dQ/dz = 4 M m^2 c^2, centered-differenced on the
/// grid itself; normalization 4 M m^2 c^2.  Needs n >= 3.
ResidualReport check_q_slope(const QuantumPotentialField& q, const ModelParams& p,
                             const GridSpec& grid, double tolerance = kTolSlope);

/// Momentum-balance constraint (see static_model); normalization is the
/// largest term magnitude over the grid.
ResidualReport check_nonlinear(const AmplitudeField& ampl_sq, const GFunction& g,
                               const ModelParams& p, const GridSpec& grid,
                               double tolerance = kTolAnalytic);

/// Consistency of the momentum split: 2 (G/R^2)^2 = 2 m^2 c^2 - Q, with Q
/// from the amplitude in two-particle-sum mode; normalization 2 m^2 c^2.
ResidualReport check_chain_consistency(const AmplitudeField& ampl, const GFunction& g,
                                       const ModelParams& p, const GridSpec& grid,
                                       double tolerance = kTolAnalytic);

/// Composition of the exponential conformal metric with the z->y and y->x
/// maps against the closed horizon-form metric, compared component-wise at
/// the images of grid.n sample points (absolute, normalization 1).
ResidualReport check_bh_chain(const ModelParams& p, const GridSpec& z_grid,
                              double tolerance = kTolAnalytic);

struct ConvergenceResult {
    bool floor_reached = false;
    double slope = 0.0;
    std::vector<double> residuals;
};

/// Least-squares slope of log(max_residual) vs log(h) for a family of
/// residual checks parameterized by step size.  Requires >= 3 step sizes;
/// reports floor_reached instead of a slope when any residual sits at or
/// below the round-off floor.
ConvergenceResult convergence_order(const std::function<ResidualReport(double)>& check_at_h,
                                    const std::vector<double>& h_seq,
                                    double floor = 1e-12);

} // namespace bdbgeo
