#pragma once

#include <functional>
#include <iosfwd>

#include "bdbgeo/fields.hpp"
#include "bdbgeo/params.hpp"

namespace bdbgeo {

enum class QpMode { two_particle_sum, epr_reduced };

/// Quantum potential derived from an amplitude field (static case):
///
///   two_particle_sum : Q = -hbar^2 (d2R/dx1^2 + d2R/dx2^2) / R, evaluated
///                      through the field's reduction chain rule;
///   epr_reduced      : Q(xi) = -2 hbar^2 R''(xi) / R(xi) regardless of the
///                      reduction (both particle terms contribute equally on
///                      the correlated configuration).
///
/// For a sum-reduced field the two modes coincide.  Applying
/// two_particle_sum to an x1-reduced field realizes the single-term reading
/// (half the default slope); that combination is kept available for study
/// but is not what the factories below produce by default.
struct QuantumPotentialField {
    QpMode mode = QpMode::epr_reduced;
    AmplitudeField source;
    double hbar2 = 1.0;
    Interval domain;

    double eval(double xi) const;
    double operator()(double xi) const { return eval(xi); }
    double eval_pair(double x1, double x2) const { return eval(source.reduce(x1, x2)); }

    /// dQ/dxi: analytic when the source field carries a third derivative,
    /// otherwise a 4th-order finite difference of eval.
    double deriv(double xi) const;
};

struct EffectiveMassSq {
    double value = 0.0;
    bool tachyonic = false;
};

QuantumPotentialField quantum_potential(const AmplitudeField& ampl, QpMode mode,
                                        const ModelParams& p);

/// M^2 = m^2 (1 - Q / (2 m^2 c^2)); tachyonic iff the value is negative
/// (the threshold Q = 2 m^2 c^2 itself counts as non-tachyonic).
EffectiveMassSq effective_mass_sq(double q_value, const ModelParams& p);

/// |Q / (2 m^2 c^2)|, compared by callers against a smallness threshold
/// (default 0.1) to decide whether the exponential conformal factor is
/// trustworthy.
double validity_margin(double q_value, const ModelParams& p);

/// Grid dump: columns coordinate, Q, margin, tachyonic (0/1).  Points where
/// Q is singular or out of domain are skipped and counted in a trailing
/// comment.
void write_q_grid_csv(std::ostream& os, const QuantumPotentialField& q,
                      const ModelParams& p, double lo, double hi, int n);

} // namespace bdbgeo
