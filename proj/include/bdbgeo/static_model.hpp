#pragma once

#include <functional>
#include <vector>

#include "bdbgeo/fields.hpp"
#include "bdbgeo/params.hpp"

namespace bdbgeo {

enum class GDerivation { oracle_substitution, user_supplied };

/// Continuity-solution function G(u) with its 8 G^2 bookkeeping value.
/// g_sq8 may go negative where the candidate solution admits no real G;
/// those intervals are excluded from the domain of eval and reported by
/// excluded_intervals, never evaluated through.
struct GFunction {
    GDerivation derivation = GDerivation::user_supplied;
    std::function<double(double)> g_sq8;   // 8 G(u)^2, raw bookkeeping

    /// Positive branch +sqrt(8G^2 / 8); throws DomainError where 8G^2 < 0.
    double eval(double u) const;

    /// Subintervals of the window where 8 G^2 < 0 (scan + refinement).
    std::vector<Interval> excluded_intervals(const Interval& window) const;
};

/// G obtained by substituting the amplitude into the momentum-balance
/// constraint:  8 G^2 = 8 m^2 c^2 R^4 - 2 hbar^2 (dR^2/du)^2
///                      + 4 hbar^2 R^2 d^2R^2/du^2.
/// The sign of G is a labeling choice (the antisymmetric pair swaps under
/// it); the positive branch is returned.
GFunction derive_g(const ModelParams& p);

/// Same substitution applied to an arbitrary amplitude (used by tests).
GFunction derive_g_from(const AmplitudeField& ampl_sq, const ModelParams& p);

/// Wraps a user-supplied G(u).
GFunction user_g(std::function<double(double)> g);

/// Left-hand side of the momentum-balance constraint at u (both particle
/// derivatives reduce to d/du):
///   8G^2 + hbar^2 (dR^2)^2 - 2 hbar^2 R^2 d^2R^2
///       + hbar^2 (dR^2)^2 - 2 hbar^2 R^2 d^2R^2 - 8 m^2 c^2 R^4.
/// Zero for a consistent (R^2, G) pair.  Throws DomainError outside the
/// R^2 > 0 domain.
double nonlinear_residual(const AmplitudeField& ampl_sq, const GFunction& g,
                          const ModelParams& p, double u);

/// Largest magnitude among the constraint's terms at u, the natural
/// normalization scale for the residual.
double nonlinear_term_scale(const AmplitudeField& ampl_sq, const GFunction& g,
                            const ModelParams& p, double u);

/// Effective metric component g11 = (1/(c^2 m^2)) (G/R^2)^2, computed from
/// the 8G^2 bookkeeping so the Laurent behaviour at R^2 -> 0 is preserved.
/// Throws SingularPointError at R^2 = 0.
double g11_derived(const ModelParams& p, const GFunction& g,
                   const AmplitudeField& ampl_sq, double u);

/// Alternative closed-form variant of g11,
///   (1/4) [2 C1^2 sin^2(ku) - C1^2 cos^2(ku) - 2 C1 C2 sin(ku)]
///       / (C1 sin(ku) + C2)^2,
/// kept verbatim as a comparison target only: its numerator differs from
/// the substitution result by 8 C1 C2 sin(ku) + 4 C2^2, while both share
/// the same denominator zeros.  Throws SingularPointError when the
/// denominator vanishes.
double g11_alt_form(const ModelParams& p, double u);

struct MetricComponentReport {
    double u = 0.0;
    double g11_derived = 0.0;
    double g11_alt_form = 0.0;
    double discrepancy = 0.0;
};

MetricComponentReport compare_g11(const ModelParams& p, const GFunction& g,
                                  const AmplitudeField& ampl_sq, double u);

/// All u in the window with C1 sin(k u) + C2 = 0: arcsin branches
/// enumerated analytically, then refined by bracketing to 1e-12 (tangency
/// roots, |C1| = |C2|, are refined through the derivative, which does
/// change sign there).  Empty when |C2| > |C1| or C1 = 0.
std::vector<double> find_metric_singularities(const ModelParams& p, const Interval& window);

} // namespace bdbgeo
