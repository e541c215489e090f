#pragma once

namespace bdbgeo {

enum class AiryMethod { series, asymptotic, quadrature };

struct AiryValue {
    double ai = 0.0;
    double ai_prime = 0.0;
    AiryMethod method = AiryMethod::series;
};

/// Airy function Ai(w) and its derivative, absolute error <= 1e-10 on
/// [-20, 10].
///
/// Branch selection: Maclaurin series (summed in long double) on
/// [-7.0, 5.0); asymptotic expansions with optimal truncation outside.  The
/// switchover points are asymmetric: the oscillatory expansion's optimal-
/// truncation floor ~ exp(-4|w|^{3/2}/3) only drops below 1e-10 near
/// |w| = 7 on the negative axis, while the monotone branch is already good
/// at w = 5.  The branches agree to better than 1e-10 inside the overlap
/// windows [-8, -6.5] and [4.7, 5.5] (measured: 9.5e-13 and 4.3e-12 at the
/// switch points themselves).
///
/// Throws DomainError for non-finite input.
AiryValue airy_ai(double w);

/// Direct quadrature of (1/pi) * Integral_0^{s_max} cos(w s + s^3/3) ds,
/// the oscillatory integral representation of Ai(w), for cross-checking
/// airy_ai.
///
/// Scheme: Gauss-Legendre panels up to the end of the stationary-phase
/// region, then one panel per half-period of the integrand with iterated
/// averaging (Euler-style) acceleration of the alternating lobe series.
/// The value returned estimates the full improper integral using lobes
/// drawn from [0, s_max] only; the tail estimate is the last acceleration
/// increment (or a coarse bound when no alternation was reached).
///
/// n is the evaluation-point budget.  Throws PreconditionError unless
/// s_max > 0 and n >= 100; throws AccuracyError carrying the tail estimate
/// when it exceeds 1e-8.
double airy_integral_check(double w, double s_max, int n);

namespace detail {

// Individual evaluation branches, exposed so the overlap windows can be
// tested directly.
void airy_series(double w, double& ai, double& aip);
void airy_asymptotic_pos(double w, double& ai, double& aip);
void airy_asymptotic_neg(double w, double& ai, double& aip);

inline constexpr double kAirySeriesMin = -7.0;
inline constexpr double kAirySeriesMax = 5.0;

} // namespace detail

} // namespace bdbgeo
