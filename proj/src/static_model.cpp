#include "bdbgeo/static_model.hpp"

#include <algorithm>
#include <cmath>

#include "bdbgeo/errors.hpp"
#include "bdbgeo/rootfind.hpp"

namespace bdbgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

} // namespace

double GFunction::eval(double u) const {
    const double g8 = g_sq8(u);
    if (g8 < 0.0)
        throw DomainError("GFunction: 8G^2 < 0, no real G at this point");
    return std::sqrt(g8 / 8.0);
}

std::vector<Interval> GFunction::excluded_intervals(const Interval& window) const {
    std::vector<Interval> out;
    if (!window.finite() || !(window.hi > window.lo))
        return out;
    auto safe = [&](double u) {
        try {
            return g_sq8(u);
        } catch (const Error&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    const int n = 4096;
    std::vector<double> edges;   // refined sign-change locations
    double prev_x = window.lo, prev_f = safe(prev_x);
    for (int i = 1; i <= n; ++i) {
        const double x = window.lo + window.width() * i / n;
        const double f = safe(x);
        if (std::isfinite(prev_f) && std::isfinite(f) && prev_f * f < 0.0)
            edges.push_back(brent([&](double t) { return g_sq8(t); }, prev_x, x, 1e-13));
        prev_x = x;
        prev_f = f;
    }
    edges.push_back(window.hi);
    double lo = window.lo;
    for (double hi : edges) {
        // Probe several points: a tangency can make any single midpoint
        // land exactly on a zero of 8G^2.
        int negative = 0, positive = 0;
        for (int k = 1; k <= 5; ++k) {
            const double f = safe(lo + (hi - lo) * k / 6.0);
            if (!std::isfinite(f)) continue;
            if (f < 0.0) ++negative;
            if (f > 0.0) ++positive;
        }
        if (negative > 0 && positive == 0)
            out.push_back(Interval{lo, hi});
        lo = hi;
    }
    return out;
}

GFunction derive_g_from(const AmplitudeField& ampl_sq, const ModelParams& p) {
    const double h2 = p.hbar * p.hbar;
    const double mc2 = p.m * p.m * p.c * p.c;
    GFunction g;
    g.derivation = GDerivation::oracle_substitution;
    g.g_sq8 = [sq = ampl_sq.sq_value, d1 = ampl_sq.sq_deriv1, d2 = ampl_sq.sq_deriv2,
               h2, mc2](double u) {
        const double r2 = sq(u);
        const double a = d1(u);
        return 8.0 * mc2 * r2 * r2 - 2.0 * h2 * a * a + 4.0 * h2 * r2 * d2(u);
    };
    return g;
}

GFunction derive_g(const ModelParams& p) {
    return derive_g_from(static_sine_amplitude_sq(p), p);
}

GFunction user_g(std::function<double(double)> g) {
    GFunction out;
    out.derivation = GDerivation::user_supplied;
    out.g_sq8 = [g = std::move(g)](double u) {
        const double v = g(u);
        return 8.0 * v * v;
    };
    return out;
}

double nonlinear_residual(const AmplitudeField& ampl_sq, const GFunction& g,
                          const ModelParams& p, double u) {
    const double r2 = ampl_sq.sq_value(u);
    if (!(r2 > 0.0))
        throw DomainError("nonlinear_residual: outside the R^2 > 0 domain");
    const double h2 = p.hbar * p.hbar;
    const double mc2 = p.m * p.m * p.c * p.c;
    const double a = ampl_sq.sq_deriv1(u);
    const double b = ampl_sq.sq_deriv2(u);
    // two identical particle terms under the sum reduction
    const double per_particle = h2 * a * a - 2.0 * h2 * r2 * b;
    return g.g_sq8(u) + 2.0 * per_particle - 8.0 * mc2 * r2 * r2;
}

double nonlinear_term_scale(const AmplitudeField& ampl_sq, const GFunction& g,
                            const ModelParams& p, double u) {
    const double r2 = ampl_sq.sq_value(u);
    const double h2 = p.hbar * p.hbar;
    const double mc2 = p.m * p.m * p.c * p.c;
    const double a = ampl_sq.sq_deriv1(u);
    const double b = ampl_sq.sq_deriv2(u);
    return std::max({std::fabs(g.g_sq8(u)), 2.0 * h2 * a * a,
                     std::fabs(4.0 * h2 * r2 * b), 8.0 * mc2 * r2 * r2});
}

double g11_derived(const ModelParams& p, const GFunction& g,
                   const AmplitudeField& ampl_sq, double u) {
    const double r2 = ampl_sq.sq_value(u);
    if (r2 == 0.0)
        throw SingularPointError("g11_derived: R^2 = 0", u);
    if (r2 < 0.0)
        throw DomainError("g11_derived: outside the R^2 > 0 domain");
    const double mc2 = p.m * p.m * p.c * p.c;
    return g.g_sq8(u) / (8.0 * mc2 * r2 * r2);
}

double g11_alt_form(const ModelParams& p, double u) {
    const double s = std::sin(p.k() * u);
    const double cs = std::cos(p.k() * u);
    const double t = p.c1 * s + p.c2;
    if (t == 0.0)
        throw SingularPointError("g11_alt_form: denominator zero", u);
    const double num = 2.0 * p.c1 * p.c1 * s * s - p.c1 * p.c1 * cs * cs - 2.0 * p.c1 * p.c2 * s;
    return 0.25 * num / (t * t);
}

MetricComponentReport compare_g11(const ModelParams& p, const GFunction& g,
                                  const AmplitudeField& ampl_sq, double u) {
    MetricComponentReport r;
    r.u = u;
    r.g11_derived = g11_derived(p, g, ampl_sq, u);
    r.g11_alt_form = g11_alt_form(p, u);
    r.discrepancy = std::fabs(r.g11_derived - r.g11_alt_form);
    return r;
}

std::vector<double> find_metric_singularities(const ModelParams& p, const Interval& window) {
    std::vector<double> roots;
    if (!window.finite())
        throw PreconditionError("find_metric_singularities: window must be finite");
    if (p.c1 == 0.0 || std::fabs(p.c2) > std::fabs(p.c1))
        return roots;

    const double k = p.k();
    auto f = [&](double u) { return p.c1 * std::sin(k * u) + p.c2; };
    const double ratio = -p.c2 / p.c1;
    const double period = 2.0 * kPi / k;

    auto push_in_window = [&](double u) {
        if (u >= window.lo - 1e-12 && u <= window.hi + 1e-12)
            roots.push_back(std::clamp(u, window.lo, window.hi));
    };

    if (std::fabs(std::fabs(ratio) - 1.0) < 4e-16) {
        // Tangency: sin(ku) = +-1, even-order contact of f.  Refine through
        // f' = C1 k cos(ku), which does change sign at the root.
        const double base = (ratio > 0.0 ? kPi / 2.0 : -kPi / 2.0) / k;
        auto fp = [&](double u) { return p.c1 * k * std::cos(k * u); };
        const long n_lo = static_cast<long>(std::floor((window.lo - base) / period)) - 1;
        const long n_hi = static_cast<long>(std::ceil((window.hi - base) / period)) + 1;
        for (long n = n_lo; n <= n_hi; ++n) {
            const double u0 = base + static_cast<double>(n) * period;
            if (u0 < window.lo - 0.1 * period || u0 > window.hi + 0.1 * period) continue;
            double u = u0;
            try {
                u = brent(fp, u0 - 0.25 * period, u0 + 0.25 * period, 1e-14);
            } catch (const PreconditionError&) {
            }
            if (std::fabs(f(u)) < 1e-9 * (std::fabs(p.c1) + std::fabs(p.c2)))
                push_in_window(u);
        }
    } else {
        const double s0 = std::asin(ratio);
        const double bases[2] = {s0 / k, (kPi - s0) / k};
        for (const double base : bases) {
            const long n_lo = static_cast<long>(std::floor((window.lo - base) / period)) - 1;
            const long n_hi = static_cast<long>(std::ceil((window.hi - base) / period)) + 1;
            for (long n = n_lo; n <= n_hi; ++n) {
                const double u0 = base + static_cast<double>(n) * period;
                if (u0 < window.lo - 0.1 * period || u0 > window.hi + 0.1 * period) continue;
                double u = u0;
                try {
                    u = brent(f, u0 - 0.2 / k, u0 + 0.2 / k, 1e-14);
                } catch (const PreconditionError&) {
                }
                push_in_window(u);
            }
        }
    }

    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [&](double a, double b) { return std::fabs(a - b) < 1e-9 / k; }),
                roots.end());
    return roots;
}

} // namespace bdbgeo
