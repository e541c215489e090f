#include "bdbgeo/quantum_potential.hpp"

#include <cmath>
#include <ostream>

#include "bdbgeo/errors.hpp"
#include "bdbgeo/rootfind.hpp"

namespace bdbgeo {

namespace {

// Best-effort location of the amplitude zero nearest to xi, for the
// singular-point diagnostic.
double nearest_amplitude_zero(const AmplitudeField& f, double xi) {
    const double step0 = 1e-3 * std::max(1.0, std::fabs(xi));
    for (double step = step0; step < 1e3 * step0; step *= 4.0) {
        for (const double dir : {1.0, -1.0}) {
            const double a = xi;
            const double b = xi + dir * step;
            double fa, fb;
            try {
                fa = f.value(a);
                fb = f.value(b);
            } catch (...) {
                continue;
            }
            if (fa == 0.0) return a;
            if (fb == 0.0) return b;
            if (fa * fb < 0.0)
                return brent(f.value, std::min(a, b), std::max(a, b));
        }
    }
    return xi;
}

double mode_factor(const QuantumPotentialField& q) {
    if (q.mode == QpMode::epr_reduced) return 2.0;
    // two_particle_sum: each axis contributes weight^2.
    const double w1 = q.source.axis_weight(0);
    const double w2 = q.source.axis_weight(1);
    return w1 * w1 + w2 * w2;
}

} // namespace

double QuantumPotentialField::eval(double xi) const {
    double r;
    try {
        r = source.value(xi);
    } catch (const DomainError&) {
        // An exact amplitude zero is a pole of Q; anything else stays an
        // ordinary domain violation.
        if (source.sq_value && source.sq_value(xi) == 0.0)
            throw SingularPointError("quantum potential: pole at amplitude zero", xi);
        throw;
    }
    if (r == 0.0)
        throw SingularPointError("quantum potential: pole at amplitude zero",
                                 nearest_amplitude_zero(source, xi));
    return -mode_factor(*this) * hbar2 * source.deriv2(xi) / r;
}

double QuantumPotentialField::deriv(double xi) const {
    const double factor = -mode_factor(*this) * hbar2;
    if (source.curvature_ratio_deriv)
        return factor * source.curvature_ratio_deriv(xi);
    if (source.deriv3) {
        const double r = source.value(xi);
        if (r == 0.0)
            throw SingularPointError("quantum potential: pole at amplitude zero",
                                     nearest_amplitude_zero(source, xi));
        return factor * (source.deriv3(xi) * r - source.deriv2(xi) * source.deriv1(xi)) / (r * r);
    }
    const double h = 1e-5 * std::max(1.0, std::fabs(xi));
    return (eval(xi - 2 * h) - 8.0 * eval(xi - h) + 8.0 * eval(xi + h) - eval(xi + 2 * h)) / (12.0 * h);
}

QuantumPotentialField quantum_potential(const AmplitudeField& ampl, QpMode mode,
                                        const ModelParams& p) {
    if (!ampl.value || !ampl.deriv2)
        throw PreconditionError("quantum_potential: amplitude must provide value and second derivative");
    QuantumPotentialField q;
    q.mode = mode;
    q.source = ampl;
    q.hbar2 = p.hbar * p.hbar;
    q.domain = ampl.eval_domain;
    return q;
}

EffectiveMassSq effective_mass_sq(double q_value, const ModelParams& p) {
    EffectiveMassSq out;
    out.value = p.m * p.m * (1.0 - q_value / p.q0());
    out.tachyonic = out.value < 0.0;
    return out;
}

double validity_margin(double q_value, const ModelParams& p) {
    return std::fabs(q_value / p.q0());
}

void write_q_grid_csv(std::ostream& os, const QuantumPotentialField& q,
                      const ModelParams& p, double lo, double hi, int n) {
    os << "coordinate,Q,margin,tachyonic\n";
    int skipped = 0;
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * i / (n - 1);
        try {
            const double qv = q.eval(x);
            os << x << ',' << qv << ',' << validity_margin(qv, p) << ','
               << (effective_mass_sq(qv, p).tachyonic ? 1 : 0) << '\n';
        } catch (const Error&) {
            ++skipped;
        }
    }
    if (skipped > 0)
        os << "# skipped " << skipped << " singular/out-of-domain points\n";
}

} // namespace bdbgeo
