#include "bdbgeo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "bdbgeo/errors.hpp"
#include "bdbgeo/rootfind.hpp"

namespace bdbgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Clips a (possibly infinite) field domain to something scannable around a
// reference point, staying strictly inside open boundaries.
Interval scan_window(const Interval& dom, double fallback_halfwidth = 1e3) {
    double lo = dom.lo, hi = dom.hi;
    const double ref = std::isfinite(lo) ? lo : (std::isfinite(hi) ? hi : 0.0);
    if (!std::isfinite(lo)) lo = ref - fallback_halfwidth;
    if (!std::isfinite(hi)) hi = ref + fallback_halfwidth;
    const double pad = 1e-9 * std::max(1.0, hi - lo);
    return {lo + pad, hi - pad};
}

std::vector<double> omega_sq_zeros(const std::function<double(double)>& omega_sq,
                                   const Interval& dom) {
    std::vector<double> out;
    const Interval w = scan_window(dom);
    if (!(w.hi > w.lo)) return out;
    auto safe = [&](double x) {
        try {
            return omega_sq(x);
        } catch (const Error&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    const int n = 4001;
    double prev_x = w.lo, prev_f = safe(prev_x);
    for (int i = 1; i <= n; ++i) {
        const double x = w.lo + (w.hi - w.lo) * i / n;
        const double f = safe(x);
        if (std::isfinite(prev_f) && std::isfinite(f)) {
            if (prev_f == 0.0)
                out.push_back(prev_x);
            else if (prev_f * f < 0.0)
                out.push_back(brent([&](double t) { return omega_sq(t); }, prev_x, x));
        }
        prev_x = x;
        prev_f = f;
    }
    if (std::isfinite(prev_f) && prev_f == 0.0) out.push_back(prev_x);
    return out;
}

Metric2D conformal_from_factor(std::function<double(double)> omega_sq,
                               const Interval& dom, bool find_zeros) {
    Metric2D m;
    m.coords = MetricCoords::z_conformal;
    m.g_tt = [omega_sq](double x) { return -omega_sq(x); };
    m.g_xx = std::move(omega_sq);
    if (find_zeros) m.singular_points = omega_sq_zeros(m.g_xx, dom);
    return m;
}

} // namespace

Metric2D pushforward(const Metric2D& g, const CoordinateMap& map, MetricCoords new_coords) {
    Metric2D out;
    out.coords = new_coords;
    out.g_tt = [g_tt = g.g_tt, inv = map.inverse](double v) { return g_tt(inv(v)); };
    out.g_xx = [g_xx = g.g_xx, inv = map.inverse, jac = map.jacobian](double v) {
        const double old = inv(v);
        const double j = jac(old);
        return g_xx(old) / (j * j);
    };
    for (double s : g.singular_points)
        if (map.domain.contains(s)) out.singular_points.push_back(map.forward(s));
    return out;
}

Metric2D conformal_metric_linear(const QuantumPotentialField& q, const ModelParams& p) {
    const double q0 = p.q0();
    auto omega_sq = [q, q0](double x) { return 1.0 - q.eval(x) / q0; };
    return conformal_from_factor(omega_sq, q.domain, true);
}

Metric2D conformal_metric_exp(const QuantumPotentialField& q, const ModelParams& p) {
    const double q0 = p.q0();
    auto omega_sq = [q, q0](double x) { return std::exp(-q.eval(x) / q0); };
    return conformal_from_factor(omega_sq, q.domain, false);
}

CoordinateMap z_to_y(const QuantumPotentialField& q, const ModelParams& p, Interval window) {
    if (p.big_m == 0.0)
        throw DegenerateParameterError("z_to_y: M = 0");
    const double denom = 4.0 * p.big_m * p.m * p.m * p.c * p.c;

    Interval dom{std::max(window.lo, q.domain.lo), std::min(window.hi, q.domain.hi)};
    dom = scan_window(dom, 0.0);
    if (!(dom.hi > dom.lo))
        throw PreconditionError("z_to_y: empty window");

    auto forward = [q, denom](double z) { return -q.eval(z) / denom; };
    auto jac = [q, denom](double z) { return -q.deriv(z) / denom; };

    // Strict monotonicity of y(z) over the window.
    const int n = 256;
    double prev = jac(dom.lo);
    for (int i = 1; i <= n; ++i) {
        const double z = dom.lo + (dom.hi - dom.lo) * i / n;
        const double j = jac(z);
        if (j == 0.0 || prev * j < 0.0) {
            std::ostringstream os;
            os << "z_to_y: potential not monotone on ["
               << dom.lo + (dom.hi - dom.lo) * (i - 1) / n << ", " << z << "]";
            throw PreconditionError(os.str());
        }
        prev = j;
    }

    const double ya = forward(dom.lo);
    const double yb = forward(dom.hi);
    const double ylo = std::min(ya, yb), yhi = std::max(ya, yb);
    auto inverse = [forward, dom, ylo, yhi](double y) {
        if (y < ylo - 1e-12 || y > yhi + 1e-12)
            throw DomainError("z_to_y inverse: target outside the mapped window");
        const double yc = std::clamp(y, ylo, yhi);
        return brent([&](double z) { return forward(z) - yc; }, dom.lo, dom.hi, 1e-15);
    };

    CoordinateMap map;
    map.forward = forward;
    map.inverse = inverse;
    map.jacobian = jac;
    map.domain = dom;
    return map;
}

CoordinateMap y_to_x(const ModelParams& p) {
    if (p.big_m == 0.0)
        throw DegenerateParameterError("y_to_x: M = 0");
    const double two_m = 2.0 * p.big_m;
    const double c_const = p.c_const;
    CoordinateMap map;
    map.forward = [=](double y) { return (c_const + std::exp(two_m * y)) / two_m; };
    map.inverse = [=](double x) {
        const double arg = two_m * x - c_const;
        if (!(arg > 0.0))
            throw DomainError("y_to_x inverse: x <= C/(2M) (horizon edge)");
        return std::log(arg) / two_m;
    };
    map.jacobian = [=](double y) { return std::exp(two_m * y); };
    map.domain = Interval{};
    return map;
}

Metric2D bh_metric(const ModelParams& p) {
    const double two_m = 2.0 * p.big_m;
    const double c_const = p.c_const;
    auto alpha = [=](double x) { return two_m * std::fabs(x) - c_const; };
    Metric2D m;
    m.coords = MetricCoords::x_bh;
    m.g_tt = [alpha](double x) { return -alpha(x); };
    m.g_xx = [alpha](double x) { return 1.0 / alpha(x); };
    if (p.big_m != 0.0) {
        if (c_const == 0.0) {
            m.singular_points = {0.0};
        } else if (c_const * p.big_m > 0.0) {
            const double xh = c_const / two_m;
            m.singular_points = {-xh, xh};
        }
    }
    return m;
}

HorizonSet find_horizons(const ModelParams& p) {
    if (p.big_m == 0.0)
        throw DegenerateParameterError("find_horizons: M = 0 makes alpha constant");
    const double two_m = 2.0 * p.big_m;
    auto alpha = [&](double x) { return two_m * std::fabs(x) - p.c_const; };

    HorizonSet hs;
    if (p.c_const == 0.0) {
        hs.locations = {0.0};
    } else if (p.c_const * p.big_m > 0.0) {
        const double xh = p.c_const / two_m;
        // closed form, confirmed by bracketing refinement on one side of 0
        for (double x0 : {-xh, xh}) {
            const double w = std::min(0.5 * std::max(1.0, std::fabs(x0)), 0.9 * std::fabs(x0));
            double refined = x0;
            try {
                refined = brent(alpha, x0 - w, x0 + w, 1e-15);
            } catch (const PreconditionError&) {
                refined = x0;
            }
            hs.locations.push_back(refined);
        }
        std::sort(hs.locations.begin(), hs.locations.end());
    }

    // Region classification between consecutive horizons.
    std::vector<double> edges{-kInf};
    edges.insert(edges.end(), hs.locations.begin(), hs.locations.end());
    edges.push_back(kInf);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i], b = edges[i + 1];
        double probe;
        if (std::isfinite(a) && std::isfinite(b)) probe = 0.5 * (a + b);
        else if (std::isfinite(a)) probe = a + std::max(1.0, std::fabs(a));
        else if (std::isfinite(b)) probe = b - std::max(1.0, std::fabs(b));
        else probe = 1.0;
        const RegionType t = alpha(probe) > 0.0 ? RegionType::timelike : RegionType::spacelike;
        hs.regions.emplace_back(Interval{a, b}, t);
    }
    return hs;
}

ValidityWindow validity_window(const ModelParams& p, double threshold) {
    if (!(p.big_m > 0.0))
        throw PreconditionError("validity_window: requires M > 0");
    if (!(threshold > 0.0) || threshold >= 1.0)
        throw PreconditionError("validity_window: threshold must lie in (0, 1)");
    const double two_m = 2.0 * p.big_m;
    ValidityWindow w;
    w.threshold = threshold;
    w.center = (1.0 + p.c_const) / two_m;
    w.epsilon = std::expm1(threshold) / two_m;
    if (!(w.epsilon < 1.0 / two_m))
        throw PreconditionError("validity_window: threshold too large, epsilon would reach 1/(2M)");
    w.lo = w.center - (-std::expm1(-threshold)) / two_m;
    w.hi = w.center + w.epsilon;
    w.coord = 'x';
    return w;
}

double hawking_conformal_factor(double x, double b, double x0) {
    if (x == x0)
        throw SingularPointError("hawking_conformal_factor: x = x0", x0);
    const double d = x - x0;
    return 1.0 + b * b / (d * d);
}

void write_metric_grid_csv(std::ostream& os, const Metric2D& m, const ModelParams& p,
                           double lo, double hi, int n, const ValidityWindow* vw) {
    os << "coord,g_tt,g_xx,alpha,in_validity_window\n";
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * i / (n - 1);
        const double alpha = 2.0 * p.big_m * std::fabs(x) - p.c_const;
        double g_tt = std::numeric_limits<double>::quiet_NaN();
        double g_xx = std::numeric_limits<double>::quiet_NaN();
        try {
            g_tt = m.g_tt(x);
            g_xx = m.g_xx(x);
        } catch (const Error&) {
        }
        os << x << ',' << g_tt << ',' << g_xx << ',' << alpha << ','
           << ((vw && vw->contains(x)) ? 1 : 0) << '\n';
    }
}

} // namespace bdbgeo
