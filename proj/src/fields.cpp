#include "bdbgeo/fields.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "bdbgeo/airy.hpp"
#include "bdbgeo/errors.hpp"
#include "bdbgeo/rootfind.hpp"

namespace bdbgeo {

namespace {

void require_valid(const ModelParams& p, const char* who) {
    const auto v = validate(p);
    if (!v.ok()) {
        std::string msg = std::string(who) + ": invalid parameters:";
        for (const auto& s : v.violations) msg += " " + s + ";";
        throw PreconditionError(msg);
    }
}

// First negative zero of Ai, located once with the library's own evaluator.
double airy_first_zero_cached() {
    static const double z = brent(
        [](double w) { return airy_ai(w).ai; }, -2.5, -2.2, 1e-15);
    return z;
}

} // namespace

AmplitudeField airy_amplitude(const ModelParams& p) {
    require_valid(p, "airy_amplitude");
    if (p.big_m == 0.0)
        throw DegenerateParameterError("airy_amplitude: M = 0 collapses the cube-root scale");

    const double beta = p.beta();
    const double scale = std::cbrt(beta);
    const double shift = p.k_const / beta;
    const double amp = p.a_norm;
    const double k_const = p.k_const;

    auto arg = [=](double z) { return -(z + shift) * scale; };

    // The field is the global solution of the governing equation; the
    // positivity interval recorded in `domain` ends where the argument hits
    // the first zero of Ai.  Evaluation continues past the zero (where R
    // changes sign and the potential passes through its would-be pole
    // smoothly, since the equation ties R'' to R).
    const double w_zero = airy_first_zero_cached();
    const double z_edge = -w_zero / scale - shift;  // w(z_edge) = w_zero
    Interval dom;
    const bool decreasing = scale > 0.0;   // w decreasing in z
    if (decreasing)
        dom.hi = z_edge;
    else
        dom.lo = z_edge;

    AmplitudeField f;
    f.kind = FieldKind::airy;
    f.reduction = Reduction::coordinate_x1;
    f.domain = dom;
    f.eval_domain = Interval{};
    f.value = [=](double z) { return amp * airy_ai(arg(z)).ai; };
    f.deriv1 = [=](double z) { return -amp * scale * airy_ai(arg(z)).ai_prime; };
    // From the governing equation R'' = -(K + beta z) R.
    f.deriv2 = [=, val = f.value](double z) { return -(k_const + beta * z) * val(z); };
    f.deriv3 = [=, val = f.value, d1 = f.deriv1](double z) {
        return -beta * val(z) - (k_const + beta * z) * d1(z);
    };
    // R''/R = -(K + beta z) by the governing equation
    f.curvature_ratio_deriv = [beta](double) { return -beta; };
    f.sq_value = [val = f.value](double z) { const double r = val(z); return r * r; };
    f.sq_deriv1 = [val = f.value, d1 = f.deriv1](double z) { return 2.0 * val(z) * d1(z); };
    f.sq_deriv2 = [val = f.value, d1 = f.deriv1, d2 = f.deriv2](double z) {
        const double r = val(z);
        const double r1 = d1(z);
        return 2.0 * r1 * r1 + 2.0 * r * d2(z);
    };
    f.in_domain = [dom](double z) { return dom.contains(z); };
    return f;
}

namespace {

// Positivity interval of C1 sin(k u) + C2 around a point where it is not
// positive, for error messages.
std::string offending_interval(double u, double c1k, double c2k, double k) {
    auto t = [&](double uu) { return c1k * std::sin(k * uu) + c2k; };
    const double period = 2.0 * 3.14159265358979323846 / k;
    double lo = u, hi = u;
    const auto left = scan_brackets(t, u - period, u, 512);
    const auto right = scan_brackets(t, u, u + period, 512);
    if (!left.empty()) {
        const auto& b = left.back();
        lo = b.first == b.second ? b.first : brent(t, b.first, b.second);
    }
    if (!right.empty()) {
        const auto& b = right.front();
        hi = b.first == b.second ? b.first : brent(t, b.first, b.second);
    }
    std::ostringstream os;
    os << "R^2 <= 0 at u = " << u << " (non-positivity interval approx ["
       << lo << ", " << hi << "])";
    return os.str();
}

} // namespace

AmplitudeField static_sine_amplitude_sq(const ModelParams& p) {
    require_valid(p, "static_sine_amplitude_sq");
    const double k = p.k();
    const double denom = p.q0();   // 2 m^2 c^2
    const double c1 = p.c1, c2 = p.c2;

    AmplitudeField f;
    f.kind = FieldKind::static_sine;
    f.reduction = Reduction::coordinate_sum;
    f.domain = Interval{};   // positivity is pointwise; see in_domain
    f.sq_value = [=](double u) { return (c1 * std::sin(k * u) + c2) / denom; };
    f.sq_deriv1 = [=](double u) { return c1 * k * std::cos(k * u) / denom; };
    f.sq_deriv2 = [=](double u) { return -c1 * k * k * std::sin(k * u) / denom; };
    f.in_domain = [sq = f.sq_value](double u) { return sq(u) > 0.0; };

    auto guard = [sq = f.sq_value, c1, c2, k, denom](double u) {
        const double r2 = sq(u);
        if (!(r2 > 0.0))
            throw DomainError("static amplitude: " + offending_interval(u, c1, c2, k));
        return r2;
    };
    f.value = [guard](double u) { return std::sqrt(guard(u)); };
    f.deriv1 = [guard, d1 = f.sq_deriv1](double u) {
        const double r = std::sqrt(guard(u));
        return d1(u) / (2.0 * r);
    };
    f.deriv2 = [guard, d1 = f.sq_deriv1, d2 = f.sq_deriv2](double u) {
        const double r2 = guard(u);
        const double r = std::sqrt(r2);
        const double a = d1(u);
        return d2(u) / (2.0 * r) - a * a / (4.0 * r2 * r);
    };
    auto sq_deriv3 = [=](double u) { return -c1 * k * k * k * std::cos(k * u) / denom; };
    f.deriv3 = [guard, d1 = f.sq_deriv1, d2 = f.sq_deriv2, d3 = sq_deriv3](double u) {
        const double r2 = guard(u);
        const double r = std::sqrt(r2);
        const double a = d1(u), b = d2(u);
        return d3(u) / (2.0 * r) - 3.0 * b * a / (4.0 * r2 * r)
             + 3.0 * a * a * a / (8.0 * r2 * r2 * r);
    };
    return f;
}

PhaseField static_phase_gradient(const ModelParams& p,
                                 std::function<double(double)> g_of_u,
                                 const AmplitudeField& ampl_sq) {
    require_valid(p, "static_phase_gradient");
    if (!g_of_u)
        throw PreconditionError("static_phase_gradient: G must be callable");
    auto momentum = [g = std::move(g_of_u), sq = ampl_sq.sq_value](double u) {
        const double r2 = sq(u);
        if (r2 == 0.0)
            throw SingularPointError("static phase: R^2 = 0", u);
        if (!(r2 > 0.0))
            throw DomainError("static phase: R^2 < 0 outside the positivity domain");
        return g(u) / r2;
    };
    PhaseField s;
    s.kind = FieldKind::static_sine;
    s.dx1 = [momentum](double x1, double x2) { return momentum(x1 + x2); };
    s.dx2 = [momentum](double x1, double x2) { return -momentum(x1 + x2); };
    // Line-integral convention along x1 at fixed u; offset chosen as 0.
    s.value = [momentum](double x1, double x2) { return momentum(x1 + x2) * x1; };
    return s;
}

namespace {

struct SampledData {
    double x0 = 0.0, h = 1.0;
    std::vector<double> val, d1, d2;

    int cell(double x) const {
        int j = static_cast<int>(std::floor((x - x0) / h));
        const int n = static_cast<int>(val.size());
        j = std::clamp(j, 1, n - 3);   // cubic window j-1 .. j+2
        return j;
    }

    double interp(const std::vector<double>& a, double x) const {
        const int j = cell(x);
        const double t = (x - (x0 + j * h)) / h;   // in [0,1] inside the cell
        const double f0 = a[j - 1], f1 = a[j], f2 = a[j + 1], f3 = a[j + 2];
        // Cubic Lagrange on equally spaced nodes -1, 0, 1, 2.
        const double c0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
        const double c1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
        const double c2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
        const double c3 = (t + 1.0) * t * (t - 1.0) / 6.0;
        return c0 * f0 + c1 * f1 + c2 * f2 + c3 * f3;
    }
};

} // namespace

AmplitudeField sampled_amplitude(const std::vector<double>& coords,
                                 const std::vector<double>& values,
                                 Reduction reduction) {
    if (coords.size() != values.size())
        throw PreconditionError("sampled_amplitude: size mismatch between coordinates and values");
    if (coords.size() < 5)
        throw PreconditionError("sampled_amplitude: need at least 5 points for the 4th-order stencil");
    const std::size_t n = coords.size();
    const double h = (coords.back() - coords.front()) / static_cast<double>(n - 1);
    if (!(h > 0.0))
        throw PreconditionError("sampled_amplitude: coordinates must increase");
    for (std::size_t i = 0; i < n; ++i) {
        if (std::fabs(coords[i] - (coords.front() + static_cast<double>(i) * h)) > 1e-9 * std::max(1.0, std::fabs(h) * n))
            throw PreconditionError("sampled_amplitude: grid must be uniform");
        if (values[i] < 0.0)
            throw PreconditionError("sampled_amplitude: amplitude samples must be non-negative");
        if (!std::isfinite(values[i]))
            throw PreconditionError("sampled_amplitude: non-finite sample");
    }

    auto data = std::make_shared<SampledData>();
    data->x0 = coords.front();
    data->h = h;
    data->val = values;
    data->d1.resize(n);
    data->d2.resize(n);
    const auto& f = data->val;
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= 2 && i + 2 < n) {
            data->d1[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
            data->d2[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * h * h);
        } else if (i == 0) {
            data->d1[i] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
            data->d2[i] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (h * h);
        } else if (i + 1 == n) {
            data->d1[i] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
            data->d2[i] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / (h * h);
        } else {
            // one cell in from an edge: centered 2nd order
            data->d1[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
            data->d2[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h);
        }
    }

    const Interval dom{coords.front(), coords.back()};
    auto check = [dom](double x) {
        if (!dom.contains(x))
            throw DomainError("sampled_amplitude: coordinate outside the grid");
    };

    AmplitudeField out;
    out.kind = FieldKind::sampled;
    out.reduction = reduction;
    out.domain = dom;
    out.eval_domain = dom;
    out.value = [data, check](double x) { check(x); return data->interp(data->val, x); };
    out.deriv1 = [data, check](double x) { check(x); return data->interp(data->d1, x); };
    out.deriv2 = [data, check](double x) { check(x); return data->interp(data->d2, x); };
    out.sq_value = [v = out.value](double x) { const double r = v(x); return r * r; };
    out.sq_deriv1 = [v = out.value, d = out.deriv1](double x) { return 2.0 * v(x) * d(x); };
    out.sq_deriv2 = [v = out.value, d = out.deriv1, dd = out.deriv2](double x) {
        const double r1 = d(x);
        return 2.0 * r1 * r1 + 2.0 * v(x) * dd(x);
    };
    out.in_domain = [dom](double x) { return dom.contains(x); };
    return out;
}

AmplitudeField load_sampled_csv(const std::string& path, Reduction reduction) {
    std::ifstream in(path);
    if (!in)
        throw DomainError("load_sampled_csv: cannot open " + path);
    std::vector<double> coords, values;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            // The first non-comment line must be a header, not data.
            char* end = nullptr;
            std::strtod(line.c_str(), &end);
            if (end != line.c_str())
                throw PreconditionError("load_sampled_csv: header line required before data");
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b))
            throw PreconditionError("load_sampled_csv: expected two comma-separated columns");
        coords.push_back(std::stod(a));
        values.push_back(std::stod(b));
    }
    if (!header_seen)
        throw PreconditionError("load_sampled_csv: missing header line");
    return sampled_amplitude(coords, values, reduction);
}

} // namespace bdbgeo
