#include "bdbgeo/verifier.hpp"

#include <cmath>

#include "bdbgeo/errors.hpp"
#include "bdbgeo/geometry.hpp"

namespace bdbgeo {

std::string equation_name(EquationId id) {
    switch (id) {
        case EquationId::hamilton_jacobi: return "hamilton_jacobi";
        case EquationId::continuity: return "continuity";
        case EquationId::airy_ode: return "airy_ode";
        case EquationId::q_slope: return "q_slope";
        case EquationId::nonlinear_r2: return "nonlinear_r2";
        case EquationId::chain_consistency: return "chain_consistency";
        case EquationId::bh_chain: return "bh_chain";
    }
    return "unknown";
}

namespace {

// Shared accumulation loop: evaluates pointwise |residual| over the grid,
// skipping points that fall outside field domains.
template <typename F>
ResidualReport accumulate(EquationId id, const GridSpec& grid, double tolerance,
                          double normalization, F&& residual_at, int min_points = 3) {
    if (grid.n < min_points)
        throw CoverageError(equation_name(id) + ": grid too small");
    ResidualReport rep;
    rep.equation = id;
    rep.grid = grid;
    rep.tolerance = tolerance;
    double sumsq = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.point(i);
        double r;
        try {
            r = residual_at(x, i);
        } catch (const DomainError&) {
            ++rep.skipped;
            continue;
        } catch (const SingularPointError&) {
            ++rep.skipped;
            continue;
        }
        ++rep.evaluated;
        const double a = std::fabs(r);
        sumsq += a * a;
        if (a > rep.max_residual) {
            rep.max_residual = a;
            rep.max_location = x;
        }
    }
    const int total = rep.evaluated + rep.skipped;
    if (total == 0 || rep.skipped > total / 5)
        throw CoverageError(equation_name(id) + ": more than 20% of grid points skipped");
    rep.rms_residual = std::sqrt(sumsq / rep.evaluated);
    rep.normalization = normalization;
    rep.passed = rep.max_residual / rep.normalization <= rep.tolerance;
    return rep;
}

// 4th-order directional derivative of a two-argument function.
template <typename F>
double fd4_axis(F&& f, double x1, double x2, int axis, double h) {
    auto at = [&](double d) { return axis == 0 ? f(x1 + d, x2) : f(x1, x2 + d); };
    return (at(-2 * h) - 8.0 * at(-h) + 8.0 * at(h) - at(2 * h)) / (12.0 * h);
}

} // namespace

ResidualReport check_hamilton_jacobi(const AmplitudeField& ampl, const PhaseField& phase,
                                     const ModelParams& p, const GridSpec& grid,
                                     double tolerance) {
    const auto q = quantum_potential(ampl, QpMode::two_particle_sum, p);
    const double q0 = p.q0();
    return accumulate(EquationId::hamilton_jacobi, grid, tolerance, q0,
                      [&](double u, int) {
                          const double x1 = 0.5 * u, x2 = 0.5 * u;
                          const double p1 = phase.dx1(x1, x2);
                          const double p2 = phase.dx2(x1, x2);
                          return p1 * p1 + p2 * p2 - q0 + q.eval_pair(x1, x2);
                      });
}

ResidualReport check_continuity(const AmplitudeField& ampl, const PhaseField& phase,
                                const GridSpec& grid, double tolerance) {
    const double h = 1e-4 * (grid.hi - grid.lo);
    auto flux1 = [&](double x1, double x2) {
        const double r = ampl.eval_pair(x1, x2);
        return r * r * phase.dx1(x1, x2);
    };
    auto flux2 = [&](double x1, double x2) {
        const double r = ampl.eval_pair(x1, x2);
        return r * r * phase.dx2(x1, x2);
    };
    // Normalization pass first: max |R^2 dS/dx1| over the grid.
    double norm = 0.0;
    int norm_pts = 0;
    for (int i = 0; i < grid.n; ++i) {
        const double u = grid.point(i);
        try {
            norm = std::max(norm, std::fabs(flux1(0.5 * u, 0.5 * u)));
            ++norm_pts;
        } catch (const Error&) {
        }
    }
    if (norm_pts == 0)
        throw CoverageError("continuity: no evaluable grid points");
    if (norm == 0.0) norm = 1.0;
    return accumulate(EquationId::continuity, grid, tolerance, norm,
                      [&](double u, int) {
                          const double x1 = 0.5 * u, x2 = 0.5 * u;
                          return fd4_axis(flux1, x1, x2, 0, h) + fd4_axis(flux2, x1, x2, 1, h);
                      });
}

ResidualReport check_airy_ode(const AmplitudeField& ampl, const ModelParams& p,
                              const GridSpec& grid, double tolerance) {
    const double beta = p.beta();
    double norm = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        try {
            norm = std::max(norm, std::fabs(ampl.value(grid.point(i))));
        } catch (const Error&) {
        }
    }
    if (norm == 0.0) norm = 1.0;
    return accumulate(EquationId::airy_ode, grid, tolerance, norm,
                      [&](double z, int) {
                          return ampl.deriv2(z) + (p.k_const + beta * z) * ampl.value(z);
                      });
}

ResidualReport check_q_slope(const QuantumPotentialField& q, const ModelParams& p,
                             const GridSpec& grid, double tolerance) {
    if (grid.n < 3)
        throw CoverageError("q_slope: cannot center-difference fewer than 3 points");
    const double slope = 4.0 * p.big_m * p.m * p.m * p.c * p.c;
    const double h = grid.spacing();
    // residuals live on interior points; reuse the grid with shifted eval
    GridSpec interior{grid.point(1), grid.point(grid.n - 2), grid.n - 2};
    auto rep = accumulate(EquationId::q_slope, interior, tolerance, std::fabs(slope),
                          [&](double z, int) {
                              return (q.eval(z + h) - q.eval(z - h)) / (2.0 * h) - slope;
                          },
                          1);
    rep.grid = grid;
    return rep;
}

ResidualReport check_nonlinear(const AmplitudeField& ampl_sq, const GFunction& g,
                               const ModelParams& p, const GridSpec& grid,
                               double tolerance) {
    double norm = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        try {
            norm = std::max(norm, nonlinear_term_scale(ampl_sq, g, p, grid.point(i)));
        } catch (const Error&) {
        }
    }
    if (norm == 0.0) norm = 1.0;
    return accumulate(EquationId::nonlinear_r2, grid, tolerance, norm,
                      [&](double u, int) { return nonlinear_residual(ampl_sq, g, p, u); });
}

ResidualReport check_chain_consistency(const AmplitudeField& ampl, const GFunction& g,
                                       const ModelParams& p, const GridSpec& grid,
                                       double tolerance) {
    const auto q = quantum_potential(ampl, QpMode::two_particle_sum, p);
    const double q0 = p.q0();
    return accumulate(EquationId::chain_consistency, grid, tolerance, q0,
                      [&](double u, int) {
                          const double r2 = ampl.sq_value(u);
                          if (!(r2 > 0.0))
                              throw DomainError("chain_consistency: R^2 <= 0");
                          const double gg = g.g_sq8(u) / 8.0;   // G^2
                          return 2.0 * gg / (r2 * r2) - (q0 - q.eval(u));
                      });
}

ResidualReport check_bh_chain(const ModelParams& p, const GridSpec& z_grid,
                              double tolerance) {
    const auto ampl = airy_amplitude(p);
    const auto q = quantum_potential(ampl, QpMode::epr_reduced, p);
    const auto conformal = conformal_metric_exp(q, p);
    const auto map_zy = z_to_y(q, p, Interval{z_grid.lo - 0.25, z_grid.hi + 0.25});
    const auto map_yx = y_to_x(p);
    const auto chain = pushforward(pushforward(conformal, map_zy, MetricCoords::y_conformal),
                                   map_yx, MetricCoords::x_bh);
    const auto bh = bh_metric(p);
    return accumulate(EquationId::bh_chain, z_grid, tolerance, 1.0,
                      [&](double z, int) {
                          const double x = map_yx.forward(map_zy.forward(z));
                          const double d_tt = chain.g_tt(x) - bh.g_tt(x);
                          const double d_xx = chain.g_xx(x) - bh.g_xx(x);
                          return std::max(std::fabs(d_tt), std::fabs(d_xx));
                      });
}

ConvergenceResult convergence_order(const std::function<ResidualReport(double)>& check_at_h,
                                    const std::vector<double>& h_seq, double floor) {
    if (h_seq.size() < 3)
        throw PreconditionError("convergence_order: need at least 3 step sizes");
    ConvergenceResult out;
    for (double h : h_seq)
        out.residuals.push_back(check_at_h(h).max_residual);
    for (double r : out.residuals) {
        if (r <= floor) {
            out.floor_reached = true;
            return out;
        }
    }
    // least squares of log r against log h
    const int n = static_cast<int>(h_seq.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double x = std::log(h_seq[i]);
        const double y = std::log(out.residuals[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return out;
}

} // namespace bdbgeo
