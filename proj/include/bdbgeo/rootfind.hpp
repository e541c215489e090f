#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace bdbgeo {

/// Brent's method on a bracketing interval [a, b] with f(a)*f(b) <= 0.
/// Converges to |x - root| <= xtol (absolute).  Throws PreconditionError if
/// the interval does not bracket a sign change.
double brent(const std::function<double(double)>& f, double a, double b,
             double xtol = 1e-14, int max_iter = 200);

/// Scans [lo, hi] at n+1 uniform points and returns every subinterval with a
/// sign change of f (exact zeros at nodes become degenerate brackets).
std::vector<std::pair<double, double>>
scan_brackets(const std::function<double(double)>& f, double lo, double hi, int n);

} // namespace bdbgeo
