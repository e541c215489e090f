#pragma once

#include <string>
#include <vector>

namespace bdbgeo {

/// Physical constants and model integration constants shared by all models.
///
/// Natural units (hbar = c = m = 1) are the default convention; every field
/// can be overridden for dimensional runs.  big_m and k_const are the
/// integration constants of the linear-amplitude model (units 1/length and
/// 1/length^2), c_const is the black-hole metric constant, a_norm the
/// amplitude normalization, c1/c2 the static-model solution constants.
struct ModelParams {
    double hbar = 1.0;
    double c = 1.0;
    double m = 1.0;
    double big_m = 0.1;
    double k_const = 0.0;
    double c_const = 1.0;
    double a_norm = 1.0;
    double c1 = 1.0;
    double c2 = 2.0;

    /// Wavenumber k = m c / hbar.
    double k() const { return m * c / hbar; }

    /// Tachyon threshold denominator 2 m^2 c^2.
    double q0() const { return 2.0 * m * m * c * c; }

    /// Amplitude-curvature scale 2 M m^2 c^2 / hbar^2 of the linear model.
    double beta() const { return 2.0 * big_m * m * m * c * c / (hbar * hbar); }
};

struct ValidationResult {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;

    bool ok() const { return violations.empty(); }
};

/// Default parameter set: hbar = c = m = 1, M = 0.1, K = 0, C = 1, A = 1,
/// C1 = 1, C2 = 2.
ModelParams natural_units();

/// Checks positivity/finiteness invariants.  Violations are returned, not
/// thrown; negative M or K are legal but flagged as warnings since horizon
/// existence depends on sign agreement between C and M.
ValidationResult validate(const ModelParams& p);

/// Applies one `key = value` assignment (config-file syntax) to p.
/// Returns false for an unknown key.  Accepted keys mirror the CLI flags:
/// m, c, hbar, big-m, k-const, c-const, a, c1, c2 (underscores also allowed).
bool apply_param_key(ModelParams& p, const std::string& key, double value);

/// Loads a flat `key = value` config file (one assignment per line,
/// '#' starts a comment).  Unknown keys and unparsable lines are reported in
/// the returned list; known keys are applied in file order.
std::vector<std::string> load_config_file(const std::string& path, ModelParams& p);

} // namespace bdbgeo
