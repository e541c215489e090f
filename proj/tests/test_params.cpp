#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>

#include "bdbgeo/params.hpp"

using namespace bdbgeo;

namespace {

bool has_violation(const ValidationResult& r, const std::string& needle) {
    return std::any_of(r.violations.begin(), r.violations.end(),
                       [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

} // namespace

TEST_CASE("natural units defaults") {
    const auto p = natural_units();
    CHECK(p.k() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.q0() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(p.big_m == 0.1);
    CHECK(p.k_const == 0.0);
    CHECK(p.c_const == 1.0);
    CHECK(p.a_norm == 1.0);
    CHECK(p.c1 == 1.0);
    CHECK(p.c2 == 2.0);
}

TEST_CASE("validate flags positivity violations by name") {
    auto p = natural_units();
    CHECK(validate(p).ok());
    CHECK(validate(p).warnings.empty());

    p.m = 0.0;
    CHECK(has_violation(validate(p), "m must be > 0"));

    p = natural_units();
    p.a_norm = -1.0;
    CHECK(has_violation(validate(p), "A must be > 0"));

    p = natural_units();
    p.big_m = -0.2;
    const auto r = validate(p);
    CHECK(r.ok());
    CHECK(!r.warnings.empty());
}

TEST_CASE("wavenumber identity k*hbar = m*c") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(0.1, 10.0);
    for (int i = 0; i < 100; ++i) {
        ModelParams p;
        p.m = dist(rng);
        p.c = dist(rng);
        p.hbar = dist(rng);
        CHECK(validate(p).ok());
        CHECK(p.k() * p.hbar == doctest::Approx(p.m * p.c).epsilon(1e-14));
    }
}

TEST_CASE("config file loading and key application") {
    ModelParams p;
    CHECK(apply_param_key(p, "big-m", 0.5));
    CHECK(p.big_m == 0.5);
    CHECK(apply_param_key(p, "BIG_M", 0.25));
    CHECK(p.big_m == 0.25);
    CHECK(!apply_param_key(p, "nonsense", 1.0));

    const std::string path = "test_params_config.tmp";
    {
        std::ofstream f(path);
        f << "# comment line\n"
          << "m = 2.0\n"
          << "c1= 3.0  # trailing comment\n"
          << "bogus = 1.0\n"
          << "c2 = notanumber\n";
    }
    ModelParams q;
    const auto problems = load_config_file(path, q);
    CHECK(q.m == 2.0);
    CHECK(q.c1 == 3.0);
    CHECK(q.c2 == 2.0);   // untouched by the bad line
    REQUIRE(problems.size() == 2);
    std::remove(path.c_str());
}
