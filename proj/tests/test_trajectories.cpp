#include <doctest.h>

#include <cmath>
#include <sstream>

#include "bdbgeo/errors.hpp"
#include "bdbgeo/static_model.hpp"
#include "bdbgeo/trajectories.hpp"

using namespace bdbgeo;

namespace {

struct StaticSetup {
    ModelParams p;
    AmplitudeField ampl;
    PhaseField phase;

    explicit StaticSetup(double c1, double c2) {
        p = natural_units();
        p.c1 = c1;
        p.c2 = c2;
        ampl = static_sine_amplitude_sq(p);
        const auto g = derive_g(p);
        phase = static_phase_gradient(p, [g](double u) { return g.eval(u); }, ampl);
    }
};

} // namespace

TEST_CASE("constant-momentum pair moves linearly") {
    StaticSetup s(0.0, 2.0);   // G = 1, R^2 = 1: dS/dx1 = 1
    const auto traj = integrate_pair(s.phase, 0.1, 0.4, 10.0, s.p, 1e-10);
    REQUIRE(traj.stop == StopReason::completed);
    const double lam = traj.lambda_samples.back();
    CHECK(lam == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(std::fabs(traj.x1_samples.back() - (0.1 + lam)) <= 1e-9);
    CHECK(std::fabs(traj.x2_samples.back() - (0.4 - lam)) <= 1e-9);
}

TEST_CASE("correlated pair conserves u and momentum antisymmetry") {
    StaticSetup s(1.0, 2.0);
    const auto traj = integrate_pair(s.phase, 0.3, 0.2, 10.0, s.p, 1e-10);
    REQUIRE(traj.stop == StopReason::completed);
    const auto [du, dp] = epr_drift(traj);
    CHECK(du <= 1e-9);
    CHECK(dp <= 1e-9);
    CHECK(du <= 100.0 * 1e-10);
    // p1 is constant along the flow since u is
    for (double p1 : traj.p1_samples)
        CHECK(p1 == doctest::Approx(traj.p1_samples.front()).epsilon(1e-12));
}

TEST_CASE("null momentum means fixed points") {
    StaticSetup s(1.0, 2.0);
    const auto null_phase = static_phase_gradient(s.p, [](double) { return 0.0; }, s.ampl);
    const auto traj = integrate_pair(null_phase, 0.3, 0.2, 5.0, s.p, 1e-10);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        CHECK(traj.x1_samples[i] == 0.3);
        CHECK(traj.x2_samples[i] == 0.2);
    }
}

TEST_CASE("corrupted antisymmetry is detected") {
    StaticSetup s(1.0, 2.0);
    PhaseField bad = s.phase;
    bad.dx2 = [inner = s.phase.dx1](double a, double b) { return -0.99 * inner(a, b); };
    const auto traj = integrate_pair(bad, 0.3, 0.2, 2.0, s.p, 1e-10);
    const auto [du, dp] = epr_drift(traj);
    CHECK(dp >= 1e-3);
    CHECK(dp == doctest::Approx(0.01 * std::fabs(traj.p1_samples.front())).epsilon(0.1));
    CHECK(du > 0.0);   // u is no longer conserved either
}

TEST_CASE("single-sample trajectory") {
    StaticSetup s(1.0, 2.0);
    const auto traj = integrate_pair(s.phase, 0.3, 0.2, 0.0, s.p, 1e-10);
    REQUIRE(traj.size() == 1);
    const auto [du, dp] = epr_drift(traj);
    CHECK(du == 0.0);
    CHECK(dp <= 1e-15);
}

TEST_CASE("adaptive accuracy on a growing flow") {
    // dS/dx1 = x1, dS/dx2 = -x2: closed form x1 = e^lambda, x2 = e^-lambda.
    PhaseField saddle;
    saddle.dx1 = [](double x1, double) { return x1; };
    saddle.dx2 = [](double, double x2) { return -x2; };
    saddle.value = [](double, double) { return 0.0; };
    const auto p = natural_units();

    auto final_error = [&](double tol) {
        const auto traj = integrate_pair(saddle, 1.0, 1.0, 1.0, p, tol);
        return std::fabs(traj.x1_samples.back() - std::exp(1.0));
    };
    CHECK(final_error(1e-10) <= 1e-7);
    const double coarse = final_error(1e-5);
    const double fine = final_error(1e-9);
    CHECK(coarse / std::max(fine, 1e-16) >= 2.0);
}

TEST_CASE("determinism") {
    StaticSetup s(1.0, 2.0);
    const auto a = integrate_pair(s.phase, 0.3, 0.2, 3.0, s.p, 1e-10);
    const auto b = integrate_pair(s.phase, 0.3, 0.2, 3.0, s.p, 1e-10);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.x1_samples[i] == b.x1_samples[i]);
        CHECK(a.x2_samples[i] == b.x2_samples[i]);
    }
}

TEST_CASE("boundary stop with partial trajectory") {
    PhaseField walled;
    walled.dx1 = [](double x1, double) {
        if (x1 > 1.0) throw DomainError("wall");
        return 1.0;
    };
    walled.dx2 = [](double, double) { return -1.0; };
    walled.value = [](double, double) { return 0.0; };
    const auto p = natural_units();
    const auto traj = integrate_pair(walled, 0.0, 0.0, 10.0, p, 1e-10);
    CHECK(traj.stop == StopReason::boundary);
    CHECK(traj.size() >= 2);
    CHECK(traj.x1_samples.back() <= 1.0);
    CHECK(traj.x1_samples.back() >= 1.0 - 1e-3);
}

TEST_CASE("start outside the domain") {
    StaticSetup s(2.0, 1.0);   // R^2 <= 0 around u = 4.5
    CHECK_THROWS_AS(integrate_pair(s.phase, 2.25, 2.25, 1.0, s.p, 1e-10), DomainError);
    CHECK_THROWS_AS(integrate_pair(s.phase, 0.1, 0.1, 1.0, s.p, -1.0), PreconditionError);
}

TEST_CASE("trajectory CSV layout") {
    StaticSetup s(1.0, 2.0);
    const auto traj = integrate_pair(s.phase, 0.3, 0.2, 1.0, s.p, 1e-8);
    std::ostringstream os;
    write_trajectory_csv(os, traj);
    const std::string text = os.str();
    CHECK(text.rfind("lambda,x1,x2,u,p1,p2\n", 0) == 0);
}
