#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ifc/schedule.hpp"

using namespace ifc;

namespace {

// Oracle: substitute a candidate bootstrap triple into the two first-step
// target identities directly.
double eq11_lhs(const BootstrapParams& bp, const ChannelParams& ch) {
    const double aa = std::fabs(ch.a);
    return bp.P1 / (bp.beta1 * bp.beta1) * 2.0 * aa * (bp.b1 * bp.b1 - bp.b1);
}

double eq12_lhs(const BootstrapParams& bp, const ChannelParams& ch) {
    const double a2 = ch.a * ch.a;
    return (bp.P1 - 2.0 * bp.b1 * bp.P1 + bp.b1 * bp.b1 * (1.0 + bp.P1 + a2 * bp.P1)) /
           (bp.beta1 * bp.beta1);
}

} // namespace

TEST_CASE("bootstrap at rho = 0") {
    const BootstrapParams bp = bootstrap_params(0.0, {0.5, 10.0});
    CHECK(bp.P1 == 10.0);
    CHECK(bp.b1 == 0.0);
    CHECK(bp.beta1 == 1.0);
}

TEST_CASE("bootstrap worked example (rho=0.5, a=1, P=10)") {
    ChannelParams ch{1.0, 10.0};
    const BootstrapParams bp = bootstrap_params(0.5, ch);
    CHECK(bp.P1 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(bp.b1 == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(bp.beta1 == doctest::Approx(std::sqrt(8.0 / 30.0)).epsilon(1e-12));
    CHECK(eq11_lhs(bp, ch) == doctest::Approx(10.0 * 0.5).epsilon(1e-10));
    CHECK(eq12_lhs(bp, ch) == doctest::Approx(10.0).epsilon(1e-10));
}

TEST_CASE("bootstrap at rho = |a|") {
    ChannelParams ch{0.5, 10.0};
    const BootstrapParams bp = bootstrap_params(0.5, ch);
    CHECK(bp.P1 == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
    CHECK(bp.b1 < 0.0);
    CHECK(eq11_lhs(bp, ch) == doctest::Approx(10.0 * 0.5).epsilon(1e-9));
    CHECK(eq12_lhs(bp, ch) == doctest::Approx(10.0).epsilon(1e-9));
    CHECK_THROWS_AS(bootstrap_params(1.5, {1.5, 10.0}), std::domain_error);
}

TEST_CASE("bootstrap residuals across the feasible grid") {
    for (double a : {0.3, 1.0, 2.5})
        for (double P : {1.0, 10.0, 100.0}) {
            ChannelParams ch{a, P};
            const double rho0 = rho_max(ch);
            for (int i = 0; i < 100; ++i) {
                const double rho = rho0 * i / 99.0;
                const BootstrapParams bp = bootstrap_params(rho, ch);
                const double b1sq = bp.beta1 * bp.beta1;
                const double tol = 1e-9 * std::max(1.0, P);
                // residuals multiplied through by beta1^2 so they scale with P
                CHECK(std::fabs((eq11_lhs(bp, ch) - P * rho) * b1sq) < tol);
                CHECK(std::fabs((eq12_lhs(bp, ch) - P) * b1sq) < tol);
                if (rho != 0.0)
                    CHECK(bp.b1 * bp.b1 - bp.b1 > 0.0);
            }
        }
}

TEST_CASE("build_schedule holds the fixed point") {
    ChannelParams ch{1.0, 10.0};
    const Schedule sch = build_schedule(0.5, ch, 50);

    // oracle: iterate the moment recursion independently
    double P = sch.boot.P1, rho = 0.0;
    moment_recursion_step(P, rho, sch.boot.b1, sch.boot.beta1, ch);
    CHECK(P == doctest::Approx(10.0).epsilon(1e-10));
    CHECK(rho == doctest::Approx(0.5).epsilon(1e-10));
    for (int n = 2; n <= 49; ++n) {
        moment_recursion_step(P, rho, sch.b_n[n - 1], sch.beta_n[n - 1], ch);
        CHECK(std::fabs(P - 10.0) < 1e-9);
        CHECK(std::fabs(std::fabs(rho) - 0.5) < 1e-9);
    }
    // one more application leaves (P, |rho|) unchanged
    double P2 = P, rho2 = rho;
    moment_recursion_step(P2, rho2, sch.steady.b, sch.steady.beta, ch);
    CHECK(P2 == doctest::Approx(P).epsilon(1e-9));
    CHECK(std::fabs(rho2) == doctest::Approx(std::fabs(rho)).epsilon(1e-9));

    // schedule arrays
    for (int n = 2; n <= 50; ++n) {
        CHECK(sch.P_n[n - 1] == 10.0);
        CHECK(sch.rho_n[n - 1] == (n % 2 == 0 ? 0.5 : -0.5));
    }
    CHECK(sch.rho_n[0] == 0.0);
}

TEST_CASE("build_schedule at rho = 0 keeps everything flat") {
    const Schedule sch = build_schedule(0.0, {1.0, 10.0}, 10);
    CHECK(sch.boot.beta1 == 1.0);
    for (int n = 1; n <= 10; ++n)
        CHECK(sch.rho_n[n - 1] == 0.0);
    double P = sch.boot.P1, rho = 0.0;
    for (int n = 1; n <= 9; ++n) {
        moment_recursion_step(P, rho, sch.b_n[n - 1], sch.beta_n[n - 1], sch.ch);
        CHECK(rho == 0.0);
        CHECK(P == doctest::Approx(10.0).epsilon(1e-9));
    }
}

TEST_CASE("schedule power average is analytic") {
    const Schedule sch = build_schedule(0.5, {1.0, 10.0}, 50);
    double avg = 0.0;
    for (double p : sch.P_n)
        avg += p;
    avg /= 50.0;
    CHECK(avg == doctest::Approx((sch.boot.P1 + 49.0 * 10.0) / 50.0).epsilon(1e-12));
    CHECK_THROWS_AS(build_schedule(0.5, {1.0, 10.0}, 1), std::domain_error);
}
