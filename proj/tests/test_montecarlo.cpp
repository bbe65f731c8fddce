#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ifc/montecarlo.hpp"
#include "ifc/rate_theory.hpp"

using namespace ifc;

namespace {

SimConfig base_config() {
    SimConfig cfg;
    cfg.ch = {0.5, 10.0};
    cfg.rho = symmetric_rate(cfg.ch, 1e-4).solution.rho;
    cfg.n_steps = 40;
    cfg.trials = 5000;
    cfg.seed = 8;
    cfg.half_width = {HalfWidthRule::Kind::fixed, 6.0 * std::sqrt(10.0)};
    return cfg;
}

} // namespace

TEST_CASE("zero-noise trials always contain the message") {
    SimConfig cfg = base_config();
    cfg.zero_noise = true;
    cfg.trials = 50;
    const SimStats st = run_batch(cfg);
    CHECK(st.err_rate[0] == 0.0);
    CHECK(st.err_rate[1] == 0.0);
    for (int k = 0; k < cfg.n_steps; ++k) {
        CHECK(st.err_trajectory[0][k] == 0.0);
        CHECK(st.err_trajectory[1][k] == 0.0);
    }
}

TEST_CASE("fixed seed reproduces trials bit-identically") {
    const SimConfig cfg = base_config();
    const Schedule sched = build_schedule(cfg.rho, cfg.ch, cfg.n_steps + 1);
    const TrialResult a = run_trial(cfg, sched, 5);
    const TrialResult b = run_trial(cfg, sched, 5);
    REQUIRE(a.x1.size() == b.x1.size());
    for (size_t i = 0; i < a.x1.size(); ++i) {
        CHECK(a.x1[i] == b.x1[i]);
        CHECK(a.x2[i] == b.x2[i]);
    }
    CHECK(a.log2_width1 == b.log2_width1);

    const SimStats s1 = run_batch(cfg);
    const SimStats s2 = run_batch(cfg);
    CHECK(s1.empirical_rate[0] == s2.empirical_rate[0]);
    CHECK(s1.err_rate[0] == s2.err_rate[0]);
    CHECK(s1.corr_trajectory[10] == s2.corr_trajectory[10]);
}

TEST_CASE("moment trajectories track the schedule") {
    const SimConfig cfg = base_config();
    const SimStats st = run_batch(cfg);
    const Schedule sched = build_schedule(cfg.rho, cfg.ch, cfg.n_steps + 1);
    // 4.5 standard errors of the estimators at this trial count
    const double se_p = 10.0 * std::sqrt(2.0 / cfg.trials);
    const double se_rho = (1.0 - cfg.rho * cfg.rho) / std::sqrt(static_cast<double>(cfg.trials));
    for (int k = 1; k < cfg.n_steps; ++k) {
        CHECK(std::fabs(st.power_trajectory[0][k] - 10.0) < 4.5 * se_p);
        CHECK(std::fabs(st.power_trajectory[1][k] - 10.0) < 4.5 * se_p);
        CHECK(std::fabs(st.corr_trajectory[k] - sched.rho_n[k]) < 4.5 * se_rho);
    }
    // bootstrap step
    CHECK(std::fabs(st.power_trajectory[0][0] - sched.boot.P1) <
          4.5 * sched.boot.P1 * std::sqrt(2.0 / cfg.trials));
}

TEST_CASE("fixed half width 6 sqrt(P) keeps the miss rate tiny") {
    const SimConfig cfg = base_config();
    const SimStats st = run_batch(cfg);
    CHECK(st.err_rate[0] < 1e-3);
    CHECK(st.err_rate[1] < 1e-3);
}

TEST_CASE("geometric half-width rule behavior") {
    SimConfig cfg = base_config();
    const double r_sym = symmetric_rate(cfg.ch, 1e-4).rate_bits_per_use;
    cfg.half_width = {HalfWidthRule::Kind::geometric, 0.8 * r_sym};
    cfg.n_steps = 60;
    const SimStats st = run_batch(cfg);
    CHECK(st.err_rate[0] < 0.01);
    CHECK(st.empirical_rate[0] >= 0.8 * r_sym);
    // doubling the horizon does not increase the error rate beyond noise
    SimConfig cfg2 = cfg;
    cfg2.n_steps = 120;
    const SimStats st2 = run_batch(cfg2);
    const double se = std::sqrt(std::max(st.err_rate[0], 1e-4) / cfg.trials);
    CHECK(st2.err_rate[0] <= st.err_rate[0] + 3.0 * se + 1e-3);
}

TEST_CASE("geometric rule rejects infeasible target rates") {
    SimConfig cfg = base_config();
    cfg.half_width = {HalfWidthRule::Kind::geometric, 100.0};
    CHECK_THROWS_AS(run_batch(cfg), std::domain_error);
}

TEST_CASE("power_check") {
    const SimConfig cfg = base_config();
    const SimStats st = run_batch(cfg);
    const double pc = power_check(st, cfg.ch);
    CHECK(pc <= 10.0 * 1.01);
    const Schedule sched = build_schedule(cfg.rho, cfg.ch, cfg.n_steps + 1);
    const double analytic =
        (sched.boot.P1 + (cfg.n_steps - 1) * 10.0) / cfg.n_steps;
    CHECK(pc == doctest::Approx(analytic).epsilon(0.05));
}

TEST_CASE("run_trial requires enough schedule horizon") {
    SimConfig cfg = base_config();
    const Schedule sched = build_schedule(cfg.rho, cfg.ch, cfg.n_steps); // one short
    CHECK_THROWS_AS(run_trial(cfg, sched, 0), std::domain_error);
}
