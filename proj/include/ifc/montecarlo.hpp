#pragma once

#include <cstdint>
#include <vector>

#include "ifc/codec.hpp"
#include "ifc/schedule.hpp"

// End-to-end Monte Carlo harness: simulate both users through the channel
// with feedback, track containment of the message point in the decoded
// interval, the empirical rate, and the per-step moment trajectories.

namespace ifc {

// Decoding interval half-width at step n. "fixed" keeps h_n = value;
// "geometric" targets rate R = value via h_n = sqrt(P) 2^{n (R_sym - R)/2},
// which grows (errors decay) while the decoded interval still shrinks at
// the average of R_sym and R.
struct HalfWidthRule {
    enum class Kind { fixed, geometric };
    Kind kind = Kind::fixed;
    double value = 0.0; // h for fixed, target rate (bits/use) for geometric
};

struct SimConfig {
    ChannelParams ch;
    double rho = 0.0;      // steady correlation magnitude
    int n_steps = 100;
    int trials = 10000;
    std::uint64_t seed = 0;
    HalfWidthRule half_width;
    bool zero_noise = false;
};

struct TrialResult {
    bool valid = true;
    // Unsigned recursion states x_n, n = 1..n_steps.
    std::vector<double> x1, x2;
    // Containment of theta_m in the step-n decoded interval, n = 1..n_steps.
    std::vector<std::uint8_t> contained1, contained2;
    // log2 |Delta_n| at n = n_steps.
    double log2_width1 = 0.0, log2_width2 = 0.0;
};

struct SimStats {
    double err_rate[2] = {0.0, 0.0};       // at n = n_steps
    double empirical_rate[2] = {0.0, 0.0}; // mean of -(1/n) log2 |Delta_n|
    double avg_power[2] = {0.0, 0.0};      // time average of P_hat_n
    std::vector<double> corr_trajectory;   // sample corr(x1_n, x2_n)
    std::vector<double> power_trajectory[2]; // sample second moments per user
    std::vector<double> err_trajectory[2];   // miss fraction at each n
    int n_invalid = 0;
    int trials = 0;
};

// One seeded trial over a prebuilt schedule (horizon >= n_steps + 1).
TrialResult run_trial(const SimConfig& cfg, const Schedule& sched, std::uint64_t trial_seed);

// Aggregate cfg.trials independent trials, each on its own RNG sub-stream.
SimStats run_batch(const SimConfig& cfg);

// Max over users of the time-averaged empirical power; callers assert
// against P (1 + tol).
double power_check(const SimStats& stats, const ChannelParams& ch);

} // namespace ifc
