#include "ifc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ifc/gauss_math.hpp"

namespace ifc {

namespace {

constexpr double kOverflowLimit = 1e9;

double steady_rate(const Schedule& sched) {
    return -std::log2(sched.steady.beta);
}

double half_width_at(const SimConfig& cfg, const Schedule& sched, int n) {
    if (cfg.half_width.kind == HalfWidthRule::Kind::fixed)
        return cfg.half_width.value;
    const double r_sym = steady_rate(sched);
    return std::sqrt(cfg.ch.P) *
           std::exp2(0.5 * static_cast<double>(n) * (r_sym - cfg.half_width.value));
}

} // namespace

TrialResult run_trial(const SimConfig& cfg, const Schedule& sched, std::uint64_t trial_seed) {
    if (sched.n_max < cfg.n_steps + 1)
        throw std::domain_error("run_trial: schedule horizon must exceed n_steps");

    RngStream rng(cfg.seed, trial_seed);
    const double theta1 = rng.next_uniform();
    const double theta2 = rng.next_uniform();

    Encoder enc1(theta1, sched, Role::user1);
    Encoder enc2(theta2, sched, Role::user2);
    Decoder dec1(Role::user1);
    Decoder dec2(Role::user2);
    const double x1_first = enc1.state();
    const double x2_first = enc2.state();

    TrialResult res;
    res.x1.reserve(cfg.n_steps);
    res.x2.reserve(cfg.n_steps);
    res.contained1.reserve(cfg.n_steps);
    res.contained2.reserve(cfg.n_steps);

    for (int n = 1; n <= cfg.n_steps; ++n) {
        res.x1.push_back(enc1.state());
        res.x2.push_back(enc2.state());

        const double z1 = cfg.zero_noise ? 0.0 : rng.next_gaussian();
        const double z2 = cfg.zero_noise ? 0.0 : rng.next_gaussian();
        double y1, y2;
        channel_step(enc1.emitted(), enc2.emitted(), cfg.ch.a, z1, z2, y1, y2);

        dec1.update(y1, sched);
        dec2.update(y2, sched);
        enc1.step(y1, sched);
        enc2.step(y2, sched);
        if (std::fabs(enc1.state()) > kOverflowLimit || std::fabs(enc2.state()) > kOverflowLimit) {
            res.valid = false;
            return res;
        }

        // theta_m lies in the decoded interval iff x_1 lies in T_n((-h, h)),
        // iff |x_{n+1}| < h (T_n is increasing and T_n(x_{n+1}) = x_1); the
        // latter form stays exact after the interval shrinks below one ulp.
        const double h = half_width_at(cfg, sched, n);
        res.contained1.push_back(std::fabs(enc1.state()) < h);
        res.contained2.push_back(std::fabs(enc2.state()) < h);
        if (n == cfg.n_steps) {
            res.log2_width1 = dec1.log2_interval_width(h, sched);
            res.log2_width2 = dec2.log2_interval_width(h, sched);
        }
    }
    return res;
}

SimStats run_batch(const SimConfig& cfg) {
    if (cfg.trials < 1)
        throw std::domain_error("run_batch: trials must be >= 1");
    if (cfg.half_width.kind == HalfWidthRule::Kind::geometric) {
        Schedule probe = build_schedule(cfg.rho, cfg.ch, 2);
        const double r_sym = steady_rate(probe);
        if (!(cfg.half_width.value > 0.0 && cfg.half_width.value < r_sym))
            throw std::domain_error("run_batch: geometric rule needs 0 < target rate < R_sym");
    }

    const Schedule sched = build_schedule(cfg.rho, cfg.ch, cfg.n_steps + 1);
    const int n = cfg.n_steps;

    SimStats st;
    st.corr_trajectory.assign(n, 0.0);
    for (int u = 0; u < 2; ++u) {
        st.power_trajectory[u].assign(n, 0.0);
        st.err_trajectory[u].assign(n, 0.0);
    }
    std::vector<double> cross(n, 0.0);
    double sum_rate[2] = {0.0, 0.0};
    long misses[2] = {0, 0};
    int n_valid = 0;

    for (int t = 0; t < cfg.trials; ++t) {
        TrialResult tr = run_trial(cfg, sched, static_cast<std::uint64_t>(t));
        if (!tr.valid) {
            ++st.n_invalid;
            continue;
        }
        ++n_valid;
        for (int k = 0; k < n; ++k) {
            st.power_trajectory[0][k] += tr.x1[k] * tr.x1[k];
            st.power_trajectory[1][k] += tr.x2[k] * tr.x2[k];
            cross[k] += tr.x1[k] * tr.x2[k];
            st.err_trajectory[0][k] += tr.contained1[k] ? 0.0 : 1.0;
            st.err_trajectory[1][k] += tr.contained2[k] ? 0.0 : 1.0;
        }
        misses[0] += tr.contained1[n - 1] ? 0 : 1;
        misses[1] += tr.contained2[n - 1] ? 0 : 1;
        sum_rate[0] += -tr.log2_width1 / static_cast<double>(n);
        sum_rate[1] += -tr.log2_width2 / static_cast<double>(n);
    }
    if (n_valid == 0)
        throw std::runtime_error("run_batch: every trial overflowed");

    st.trials = cfg.trials;
    for (int k = 0; k < n; ++k) {
        st.power_trajectory[0][k] /= n_valid;
        st.power_trajectory[1][k] /= n_valid;
        cross[k] /= n_valid;
        st.corr_trajectory[k] =
            cross[k] / std::sqrt(st.power_trajectory[0][k] * st.power_trajectory[1][k]);
        st.err_trajectory[0][k] /= n_valid;
        st.err_trajectory[1][k] /= n_valid;
    }
    for (int u = 0; u < 2; ++u) {
        st.err_rate[u] = static_cast<double>(misses[u]) / n_valid;
        st.empirical_rate[u] = sum_rate[u] / n_valid;
        double acc = 0.0;
        for (int k = 0; k < n; ++k)
            acc += st.power_trajectory[u][k];
        st.avg_power[u] = acc / n;
    }
    return st;
}

double power_check(const SimStats& stats, const ChannelParams&) {
    return std::max(stats.avg_power[0], stats.avg_power[1]);
}

} // namespace ifc
