#pragma once

#include <vector>

#include "ifc/rate_theory.hpp"

// First-step initialization and the full per-step coefficient schedule.
// The first transmission uses specially chosen (P1, b1, beta1) that place the
// second-moment recursion exactly on its fixed point (P, rho) from step 2 on;
// every later step reuses the constant steady-state coefficients.

namespace ifc {

struct BootstrapParams {
    double P1;    // first-step power
    double b1;    // first-step feedback coefficient
    double beta1; // first-step contraction factor
};

// Immutable per-step coefficient schedule, shareable across trials.
// Index n runs 1..n_max; arrays are 0-based with entry k for step k+1.
// rho_n carries the alternating sign (-1)^n rho for n >= 2 and rho_1 = 0.
struct Schedule {
    ChannelParams ch;
    double rho;          // steady correlation magnitude
    BootstrapParams boot;
    FixedPointSolution steady;
    int n_max;
    std::vector<double> P_n;
    std::vector<double> rho_n;
    std::vector<double> b_n;
    std::vector<double> beta_n;
};

// Solve the first-step equations
//   P rho = (P1/beta1^2) 2|a|(b1^2 - b1)
//   P     = (1/beta1^2) [P1 - 2 b1 P1 + b1^2 (1 + P1 + a^2 P1)]
// for (P1, b1, beta1) given the target steady state (rho, P).
BootstrapParams bootstrap_params(double rho, const ChannelParams& ch);

// Bootstrap step 1 followed by the beta-minimizing fixed point at rho for
// steps >= 2; verifies by running the exact two-moment recursion that the
// schedule holds (P, (-1)^n rho) for all n >= 2.
Schedule build_schedule(double rho, const ChannelParams& ch, int n_max);

// One step of the exact second-moment recursion: given (P_n, rho_n signed)
// and coefficients (b_n, beta_n), produce (P_{n+1}, rho_{n+1} signed).
void moment_recursion_step(double& P, double& rho, double b, double beta,
                           const ChannelParams& ch);

} // namespace ifc
