#pragma once

#include <vector>

// Closed-form achievable-rate machinery for the symmetric Gaussian
// interference channel with feedback: the time-varying scheme's fixed-point
// optimization, the Kramer-code baseline, the degraded (a = 0) capacity, and
// the high-SNR degrees-of-freedom constructions.

namespace ifc {

// Symmetric channel: noise variance 1, so SNR = P and INR = a^2 P.
struct ChannelParams {
    double a; // interference gain (sign allowed, only |a| matters)
    double P; // per-user power, linear
};

// A (rho, b, beta) triple solving the steady-state moment equations
//   P     = (1/beta^2) [P - 2bP(1+|a|rho) + b^2 (1+P+a^2 P+2|a| rho P)]
//   -rho  = (1/beta^2) [rho - 2b(rho+|a|) + b^2 (rho(1+a^2)+2|a|)]
// Residuals are stored in the beta^2-multiplied form so they scale with P.
struct FixedPointSolution {
    double rho = 0.0;
    double b = 0.0;
    double beta = 1.0;
    double residual_8a = 0.0;
    double residual_8b = 0.0;
};

struct RateResult {
    double rate_bits_per_use = 0.0;
    double rate_bits_per_s_hz = 0.0; // = 2 * rate_bits_per_use
    FixedPointSolution solution;
    double rho_grid_step = 0.0;
};

// Discriminant f(rho) = P^2 a^2 rho^4 - 2 rho^2 (a^2 P^2 + P) + a^2 P^2 of
// the quadratic in b; nonnegative exactly on [0, rho_max].
double discriminant_f(double rho, const ChannelParams& ch);

// Largest feasible correlation rho_0 in (0,1), the positive root of f.
double rho_max(const ChannelParams& ch);

// Residuals of the two steady-state equations at (rho, b, beta),
// multiplied through by beta^2.
double residual_8a(double rho, double b, double beta, const ChannelParams& ch);
double residual_8b(double rho, double b, double beta, const ChannelParams& ch);

// The up-to-two feasible (b, beta) pairs at a given rho. Duplicates are
// merged at the discriminant root; candidates with nonpositive beta^2 are
// dropped as infeasible.
std::vector<FixedPointSolution> fixed_point_candidates(double rho, const ChannelParams& ch);

// Best achievable symmetric rate: sweep rho over {0, step, 2 step, ...,
// rho_0}, pick the b root minimizing beta, clamp the rate at zero.
// a = 0 falls back to the closed-form degraded solution.
RateResult symmetric_rate(const ChannelParams& ch, double grid_step = 1e-5);

// Kramer-code baseline: the unique root in (0,1) of the quartic
//   2|a|^3 P^2 r^4 + a^2 P r^3 - 4|a|P(a^2 P+1) r^2 - (2 a^2 P+P+2) r
//     + 2|a|P(a^2 P+1) = 0
// with the matching closed-form (b, beta).
RateResult kramer_solution(const ChannelParams& ch);

// Quartic above evaluated at rho (exposed for residual checks).
double kramer_quartic(double rho, const ChannelParams& ch);

// Capacity of the degraded channel (a = 0): (1/2) log2(1+P) bits/use.
double degraded_rate(double P);

// The explicit near-optimal correlation sqrt(1 - P^-gamma + P^-(alpha-1))
// - P^-((alpha-1)/2) used in the high-SNR analysis; satisfies
// 1 - rho^2 - 2 rho P^-((alpha-1)/2) = P^-gamma identically.
double rho_star(double alpha, double P, double gamma);

// rate(bits/s/Hz) / log2(P) at a = P^((alpha-1)/2), i.e. INR = P^alpha.
// Tends to alpha/2 as P grows (alpha > 1).
double gdof_ratio(double alpha, double P, double grid_step = 1e-5);

} // namespace ifc
