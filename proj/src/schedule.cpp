#include "ifc/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ifc {

namespace {

double sgn(double x) { return x >= 0.0 ? 1.0 : -1.0; }

// Residuals of the two first-step equations, multiplied through by beta1^2.
double boot_residual_corr(const BootstrapParams& bp, double rho, const ChannelParams& ch) {
    const double aa = std::fabs(ch.a);
    return ch.P * rho * bp.beta1 * bp.beta1 -
           bp.P1 * 2.0 * aa * (bp.b1 * bp.b1 - bp.b1);
}

double boot_residual_power(const BootstrapParams& bp, const ChannelParams& ch) {
    const double a2 = ch.a * ch.a;
    return ch.P * bp.beta1 * bp.beta1 -
           (bp.P1 - 2.0 * bp.b1 * bp.P1 + bp.b1 * bp.b1 * (1.0 + bp.P1 + a2 * bp.P1));
}

} // namespace

void moment_recursion_step(double& P, double& rho, double b, double beta,
                           const ChannelParams& ch) {
    const double aa = std::fabs(ch.a), a2 = ch.a * ch.a;
    const double s = sgn(rho), r = std::fabs(rho);
    const double inv_b2 = 1.0 / (beta * beta);
    const double P_next = inv_b2 * (P - 2.0 * P * b * (1.0 + aa * r) +
                                    b * b * (1.0 + P + a2 * P + 2.0 * aa * r * P));
    const double P_rho_next =
        P * s * inv_b2 * (r - 2.0 * b * (r + aa) + b * b * (r * (1.0 + a2) + 2.0 * aa));
    P = P_next;
    rho = P_rho_next / P_next;
}

BootstrapParams bootstrap_params(double rho, const ChannelParams& ch) {
    if (!(ch.P > 0.0))
        throw std::domain_error("bootstrap_params: P must be positive");
    if (!(rho >= 0.0 && rho < 1.0))
        throw std::domain_error("bootstrap_params: rho outside [0,1)");
    if (rho == 0.0)
        return {ch.P, 0.0, 1.0};
    if (ch.a == 0.0)
        throw std::domain_error("bootstrap_params: rho != 0 requires a != 0");

    const double P = ch.P, aa = std::fabs(ch.a), a2 = ch.a * ch.a;
    BootstrapParams bp{};
    if (rho == aa) {
        if (aa >= 1.0)
            throw std::domain_error("bootstrap_params: rho = |a| is infeasible for |a| >= 1");
        bp.P1 = 2.0 / (1.0 - a2);
        // Linear coefficient of the b1 quadratic vanishes here; roots are
        // +-sqrt(-P1 rho / A). Take the negative one (b1^2 - b1 > 0).
        const double A = (1.0 + bp.P1 + a2 * bp.P1) * rho - 2.0 * aa * bp.P1;
        bp.b1 = -std::sqrt(-bp.P1 * rho / A);
    } else {
        // Zero-discriminant choice of P1 collapses the quadratic to one root.
        bp.P1 = rho * rho / (a2 * (1.0 - rho * rho));
        bp.b1 = (rho - aa) * bp.P1 /
                ((1.0 + bp.P1 + a2 * bp.P1) * rho - 2.0 * aa * bp.P1);
    }
    const double beta1_sq = 2.0 * aa * bp.P1 * (bp.b1 * bp.b1 - bp.b1) / (P * rho);
    if (!(beta1_sq > 0.0))
        throw std::runtime_error("bootstrap_params: beta1^2 <= 0 (b1^2 - b1 > 0 violated)");
    bp.beta1 = std::sqrt(beta1_sq);

    const double tol = 1e-9 * std::max(1.0, P);
    if (std::fabs(boot_residual_corr(bp, rho, ch)) > tol ||
        std::fabs(boot_residual_power(bp, ch)) > tol)
        throw std::runtime_error("bootstrap_params: first-step equations not satisfied");
    return bp;
}

Schedule build_schedule(double rho, const ChannelParams& ch, int n_max) {
    if (n_max < 2)
        throw std::domain_error("build_schedule: n_max must be >= 2");

    Schedule sch;
    sch.ch = ch;
    sch.rho = rho;
    sch.n_max = n_max;
    sch.boot = bootstrap_params(rho, ch);

    if (ch.a == 0.0) {
        // Degraded channel: rho is forced to 0, the capacity-achieving b applies.
        sch.steady.rho = 0.0;
        sch.steady.b = ch.P / (ch.P + 1.0);
        sch.steady.beta = 1.0 / std::sqrt(1.0 + ch.P);
    } else {
        FixedPointSolution best;
        best.beta = std::numeric_limits<double>::infinity();
        for (const FixedPointSolution& s : fixed_point_candidates(rho, ch))
            if (s.beta < best.beta)
                best = s;
        if (!std::isfinite(best.beta))
            throw std::domain_error("build_schedule: no feasible fixed point at rho");
        sch.steady = best;
    }

    sch.P_n.resize(n_max);
    sch.rho_n.resize(n_max);
    sch.b_n.resize(n_max);
    sch.beta_n.resize(n_max);
    sch.P_n[0] = sch.boot.P1;
    sch.rho_n[0] = 0.0;
    sch.b_n[0] = sch.boot.b1;
    sch.beta_n[0] = sch.boot.beta1;
    for (int n = 2; n <= n_max; ++n) {
        sch.P_n[n - 1] = ch.P;
        sch.rho_n[n - 1] = (n % 2 == 0) ? rho : -rho;
        sch.b_n[n - 1] = sch.steady.b;
        sch.beta_n[n - 1] = sch.steady.beta;
    }

    // Run the exact recursion through the whole horizon and require it to
    // stay on the fixed point.
    double P = sch.boot.P1, r = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        moment_recursion_step(P, r, sch.b_n[n - 1], sch.beta_n[n - 1], ch);
        const double target = (n + 1 <= n_max) ? sch.rho_n[n] : ((n + 1) % 2 == 0 ? rho : -rho);
        if (std::fabs(P - ch.P) > 1e-6 || std::fabs(r - target) > 1e-6)
            throw std::runtime_error("build_schedule: moment recursion drifted off the fixed point");
    }
    return sch;
}

} // namespace ifc
