#include "ifc/rate_theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ifc {

namespace {

void check_channel(const ChannelParams& ch) {
    if (!(ch.P > 0.0) || !std::isfinite(ch.P) || !std::isfinite(ch.a))
        throw std::domain_error("ChannelParams: require finite a and P > 0");
}

// Degraded channel (a = 0): the maximizing b is P/(P+1), giving
// beta = 1/sqrt(1+P) and the no-interference capacity.
RateResult degraded_solution(double P, double grid_step) {
    RateResult r;
    r.solution.rho = 0.0;
    r.solution.b = P / (P + 1.0);
    r.solution.beta = 1.0 / std::sqrt(1.0 + P);
    ChannelParams ch{0.0, P};
    r.solution.residual_8a = residual_8a(0.0, r.solution.b, r.solution.beta, ch);
    r.solution.residual_8b = residual_8b(0.0, r.solution.b, r.solution.beta, ch);
    r.rate_bits_per_use = degraded_rate(P);
    r.rate_bits_per_s_hz = 2.0 * r.rate_bits_per_use;
    r.rho_grid_step = grid_step;
    return r;
}

} // namespace

double discriminant_f(double rho, const ChannelParams& ch) {
    check_channel(ch);
    const double P = ch.P, a2 = ch.a * ch.a;
    const double r2 = rho * rho;
    return a2 * P * P * r2 * r2 - 2.0 * r2 * (a2 * P * P + P) + a2 * P * P;
}

double rho_max(const ChannelParams& ch) {
    check_channel(ch);
    if (ch.a == 0.0)
        throw std::domain_error("rho_max: degenerate channel a = 0");
    const double P = ch.P, a2 = ch.a * ch.a;
    // Conjugate form of (a^2 P^2 + P - sqrt(P(2 a^2 P^2 + P))) / (a^2 P^2);
    // the textbook expression cancels catastrophically for small a^2 P.
    const double S = a2 * P * P;
    double rho0 = std::sqrt(S / (S + P + std::sqrt(P * P + 2.0 * P * S)));
    // Walk down a few ulps if rounding left the discriminant negative, so
    // the returned point is always feasible.
    while (discriminant_f(rho0, ch) < 0.0)
        rho0 = std::nextafter(rho0, 0.0);
    return rho0;
}

double residual_8a(double rho, double b, double beta, const ChannelParams& ch) {
    const double P = ch.P, aa = std::fabs(ch.a), a2 = ch.a * ch.a;
    const double rhs = P - 2.0 * b * P * (1.0 + aa * rho) +
                       b * b * (1.0 + P + a2 * P + 2.0 * aa * rho * P);
    return beta * beta * P - rhs;
}

double residual_8b(double rho, double b, double beta, const ChannelParams& ch) {
    const double aa = std::fabs(ch.a), a2 = ch.a * ch.a;
    const double rhs = rho - 2.0 * b * (rho + aa) + b * b * (rho * (1.0 + a2) + 2.0 * aa);
    return -rho * beta * beta - rhs;
}

std::vector<FixedPointSolution> fixed_point_candidates(double rho, const ChannelParams& ch) {
    check_channel(ch);
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::domain_error("fixed_point_candidates: rho outside [0,1]");
    const double P = ch.P, aa = std::fabs(ch.a), a2 = ch.a * ch.a;

    double disc = discriminant_f(rho, ch);
    const double disc_scale = std::max(1.0, a2 * P * P);
    if (disc < -1e-12 * disc_scale)
        throw std::domain_error("fixed_point_candidates: rho beyond rho_max (negative discriminant)");
    if (disc < 0.0)
        disc = 0.0; // dust at rho = rho_0

    const double denom = 2.0 * aa * P + 2.0 * P * rho + 2.0 * a2 * P * rho + rho +
                         2.0 * aa * P * rho * rho;
    const double base = 2.0 * P * rho + aa * P + aa * P * rho * rho;
    const double root = std::sqrt(disc);

    std::vector<FixedPointSolution> out;
    const double bs[2] = {(base + root) / denom, (base - root) / denom};
    const int n_roots = (root == 0.0) ? 1 : 2;
    for (int i = 0; i < n_roots; ++i) {
        const double b = bs[i];
        const double beta2 = (P - 2.0 * b * P * (1.0 + aa * rho) +
                              b * b * (1.0 + P + a2 * P + 2.0 * aa * rho * P)) /
                             P;
        if (!(beta2 > 0.0))
            continue; // infeasible, not clamped
        FixedPointSolution s;
        s.rho = rho;
        s.b = b;
        s.beta = std::sqrt(beta2);
        s.residual_8a = residual_8a(rho, b, s.beta, ch);
        s.residual_8b = residual_8b(rho, b, s.beta, ch);
        out.push_back(s);
    }
    return out;
}

RateResult symmetric_rate(const ChannelParams& ch, double grid_step) {
    check_channel(ch);
    if (!(grid_step > 0.0 && grid_step <= 1e-3))
        throw std::domain_error("symmetric_rate: grid_step must lie in (0, 1e-3]");
    if (ch.a == 0.0)
        return degraded_solution(ch.P, grid_step);

    const double rho0 = rho_max(ch);
    FixedPointSolution best;
    best.beta = std::numeric_limits<double>::infinity();

    const long n_steps = static_cast<long>(rho0 / grid_step);
    for (long k = 0; k <= n_steps + 1; ++k) {
        const double rho = std::min(static_cast<double>(k) * grid_step, rho0);
        for (const FixedPointSolution& s : fixed_point_candidates(rho, ch)) {
            if (s.beta < best.beta)
                best = s;
        }
        if (rho == rho0)
            break;
    }

    RateResult r;
    r.solution = best;
    r.rate_bits_per_use = std::max(0.0, -std::log2(best.beta));
    r.rate_bits_per_s_hz = 2.0 * r.rate_bits_per_use;
    r.rho_grid_step = grid_step;
    return r;
}

double kramer_quartic(double rho, const ChannelParams& ch) {
    const double P = ch.P, aa = std::fabs(ch.a), a2 = ch.a * ch.a;
    return 2.0 * aa * a2 * P * P * rho * rho * rho * rho + a2 * P * rho * rho * rho -
           4.0 * aa * P * (a2 * P + 1.0) * rho * rho - (2.0 * a2 * P + P + 2.0) * rho +
           2.0 * aa * P * (a2 * P + 1.0);
}

RateResult kramer_solution(const ChannelParams& ch) {
    check_channel(ch);
    if (ch.a == 0.0)
        throw std::domain_error("kramer_solution: degenerate channel a = 0");
    const double P = ch.P, aa = std::fabs(ch.a), a2 = ch.a * ch.a;

    // Sign-change scan at 1e-3, then bisection; the root is unique in (0,1).
    const double scan = 1e-3;
    double lo = scan, hi = 0.0;
    double f_lo = kramer_quartic(lo, ch);
    for (double x = 2.0 * scan; x < 1.0; x += scan) {
        const double fx = kramer_quartic(x, ch);
        if ((f_lo > 0.0) != (fx > 0.0)) {
            hi = x;
            break;
        }
        lo = x;
        f_lo = fx;
    }
    if (hi == 0.0)
        throw std::runtime_error("kramer_solution: no sign change of the quartic in (0,1)");
    for (int i = 0; i < 100 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        const double fm = kramer_quartic(mid, ch);
        if ((f_lo > 0.0) == (fm > 0.0)) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    const double rho = 0.5 * (lo + hi);

    RateResult r;
    r.solution.rho = rho;
    r.solution.b = P * (1.0 + aa * rho) / (P * (1.0 + a2 + 2.0 * aa * rho) + 1.0);
    r.solution.beta = std::sqrt((a2 * P * (1.0 - rho * rho) + 1.0) /
                                (P * (1.0 + a2 + 2.0 * aa * rho) + 1.0));
    r.solution.residual_8a = residual_8a(rho, r.solution.b, r.solution.beta, ch);
    r.solution.residual_8b = residual_8b(rho, r.solution.b, r.solution.beta, ch);
    r.rate_bits_per_use = std::max(0.0, -std::log2(r.solution.beta));
    r.rate_bits_per_s_hz = 2.0 * r.rate_bits_per_use;
    r.rho_grid_step = 0.0;
    return r;
}

double degraded_rate(double P) {
    if (!(P > 0.0))
        throw std::domain_error("degraded_rate: P must be positive");
    return 0.5 * std::log2(1.0 + P);
}

double rho_star(double alpha, double P, double gamma) {
    if (!(alpha > 1.0) || !(P > 1.0) || !(gamma > 0.0 && gamma < alpha / 2.0))
        throw std::domain_error("rho_star: require alpha > 1, P > 1, 0 < gamma < alpha/2");
    const double q = std::pow(P, -(alpha - 1.0) / 2.0);
    return std::sqrt(1.0 - std::pow(P, -gamma) + q * q) - q;
}

double gdof_ratio(double alpha, double P, double grid_step) {
    if (!(alpha > 1.0) || !(P > 1.0))
        throw std::domain_error("gdof_ratio: require alpha > 1 and P > 1");
    ChannelParams ch{std::pow(P, (alpha - 1.0) / 2.0), P};
    return symmetric_rate(ch, grid_step).rate_bits_per_s_hz / std::log2(P);
}

} // namespace ifc
