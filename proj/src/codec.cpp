#include "ifc/codec.hpp"

#include <cmath>
#include <stdexcept>

#include "ifc/gauss_math.hpp"

namespace ifc {

namespace {

double sgn(double x) { return x >= 0.0 ? 1.0 : -1.0; }

// Recursion sign for step n: sgn(rho_n) at user 1, sgn(a) at user 2.
double step_sign(Role role, int n, const Schedule& sched) {
    if (n < 1 || n > sched.n_max)
        throw std::out_of_range("schedule has no entry for this step");
    return role == Role::user1 ? sgn(sched.rho_n[n - 1]) : sgn(sched.ch.a);
}

} // namespace

Encoder::Encoder(double theta, const Schedule& sched, Role role)
    : role_(role), n_(1) {
    x_ = message_to_signal(theta, sched.boot.P1);
    tx_ = x_;
}

double Encoder::step(double y, const Schedule& sched) {
    if (n_ + 1 > sched.n_max)
        throw std::out_of_range("Encoder::step: schedule horizon exhausted");
    const double b = sched.b_n[n_ - 1];
    const double beta = sched.beta_n[n_ - 1];
    if (beta == 0.0)
        throw std::runtime_error("Encoder::step: beta_n = 0 in schedule");
    x_ = (x_ - b * step_sign(role_, n_, sched) * y) / beta;
    ++n_;
    // Emission sign: sgn(rho_{n+1}) at user 1, sgn(a) at user 2.
    tx_ = x_ * step_sign(role_, n_, sched);
    return tx_;
}

void channel_step(double tx1, double tx2, double a, double z1, double z2,
                  double& y1, double& y2) {
    y1 = tx1 + a * tx2 + z1;
    y2 = tx2 + a * tx1 + z2;
}

void Decoder::update(double y, const Schedule& sched) {
    const int n = n_ + 1;
    if (n > sched.n_max)
        throw std::out_of_range("Decoder::update: schedule horizon exhausted");
    const double c = sched.b_n[n - 1] * step_sign(role_, n, sched) * y;
    offset_ += slope_ * c;
    slope_ *= sched.beta_n[n - 1];
    n_ = n;
}

ThetaInterval Decoder::decode_interval(double half_width, const Schedule& sched) const {
    if (!(half_width > 0.0))
        throw std::domain_error("decode_interval: half_width must be positive");
    const double s = std::sqrt(sched.boot.P1);
    // All beta_k > 0 keeps T_n increasing, so the endpoints stay ordered.
    return {std_normal_cdf(apply(-half_width) / s), std_normal_cdf(apply(half_width) / s)};
}

double Decoder::log2_interval_width(double half_width, const Schedule& sched) const {
    const double s = std::sqrt(sched.boot.P1);
    // slope * 2h / s directly; the difference of apply() endpoints is
    // swallowed by the offset once the slope shrinks past its ulp.
    const double gap = slope_ * 2.0 * half_width / s;
    if (gap > 1e-8) {
        const double w = std_normal_cdf(apply(half_width) / s) -
                         std_normal_cdf(apply(-half_width) / s);
        if (w > 0.0)
            return std::log2(w);
    }
    // Interval too narrow for the CDF difference: midpoint-density form
    // log2(gap * phi(u_mid)).
    const double u_mid = offset_ / s;
    return std::log2(gap) - (0.5 * u_mid * u_mid + 0.5 * std::log(2.0 * M_PI)) / std::log(2.0);
}

} // namespace ifc
