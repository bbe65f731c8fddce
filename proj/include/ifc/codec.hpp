#pragma once

#include "ifc/schedule.hpp"

// Operational encoder/decoder. The transmitter runs the linear feedback
// recursion x_{n+1} = (x_n - b_n s_n y_n)/beta_n and emits the state with a
// per-step sign; the receiver composes the inverse affine maps
// w_n(x) = beta_n x + b_n s_n y_n into a single slope/offset pair and pulls
// a fixed interval around x_{n+1} back to an interval for x_1, then through
// the Gaussian message map to an interval for theta.

namespace ifc {

enum class Role { user1, user2 };

struct ThetaInterval {
    double lo;
    double hi;
};

class Encoder {
public:
    // First channel input is sqrt(P1) Phi^{-1}(theta); no sign factor at step 1.
    Encoder(double theta, const Schedule& sched, Role role);

    // Advance on this transmitter's own feedback observation y_n.
    // Returns the emitted (signed) symbol for step n+1.
    double step(double y, const Schedule& sched);

    double state() const { return x_; }     // unsigned recursion state x_n
    double emitted() const { return tx_; }  // signed channel input for step n
    int step_index() const { return n_; }

private:
    Role role_;
    double x_;
    double tx_;
    int n_; // current step (state holds x_n)
};

// Physical channel y1 = tx1 + a tx2 + z1, y2 = tx2 + a tx1 + z2, applied to
// the emitted symbols. With the encoders' sign conventions this reproduces
// the signed per-step receive equations at every step.
void channel_step(double tx1, double tx2, double a, double z1, double z2,
                  double& y1, double& y2);

class Decoder {
public:
    explicit Decoder(Role role) : role_(role) {}

    // Fold in observation y_n: T_n = T_{n-1} o w_n kept as (slope, offset).
    void update(double y, const Schedule& sched);

    // Map (-half_width, +half_width) around x_{n+1} through T_n and the
    // CDF of N(0, P1) to an interval for theta.
    ThetaInterval decode_interval(double half_width, const Schedule& sched) const;

    // log2 of the decoded interval's length; stays accurate when the
    // direct CDF difference underflows.
    double log2_interval_width(double half_width, const Schedule& sched) const;

    // T_n(s) = slope * s + offset; inverts the encoder recursion exactly.
    double apply(double s) const { return slope_ * s + offset_; }

    double slope() const { return slope_; }
    double offset() const { return offset_; }
    int step_index() const { return n_; }

private:
    Role role_;
    double slope_ = 1.0;
    double offset_ = 0.0;
    int n_ = 0;
};

} // namespace ifc
