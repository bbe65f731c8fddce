#include "ifc/gauss_math.hpp"

#include <cmath>
#include <stdexcept>

namespace ifc {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880168872420969808;

// Acklam's rational approximation to the normal quantile, |error| < 1.15e-9.
double inv_cdf_approx(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double q = p - 0.5;
    double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// SplitMix64 output mix.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

double std_normal_cdf(double x) {
    if (!std::isfinite(x))
        throw std::domain_error("std_normal_cdf: non-finite input");
    // erfc keeps full relative accuracy in the tail that matters for each sign.
    if (x >= 0.0)
        return 1.0 - 0.5 * std::erfc(x / kSqrt2);
    return 0.5 * std::erfc(-x / kSqrt2);
}

double std_normal_inv_cdf(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("std_normal_inv_cdf: p must lie in (0,1)");
    double x = inv_cdf_approx(p);
    // One Newton step on the CDF; takes the rational seed to ~1e-15.
    double err = std_normal_cdf(x) - p;
    double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    if (pdf > 0.0)
        x -= err / pdf;
    return x;
}

double message_to_signal(double theta, double P1) {
    if (!(theta > 0.0 && theta < 1.0))
        throw std::domain_error("message_to_signal: theta must lie in (0,1)");
    if (!(P1 > 0.0))
        throw std::domain_error("message_to_signal: P1 must be positive");
    return std::sqrt(P1) * std_normal_inv_cdf(theta);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) {
    state_ = mix64(seed ^ mix64(stream_id));
    // Per-stream odd increment decorrelates streams sharing a seed.
    inc_ = mix64(stream_id + 0x632BE59BD9B4E019ULL) | 1ULL;
}

std::uint64_t RngStream::next_u64() {
    state_ += inc_;
    return mix64(state_);
}

double RngStream::next_uniform() {
    // 53-bit mantissa, shifted half a ulp off zero so the result is in (0,1).
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::next_gaussian(double sigma) {
    return sigma * std_normal_inv_cdf(next_uniform());
}

} // namespace ifc
