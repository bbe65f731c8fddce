#pragma once

#include <cstdint>

// Scalar Gaussian primitives: standard normal CDF / inverse CDF and a
// seeded, splittable Gaussian sampler.

namespace ifc {

// P(N(0,1) <= x). Absolute error below 1e-15 over the double range.
double std_normal_cdf(double x);

// Quantile of N(0,1). Requires 0 < p < 1; accurate to ~1e-12 after a
// Newton refinement on the CDF.
double std_normal_inv_cdf(double p);

// Message point theta in (0,1) mapped to the first channel input,
// sqrt(P1) * Phi^{-1}(theta). Under uniform theta the result is N(0, P1).
double message_to_signal(double theta, double P1);

// Deterministic random stream keyed by (seed, stream_id). Two streams with
// equal keys produce bit-identical sequences; distinct stream ids give
// statistically independent streams, so each Monte Carlo trial owns one.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    // Uniform on (0,1), endpoints excluded.
    double next_uniform();

    // N(0, sigma^2) via inverse-CDF transform of next_uniform().
    double next_gaussian(double sigma = 1.0);

    std::uint64_t next_u64();

private:
    std::uint64_t state_;
    std::uint64_t inc_;
};

} // namespace ifc
