#pragma once

#include <cstdint>

namespace nusat {

struct WilsonInterval
{
	double p_hat = 0.0;
	double low = 0.0;
	double high = 1.0;
};

// Wilson score interval for a binomial proportion; stays sane near 0 and 1,
// which is exactly where threshold sweeps operate.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double confidence);

// Acklam's rational approximation of the standard normal quantile,
// |relative error| < 1.2e-9 over (0,1).
double inverse_normal_cdf(double p);

} // namespace nusat
