#include "nusat/stats.hpp"

#include <cmath>

#include "nusat/errors.hpp"

namespace nusat {

double inverse_normal_cdf(double p)
{
	if (!(p > 0.0 && p < 1.0))
		throw DomainError("inverse_normal_cdf: p must lie in (0,1)");

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
	if (p < p_low)
	{
		double q = std::sqrt(-2.0 * std::log(p));
		return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
		        c[5]) /
		       ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
	}
	if (p > 1.0 - p_low)
	{
		double q = std::sqrt(-2.0 * std::log(1.0 - p));
		return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
		         c[5]) /
		       ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
	}
	double q = p - 0.5;
	double r = q * q;
	return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
	        a[5]) *
	       q /
	       (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double confidence)
{
	if (trials == 0)
		throw DomainError("wilson_interval: trials must be >= 1");
	if (successes > trials)
		throw DomainError("wilson_interval: successes exceed trials");
	if (!(confidence > 0.0 && confidence < 1.0))
		throw DomainError("wilson_interval: confidence must lie in (0,1)");

	double z = inverse_normal_cdf(0.5 + confidence / 2.0);
	double n = static_cast<double>(trials);
	double p = static_cast<double>(successes) / n;
	double z2 = z * z;
	double denom = 1.0 + z2 / n;
	double center = (p + z2 / (2.0 * n)) / denom;
	double half = z *
	              std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;

	WilsonInterval w;
	w.p_hat = p;
	// the endpoints are exact at the degenerate counts; don't let rounding
	// pull them inside the unit interval
	w.low = successes == 0 ? 0.0 : std::max(0.0, center - half);
	w.high = successes == trials ? 1.0 : std::min(1.0, center + half);
	return w;
}

} // namespace nusat
