#include "nusat/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "nusat/errors.hpp"

namespace nusat {

const char *regime_name(Regime r)
{
	switch (r)
	{
	case Regime::Case1:
		return "Case1";
	case Regime::Case2:
		return "Case2";
	case Regime::Case3:
		return "Case3";
	}
	return "?";
}

double clamp_unit(double x)
{
	if (x < 0.0)
		return 0.0;
	if (x > 1.0)
		return 1.0;
	return x;
}

namespace {

Regime classify_single(const Distribution &d, double tol)
{
	double p1 = d.p(1);
	double r1 = p1 * p1 / d.sum_sq();
	if (r1 <= tol)
		return Regime::Case3;
	double p2 = d.p(2);
	double r2 = p2 * p2 / d.sum_sq_tail();
	return r2 <= tol ? Regime::Case2 : Regime::Case1;
}

// least-squares slope of y against x
double fit_slope(std::span<const double> x, std::span<const double> y)
{
	double n = static_cast<double>(x.size());
	double sx = 0, sy = 0, sxx = 0, sxy = 0;
	for (std::size_t i = 0; i < x.size(); ++i)
	{
		sx += x[i];
		sy += y[i];
		sxx += x[i] * x[i];
		sxy += x[i] * y[i];
	}
	return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

RegimeCall classify_regime(const EnsembleSpec &spec,
                           std::span<const std::uint32_t> n_grid,
                           double slope_tol, bool force_empirical)
{
	RegimeCall call;

	if (!force_empirical && spec.scalable())
	{
		call.closed_form = true;
		switch (spec.family)
		{
		case Family::Uniform:
			call.regime = Regime::Case3;
			call.note = "closed form: uniform ensemble is sharp";
			return call;
		case Family::Geometric:
			call.regime = Regime::Case3;
			call.note = "closed form: geometric ensemble has p1^2 = o(sum p^2)";
			return call;
		case Family::PowerLaw:
			call.regime = spec.beta >= 3.0 ? Regime::Case3 : Regime::Case1;
			call.note = spec.beta >= 3.0
			                ? "closed form: power law with beta >= 3 is sharp"
			                : "closed form: power law with beta < 3 is coarse "
			                  "(both diagnostic ratios are Theta(1))";
			return call;
		case Family::Explicit:
			break;
		}
	}

	if (!spec.scalable())
		throw ConstructionError(
		    "classify_regime: explicit ensembles fix a single n and cannot be "
		    "fitted across an n grid; predict_threshold applies a single-n "
		    "heuristic instead");

	if (n_grid.size() < 3)
		throw ConstructionError(
		    "classify_regime: empirical fit needs >= 3 grid points");
	for (std::size_t i = 1; i < n_grid.size(); ++i)
		if (n_grid[i] <= n_grid[i - 1])
			throw ConstructionError("classify_regime: n_grid must increase");
	double span = static_cast<double>(n_grid.back()) /
	              static_cast<double>(n_grid.front());
	if (span < 100.0)
		throw ConstructionError(
		    "classify_regime: n_grid must span at least two decades");

	std::vector<double> lx, lr1, lr2;
	for (std::uint32_t n : n_grid)
	{
		Distribution d = Distribution::instantiate(spec, n);
		double p1 = d.p(1), p2 = d.p(2);
		lx.push_back(std::log(static_cast<double>(n)));
		lr1.push_back(std::log(p1 * p1 / d.sum_sq()));
		lr2.push_back(std::log(p2 * p2 / d.sum_sq_tail()));
	}
	call.r1_slope = fit_slope(lx, lr1);
	call.r2_slope = fit_slope(lx, lr2);

	char note[220];
	if (call.r1_slope < -slope_tol)
	{
		call.regime = Regime::Case3;
		std::snprintf(note, sizeof(note),
		              "empirical fit: log r1 slope %.4f < -%.2f suggests "
		              "p1^2 = o(sum p^2); evidence, not proof",
		              call.r1_slope, slope_tol);
	}
	else if (call.r2_slope < -slope_tol)
	{
		call.regime = Regime::Case2;
		std::snprintf(note, sizeof(note),
		              "empirical fit: log r1 slope %.4f is flat, log r2 slope "
		              "%.4f < -%.2f; evidence, not proof",
		              call.r1_slope, call.r2_slope, slope_tol);
	}
	else
	{
		call.regime = Regime::Case1;
		std::snprintf(note, sizeof(note),
		              "empirical fit: log r1 slope %.4f and log r2 slope %.4f "
		              "both flat (|slope| <= %.2f); evidence, not proof",
		              call.r1_slope, call.r2_slope, slope_tol);
	}
	call.note = note;
	return call;
}

ThresholdReport predict_threshold(const Distribution &d)
{
	ThresholdReport rep;
	double p1 = d.p(1), p2 = d.p(2);
	rep.r1 = p1 * p1 / d.sum_sq();
	rep.r2 = p2 * p2 / d.sum_sq_tail();
	rep.f_ratio = d.f_ratio();
	rep.q_max = d.q_max();

	const EnsembleSpec &spec = d.spec();
	switch (spec.family)
	{
	case Family::Uniform:
		rep.regime = Regime::Case3;
		rep.note = "closed form: uniform ensemble is sharp";
		break;
	case Family::Geometric:
		rep.regime = Regime::Case3;
		rep.note = "closed form: geometric ensemble is sharp";
		break;
	case Family::PowerLaw:
		rep.regime = spec.beta >= 3.0 ? Regime::Case3 : Regime::Case1;
		rep.note = spec.beta >= 3.0
		               ? "closed form: power law with beta >= 3 is sharp"
		               : "closed form: power law with beta < 3 is coarse";
		break;
	case Family::Explicit:
		rep.regime = classify_single(d, 0.05);
		rep.note = "single-n heuristic (ratio threshold 0.05) on an explicit "
		           "distribution; asymptotic regime is not decidable from one "
		           "pmf";
		break;
	}

	rep.sharp = rep.regime == Regime::Case3;
	if (rep.regime == Regime::Case3)
	{
		rep.formula_tag = "one_over_sum_sq";
		if (spec.family == Family::Uniform)
		{
			// sum p^2 is exactly n*(1/n)^2 = 1/n as a rational, so the sharp
			// threshold is exactly n; bypass the float moment sum
			rep.m_star = static_cast<double>(d.n());
		}
		else
		{
			rep.m_star = 1.0 / d.sum_sq();
		}
	}
	else
	{
		rep.formula_tag = "one_minus_sum_sq_over_p1_sqrt_tail";
		rep.m_star = (1.0 - d.sum_sq()) / (p1 * std::sqrt(d.sum_sq_tail()));
		rep.note += "; coarse case pins the order only, the constant is an "
		            "anchor for sweeps";
	}
	return rep;
}

double unsat_bound_inclusion_exclusion(double q_max, double m, int k)
{
	if (!(q_max > 0.0 && q_max < 1.0))
		throw DomainError("unsat_bound_inclusion_exclusion: q_max in (0,1)");
	if (m < 0.0)
		throw DomainError("unsat_bound_inclusion_exclusion: m >= 0");
	if (k < 2 || k > 16)
		throw DomainError("unsat_bound_inclusion_exclusion: k in [2,16]");
	double e = std::exp(-q_max * m);
	double pow2k = std::ldexp(1.0, 2 * k); // 2^{2k}
	double cells = std::ldexp(1.0, k);     // 2^k
	return std::pow(1.0 - e, cells) -
	       q_max * q_max * pow2k * m * std::pow(1.0 + e, cells);
}

double unsat_bound_constant_q(double q_max, double m, int k)
{
	if (!(q_max > 0.0 && q_max <= 1.0))
		throw DomainError("unsat_bound_constant_q: q_max in (0,1]");
	if (m < 0.0)
		throw DomainError("unsat_bound_constant_q: m >= 0");
	if (k < 2 || k > 16)
		throw DomainError("unsat_bound_constant_q: k in [2,16]");
	double e = std::exp(-q_max * m);
	return 2.0 - std::pow(1.0 + e, std::ldexp(1.0, k));
}

double expected_snakes_lower_bound(const Distribution &d, double m,
                                   std::uint32_t t)
{
	if (t < 2)
		throw DomainError("expected_snakes_lower_bound: t must be >= 2");
	double tt = 2.0 * static_cast<double>(t);
	if (!(m > tt))
		throw DomainError("expected_snakes_lower_bound: requires m > 2t");
	double q = d.q_max();
	if (!(tt * q < 1.0))
		throw DomainError("expected_snakes_lower_bound: requires 2t*q_max < 1");

	double p2 = d.p(2);
	double tail_factor = d.sum_sq_tail() - (tt - 2.0) * p2 * p2;
	if (tail_factor <= 0.0)
		return 0.0; // vacuous bound

	// evaluated in logs; the bound can be astronomically large for big n
	double log_val = std::log(0.5) + tt * std::log(m - tt) +
	                 tt * std::log(d.c_const()) -
	                 (m - tt) * (tt * q) / (1.0 - tt * q) +
	                 std::log(d.sum_p4()) +
	                 (tt - 2.0) * std::log(tail_factor);
	return std::exp(log_val);
}

double bicycle_expectation_upper_bound(const Distribution &d, double m,
                                       std::uint32_t t_max)
{
	if (m < 0.0)
		throw DomainError("bicycle_expectation_upper_bound: m >= 0");
	double cm = d.c_const() * m;
	double ratio = cm * d.sum_sq();
	if (ratio >= 1.0)
		return std::numeric_limits<double>::infinity(); // divergent regime

	double p1 = d.p(1);
	double prefactor = 2.0 * cm * p1 * p1;
	double sum = 0.0;
	double rpow = ratio * ratio; // ratio^t starting at t=2
	for (std::uint32_t t = 2; t <= t_max; ++t)
	{
		double term = prefactor * static_cast<double>(t) *
		              static_cast<double>(t) * rpow;
		sum += term;
		if (term < sum * 1e-16)
			break;
		rpow *= ratio;
	}
	return sum;
}

std::uint32_t default_snake_size(const Distribution &d)
{
	double lf = std::log(d.f_ratio());
	if (!(lf > 0.0))
		return 2;
	auto t = static_cast<std::uint32_t>(std::ceil(lf * lf));
	return t < 2 ? 2 : t;
}

} // namespace nusat
