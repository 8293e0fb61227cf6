#include "nusat/dist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "nusat/errors.hpp"

namespace nusat {

namespace {

struct NeumaierAcc
{
	double sum = 0.0;
	double comp = 0.0;

	void add(double x)
	{
		double t = sum + x;
		if (std::abs(sum) >= std::abs(x))
			comp += (sum - t) + x;
		else
			comp += (x - t) + sum;
		sum = t;
	}

	double value() const { return sum + comp; }
};

std::string format_double(double x)
{
	char buf[32];
	std::snprintf(buf, sizeof(buf), "%g", x);
	return buf;
}

} // namespace

double neumaier_sum(std::span<const double> xs)
{
	NeumaierAcc acc;
	for (double x : xs)
		acc.add(x);
	return acc.value();
}

EnsembleSpec EnsembleSpec::uniform()
{
	return EnsembleSpec{};
}

EnsembleSpec EnsembleSpec::power_law(double beta)
{
	if (!(beta > 2.0))
		throw ConstructionError("power-law exponent: requires beta > 2, got " +
		                        format_double(beta));
	EnsembleSpec s;
	s.family = Family::PowerLaw;
	s.beta = beta;
	return s;
}

EnsembleSpec EnsembleSpec::geometric(double base)
{
	if (!(base > 1.0))
		throw ConstructionError("geometric base: requires b > 1, got " +
		                        format_double(base));
	EnsembleSpec s;
	s.family = Family::Geometric;
	s.base = base;
	return s;
}

EnsembleSpec EnsembleSpec::explicit_weights(std::vector<double> w)
{
	if (w.size() < 2)
		throw ConstructionError("explicit weights: need at least 2 entries");
	for (std::size_t i = 0; i < w.size(); ++i)
		if (!(w[i] > 0.0) || !std::isfinite(w[i]))
			throw ConstructionError("explicit weights: entry " +
			                        std::to_string(i + 1) +
			                        " is not a positive real");
	EnsembleSpec s;
	s.family = Family::Explicit;
	s.weights = std::move(w);
	return s;
}

EnsembleSpec EnsembleSpec::parse(const std::string &text)
{
	if (text == "uniform")
		return uniform();
	auto colon = text.find(':');
	std::string head = text.substr(0, colon);
	std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
	if (head == "powerlaw" || head == "geometric")
	{
		if (arg.empty())
			throw ConstructionError("distribution '" + head +
			                        "' needs a parameter, e.g. " + head + ":2.5");
		std::size_t pos = 0;
		double v = 0;
		try
		{
			v = std::stod(arg, &pos);
		}
		catch (const std::exception &)
		{
			throw ConstructionError("distribution parameter '" + arg +
			                        "' is not a number");
		}
		if (pos != arg.size())
			throw ConstructionError("distribution parameter '" + arg +
			                        "' is not a number");
		return head == "powerlaw" ? power_law(v) : geometric(v);
	}
	if (head == "file")
	{
		if (arg.empty())
			throw ConstructionError("file: distribution needs a path");
		return load_weights_file(arg);
	}
	throw ConstructionError(
	    "unknown distribution '" + text +
	    "' (expected uniform|powerlaw:BETA|geometric:B|file:PATH)");
}

EnsembleSpec EnsembleSpec::load_weights_file(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw ParseError("cannot open weights file: " + path);
	std::vector<double> w;
	std::string line;
	std::size_t lineno = 0;
	while (std::getline(in, line))
	{
		++lineno;
		auto hash = line.find('#');
		if (hash != std::string::npos)
			line.erase(hash);
		std::istringstream ls(line);
		double v;
		if (!(ls >> v))
			continue; // blank or comment-only line
		std::string rest;
		if (ls >> rest)
			throw ParseError(path + ":" + std::to_string(lineno) +
			                 ": expected one weight per line");
		if (!(v > 0.0) || !std::isfinite(v))
			throw ParseError(path + ":" + std::to_string(lineno) +
			                 ": weight must be a positive real");
		w.push_back(v);
	}
	return explicit_weights(std::move(w));
}

std::string EnsembleSpec::label() const
{
	switch (family)
	{
	case Family::Uniform:
		return "uniform";
	case Family::PowerLaw:
		return "powerlaw:" + format_double(beta);
	case Family::Geometric:
		return "geometric:" + format_double(base);
	case Family::Explicit:
		return "explicit[" + std::to_string(weights.size()) + "]";
	}
	return "?";
}

Distribution Distribution::instantiate(const EnsembleSpec &spec, std::uint32_t n)
{
	if (n < 2)
		throw ConstructionError("variable count: n must be >= 2, got " +
		                        std::to_string(n));

	std::vector<double> pmf(n);
	switch (spec.family)
	{
	case Family::Uniform:
	{
		double v = 1.0 / static_cast<double>(n);
		std::fill(pmf.begin(), pmf.end(), v);
		break;
	}
	case Family::PowerLaw:
	{
		if (!(spec.beta > 2.0))
			throw ConstructionError("power-law exponent: requires beta > 2");
		// p_i proportional to (n/i)^(1/(beta-1))
		double e = 1.0 / (spec.beta - 1.0);
		for (std::uint32_t i = 0; i < n; ++i)
			pmf[i] = std::pow(static_cast<double>(n) / (i + 1), e);
		break;
	}
	case Family::Geometric:
	{
		if (!(spec.base > 1.0))
			throw ConstructionError("geometric base: requires b > 1");
		// p_i = b(1-b^{-1/n})/(b-1) * b^{-(i-1)/n}
		double b = spec.base;
		double inv_n = 1.0 / static_cast<double>(n);
		double lead = b * (1.0 - std::pow(b, -inv_n)) / (b - 1.0);
		for (std::uint32_t i = 0; i < n; ++i)
			pmf[i] = lead * std::pow(b, -static_cast<double>(i) * inv_n);
		break;
	}
	case Family::Explicit:
	{
		if (spec.weights.size() != n)
			throw ConstructionError(
			    "explicit weights: n=" + std::to_string(n) + " but " +
			    std::to_string(spec.weights.size()) + " weights given");
		pmf = spec.weights;
		break;
	}
	}

	// normalize by the computed total (built-in formulas are exact up to
	// rounding; explicit weights carry arbitrary scale)
	double total = neumaier_sum(pmf);
	if (!(total > 0.0) || !std::isfinite(total))
		throw ConstructionError("weights: total is not a positive real");
	for (double &v : pmf)
		v /= total;

	return from_pmf(std::move(pmf), spec);
}

Distribution Distribution::from_pmf(std::vector<double> pmf, EnsembleSpec spec)
{
	const std::size_t n = pmf.size();
	if (n < 2)
		throw ConstructionError("variable count: n must be >= 2, got " +
		                        std::to_string(n));
	for (std::size_t i = 0; i < n; ++i)
		if (!(pmf[i] > 0.0) || !std::isfinite(pmf[i]))
			throw ConstructionError("pmf: entry " + std::to_string(i + 1) +
			                        " is not a positive real");

	double total = neumaier_sum(pmf);
	double dev = std::abs(total - 1.0);
	if (dev > 1e-12 * static_cast<double>(n))
		throw ConstructionError("pmf: sums to " + format_double(total) +
		                        ", outside the 1e-12*n normalization tolerance");
	if (dev != 0.0)
		for (double &v : pmf)
			v /= total;

	Distribution d;
	d.spec_ = std::move(spec);

	// sort non-increasing, remembering user coordinates when the order moves
	std::vector<std::uint32_t> order(n);
	std::iota(order.begin(), order.end(), 0u);
	std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
		return pmf[a] > pmf[b];
	});
	bool identity = true;
	for (std::size_t i = 0; i < n; ++i)
		if (order[i] != i)
		{
			identity = false;
			break;
		}
	d.p_.resize(n);
	for (std::size_t i = 0; i < n; ++i)
		d.p_[i] = pmf[order[i]];
	if (!identity)
	{
		d.perm_.resize(n);
		for (std::size_t i = 0; i < n; ++i)
			d.perm_[i] = order[i] + 1;
	}

	d.finalize();
	return d;
}

void Distribution::finalize()
{
	const std::size_t n = p_.size();

	// power sums for exponents 2..7, summed smallest terms first (the pmf is
	// sorted non-increasing, so iterate from the back); naive front-first
	// summation loses the tail for power laws with beta near 2
	NeumaierAcc acc[6];
	for (std::size_t i = n; i-- > 0;)
	{
		double p = p_[i];
		double q = p * p;
		for (auto &a : acc)
		{
			a.add(q);
			q *= p;
		}
	}
	for (int e = 0; e < 6; ++e)
		moments_[e] = acc[e].value();

	double p1 = p_[0];
	sum_sq_tail_ = sum_sq() - p1 * p1;
	if (!(sum_sq() < 1.0))
		throw ConstructionError("pmf: sum of squares >= 1 (needs n >= 2 with "
		                        "all probabilities positive)");
	c_const_ = 1.0 / (1.0 - sum_sq());
	f_ratio_ = sum_sq() / (p1 * p1);
	q_max_ = c_const_ * 0.5 * p1 * p_[1];

	alias_ = AliasTable(p_);
}

double Distribution::moment_sum(int exponent, int from_index) const
{
	if (exponent < 2 || exponent > 7)
		throw DomainError("moment_sum: exponent must be in [2,7], got " +
		                  std::to_string(exponent));
	if (from_index != 1 && from_index != 2)
		throw DomainError("moment_sum: from_index must be 1 or 2, got " +
		                  std::to_string(from_index));
	double full = moments_[exponent - 2];
	if (from_index == 1)
		return full;
	return full - std::pow(p_[0], exponent);
}

namespace {

// e_0..e_k from power sums via Newton-Girard:
//   e_j = (1/j) sum_{i=1..j} (-1)^{i-1} e_{j-i} s_i
void elementary_symmetric(const Distribution &d, int k, double *el)
{
	double s[8];
	s[1] = 1.0; // normalized pmf
	for (int e = 2; e <= k; ++e)
		s[e] = d.moment_sum(e, 1);
	el[0] = 1.0;
	for (int j = 1; j <= k; ++j)
	{
		double acc = 0.0;
		double sign = 1.0;
		for (int i = 1; i <= j; ++i)
		{
			acc += sign * el[j - i] * s[i];
			sign = -sign;
		}
		el[j] = acc / j;
	}
}

} // namespace

double distinct_tuple_probability(const Distribution &d, int k)
{
	if (k < 2 || k > 7)
		throw ArityError("distinct_tuple_probability: k must be in [2,7]");
	double el[8];
	elementary_symmetric(d, k, el);
	double fact = 1.0;
	for (int i = 2; i <= k; ++i)
		fact *= i;
	return fact * el[k];
}

double clause_probability(const Distribution &d,
                          std::span<const std::uint32_t> vars, int k)
{
	if (k < 2 || static_cast<std::size_t>(k) != vars.size())
		throw ArityError("clause_probability: k=" + std::to_string(k) +
		                 " does not match " + std::to_string(vars.size()) +
		                 " variables (k >= 2 required)");
	if (static_cast<std::uint32_t>(k) > d.n())
		throw ArityError("clause_probability: k exceeds n");
	if (k > 7)
		throw ArityError("clause_probability: k > 7 not supported");

	double prod = 1.0;
	for (std::size_t i = 0; i < vars.size(); ++i)
	{
		if (vars[i] < 1 || vars[i] > d.n())
			throw DomainError("clause_probability: variable index out of range");
		for (std::size_t j = i + 1; j < vars.size(); ++j)
			if (vars[i] == vars[j])
				throw DomainError("clause_probability: repeated variable index " +
				                  std::to_string(vars[i]));
		prod *= d.p(vars[i]);
	}

	double el[8];
	elementary_symmetric(d, k, el);
	return prod / std::ldexp(el[k], k); // prod / (2^k * e_k)
}

} // namespace nusat
