#pragma once

// Test-only oracles, deliberately independent of the library's
// implementation paths: quad-precision moment sums, Kosaraju SCC for
// certificate re-verification, a quadratic co-occurrence scan for VIG, and a
// std::mt19937_64-based formula sampler for fuzzing (so oracle randomness
// does not share code with the library's counter RNG).

#include <quadmath.h>

#include <algorithm>
#include <random>
#include <vector>

#include "nusat/formula.hpp"

namespace testutil {

// ---- quad-precision ensemble reference ----

inline std::vector<__float128> ref_pmf_uniform(unsigned n)
{
	return std::vector<__float128>(n, (__float128)1 / n);
}

inline std::vector<__float128> ref_pmf_powerlaw(double beta, unsigned n)
{
	std::vector<__float128> w(n);
	__float128 e = (__float128)1 / ((__float128)beta - 1);
	for (unsigned i = 0; i < n; ++i)
		w[i] = powq((__float128)n / (i + 1), e);
	__float128 z = 0;
	for (unsigned i = n; i-- > 0;)
		z += w[i];
	for (auto &x : w)
		x /= z;
	return w;
}

inline std::vector<__float128> ref_pmf_geometric(double b, unsigned n)
{
	std::vector<__float128> w(n);
	__float128 bq = b;
	__float128 lead = bq * (1 - powq(bq, (__float128)-1 / n)) / (bq - 1);
	for (unsigned i = 0; i < n; ++i)
		w[i] = lead * powq(bq, -(__float128)i / n);
	return w;
}

inline double ref_power_sum(const std::vector<__float128> &p, int exponent,
                            int from_index)
{
	__float128 s = 0;
	for (std::size_t i = p.size(); i-- > (std::size_t)(from_index - 1);)
	{
		__float128 t = p[i];
		__float128 acc = t;
		for (int e = 1; e < exponent; ++e)
			acc *= t;
		s += acc;
	}
	return (double)s;
}

// ---- independent SCC (Kosaraju) over the implication graph ----

// returns component id per literal code (size 2n+2)
inline std::vector<int> kosaraju_implication_scc(const nusat::Formula &f)
{
	const std::uint32_t nodes = 2 * f.n() + 2;
	std::vector<std::vector<std::uint32_t>> fwd(nodes), rev(nodes);
	for (std::size_t i = 0; i < f.m(); ++i)
	{
		auto c = f.clause(i);
		auto add = [&](nusat::Lit a, nusat::Lit b) {
			fwd[a.neg().code()].push_back(b.code());
			rev[b.code()].push_back(a.neg().code());
		};
		add(c[0], c[1]);
		add(c[1], c[0]);
	}

	std::vector<char> seen(nodes, 0);
	std::vector<std::uint32_t> order;
	order.reserve(nodes);
	std::vector<std::pair<std::uint32_t, std::size_t>> stack;
	for (std::uint32_t s = 2; s < nodes; ++s)
	{
		if (seen[s])
			continue;
		stack.emplace_back(s, 0);
		seen[s] = 1;
		while (!stack.empty())
		{
			auto &[v, i] = stack.back();
			if (i < fwd[v].size())
			{
				std::uint32_t w = fwd[v][i++];
				if (!seen[w])
				{
					seen[w] = 1;
					stack.emplace_back(w, 0);
				}
			}
			else
			{
				order.push_back(v);
				stack.pop_back();
			}
		}
	}

	std::vector<int> comp(nodes, -1);
	int nc = 0;
	std::vector<std::uint32_t> dfs;
	for (auto it = order.rbegin(); it != order.rend(); ++it)
	{
		if (comp[*it] != -1)
			continue;
		dfs.push_back(*it);
		comp[*it] = nc;
		while (!dfs.empty())
		{
			std::uint32_t v = dfs.back();
			dfs.pop_back();
			for (std::uint32_t w : rev[v])
				if (comp[w] == -1)
				{
					comp[w] = nc;
					dfs.push_back(w);
				}
		}
		++nc;
	}
	return comp;
}

// ---- quadratic VIG oracle ----

inline bool vig_oracle_edge(const nusat::Formula &f, std::uint32_t a,
                            std::uint32_t b)
{
	for (std::size_t i = 0; i < f.m(); ++i)
	{
		auto c = f.clause(i);
		bool has_a = false, has_b = false;
		for (nusat::Lit l : c)
		{
			has_a |= l.var() == a;
			has_b |= l.var() == b;
		}
		if (has_a && has_b && a != b)
			return true;
	}
	return false;
}

// ---- mt19937-based random formulas for oracle fuzzing ----

inline nusat::Formula random_formula(std::mt19937_64 &rng, std::uint32_t n,
                                     std::size_t m, int k = 2)
{
	nusat::Formula f(n, k);
	std::uniform_int_distribution<std::uint32_t> var(1, n);
	std::bernoulli_distribution sign(0.5);
	std::vector<nusat::Lit> cl;
	for (std::size_t i = 0; i < m; ++i)
	{
		cl.clear();
		while (cl.size() < static_cast<std::size_t>(k))
		{
			std::uint32_t v = var(rng);
			bool dup = false;
			for (nusat::Lit l : cl)
				dup |= l.var() == v;
			if (!dup)
				cl.push_back(nusat::Lit::make(v, sign(rng)));
		}
		f.append_clause(cl);
	}
	return f;
}

} // namespace testutil
