#include "nusat/alias.hpp"

#include <cassert>

#include "nusat/errors.hpp"

namespace nusat {

AliasTable::AliasTable(std::span<const double> pmf)
{
	const std::size_t n = pmf.size();
	if (n == 0)
		throw ConstructionError("alias table: empty pmf");

	accept_.assign(n, 1.0);
	alias_.resize(n);
	for (std::size_t i = 0; i < n; ++i)
		alias_[i] = static_cast<std::uint32_t>(i);

	std::vector<double> scaled(n);
	for (std::size_t i = 0; i < n; ++i)
		scaled[i] = pmf[i] * static_cast<double>(n);

	// worklists as stacks, filled in index order for determinism
	std::vector<std::uint32_t> small, large;
	small.reserve(n);
	large.reserve(n);
	for (std::size_t i = 0; i < n; ++i)
	{
		if (scaled[i] < 1.0)
			small.push_back(static_cast<std::uint32_t>(i));
		else
			large.push_back(static_cast<std::uint32_t>(i));
	}

	while (!small.empty() && !large.empty())
	{
		std::uint32_t s = small.back();
		small.pop_back();
		std::uint32_t g = large.back();
		large.pop_back();
		accept_[s] = scaled[s];
		alias_[s] = g;
		scaled[g] = (scaled[g] + scaled[s]) - 1.0;
		if (scaled[g] < 1.0)
			small.push_back(g);
		else
			large.push_back(g);
	}

	// leftovers are probability-1 cells up to rounding
	for (std::uint32_t g : large)
		accept_[g] = 1.0;
	for (std::uint32_t s : small)
		accept_[s] = 1.0;
}

} // namespace nusat
