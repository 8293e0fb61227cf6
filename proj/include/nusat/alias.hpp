#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nusat/rng.hpp"

namespace nusat {

// Walker/Vose alias table for O(1) draws from a fixed pmf.
class AliasTable
{
  public:
	AliasTable() = default;
	explicit AliasTable(std::span<const double> pmf);

	std::uint32_t size() const
	{
		return static_cast<std::uint32_t>(accept_.size());
	}

	// idx uniform in [0,n), u uniform in [0,1). Split out so callers control
	// exactly how much of the random stream one draw consumes.
	std::uint32_t pick(std::uint32_t idx, double u) const
	{
		return u < accept_[idx] ? idx : alias_[idx];
	}

	std::uint32_t sample(CounterRng &rng) const
	{
		auto idx = static_cast<std::uint32_t>(rng.next_below(size()));
		return pick(idx, rng.next_double());
	}

  private:
	std::vector<double> accept_;
	std::vector<std::uint32_t> alias_;
};

} // namespace nusat
