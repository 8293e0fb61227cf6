#pragma once

#include <cstdint>

namespace nusat {

// Counter-based pseudo-random stream used for every random draw in the
// library. The construction is fixed and platform-independent; golden tests
// pin the exact values:
//
//   mix64(z)    = splitmix64 finalizer of z
//   fork(k, s)  = mix64(k ^ (mix64(s) + GAMMA))   -- child stream key
//   out(k, j)   = mix64(k + (j+1) * GAMMA)        -- j-th output of stream k
//
// A stream is fully determined by its key, so the draw at any coordinate
// (seed, clause, counter) can be regenerated without sequential state. This
// is what makes generator output independent of how work is sharded across
// threads.

inline constexpr std::uint64_t rng_gamma = 0x9e3779b97f4a7c15ull;

constexpr std::uint64_t mix64(std::uint64_t z)
{
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
	return z ^ (z >> 31);
}

constexpr std::uint64_t fork_key(std::uint64_t key, std::uint64_t s)
{
	return mix64(key ^ (mix64(s) + rng_gamma));
}

class CounterRng
{
  public:
	explicit CounterRng(std::uint64_t key) : key_(key) {}

	std::uint64_t next() { return mix64(key_ + (++counter_) * rng_gamma); }

	// uniform in [0,1), 53 bits
	double next_double()
	{
		return static_cast<double>(next() >> 11) * 0x1.0p-53;
	}

	// uniform in [0,n) by 128-bit multiply; bias < n/2^64
	std::uint64_t next_below(std::uint64_t n)
	{
		return static_cast<std::uint64_t>(
		    (static_cast<unsigned __int128>(next()) * n) >> 64);
	}

	std::uint64_t key() const { return key_; }

  private:
	std::uint64_t key_;
	std::uint64_t counter_ = 0;
};

} // namespace nusat
