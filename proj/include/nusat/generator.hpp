#pragma once

#include <cstdint>

#include "nusat/dist.hpp"
#include "nusat/formula.hpp"

namespace nusat {

struct GeneratorConfig
{
	std::uint64_t seed = 0;
	std::uint64_t retry_cap = 1'000'000; // resampling attempts per clause
	unsigned threads = 1;                // output is independent of this
};

// Draw m clauses of arity k: per clause, sample k variable indices i.i.d.
// from the pmf; if any coincide, discard the whole tuple and redraw; then
// flip k independent fair sign bits.
//
// Each clause consumes its own counter stream keyed by
// fork(mix64(seed), clause_index):
//   per attempt, per slot: one word for the alias cell, one for the accept
//   threshold; after an accepted tuple, one word whose bit j is the sign of
//   literal j.
// Output is therefore a pure function of (distribution, k, m, seed),
// regardless of how clauses are sharded across threads.
//
// Variables are emitted in the caller's coordinates (user_label), which only
// differs from sorted order for explicit weight files.
Formula sample_formula(const Distribution &d, int k, std::uint64_t m,
                       const GeneratorConfig &cfg);

} // namespace nusat
