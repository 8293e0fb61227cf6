#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nusat/formula.hpp"

namespace nusat {

enum class SolveStatus
{
	Sat,
	Unsat,
};

struct SolveResult
{
	SolveStatus status = SolveStatus::Sat;
	// 1-based truth values, size n+1, populated when SAT
	std::vector<std::uint8_t> assignment;
	// a variable whose literal and negation share an implication-graph SCC,
	// populated on UNSAT by solve2 (brute force gives status only)
	std::optional<std::uint32_t> witness_var;

	bool sat() const { return status == SolveStatus::Sat; }
};

// Linear-time 2-SAT decision via strongly connected components of the
// implication graph (edges ~a -> b and ~b -> a per clause (a v b)). The SCC
// pass is iterative so formulas with n in the millions cannot overflow the
// call stack. Reusable across solves; buffers are kept between calls.
class TwoSatSolver
{
  public:
	SolveResult solve(const Formula &f);

  private:
	std::vector<std::uint32_t> edge_head_;
	std::vector<std::uint32_t> edge_to_;
	std::vector<std::uint32_t> index_;
	std::vector<std::uint32_t> low_;
	std::vector<std::uint32_t> comp_;
	std::vector<std::uint32_t> scc_stack_;
	std::vector<std::uint8_t> on_stack_;
	std::vector<std::pair<std::uint32_t, std::uint32_t>> call_stack_;
};

// SAT results carry an assignment that has been verified against every
// clause; UNSAT results carry a witness variable.
SolveResult solve2(const Formula &f);

// Exhaustive oracle over all 2^n assignments; n <= 25. Works for any arity.
SolveResult solve_brute(const Formula &f);

bool satisfies(const Formula &f, std::span<const std::uint8_t> assignment);

} // namespace nusat
