#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "nusat/formula.hpp"

namespace nusat {

// Chain of t+1 clauses (u,w1),(~w1,w2),...,(~w_{t-1},w_t],(~w_t,v) where the
// w_i range over distinct variables and u,v are literals of those variables.
// Present in every unsatisfiable 2-CNF; necessary, not sufficient.
struct Bicycle
{
	std::uint32_t t = 0;
	std::vector<Lit> w;
	Lit u, v;
	std::vector<std::uint32_t> clause_indices; // t+1 positions in the host
};

// Sequence of 2t-1 literals over distinct variables; w[t-1] (1-based w_t) is
// the central literal. Its 2t-clause set (snake_clauses) is unsatisfiable.
struct Snake
{
	std::uint32_t t = 0;
	std::vector<Lit> w;

	Lit central() const { return w[t - 1]; }
};

// The 2t clauses (~w_i, w_{i+1}), 0 <= i <= 2t-1, with w_0 = w_{2t} = ~w_t.
std::vector<std::array<Lit, 2>> snake_clauses(const Snake &s);

// Eight literal sequences describe the same clause set (either half may be
// reversed-and-negated, and the traversal may start at either central
// occurrence); the canonical form is the lexicographically least.
Snake canonical_snake(const Snake &s);

// Bounded complete search for a bicycle with t <= t_max realized by clauses
// of f. Worst case exponential; intended for desk-scale formulas.
std::optional<Bicycle> find_bicycle(const Formula &f, std::uint32_t t_max);

struct SnakeClassCount
{
	Snake representative;        // canonical sequence
	std::uint64_t multiplicity;  // occurrences of the full clause set in f
	bool exactly_once;           // every one of the 2t clauses appears exactly once
};

// Census of snake equivalence classes of size t whose full clause set is
// contained in f. Feasible for t <= 3 only.
std::vector<SnakeClassCount> count_snake_occurrences(const Formula &f,
                                                     std::uint32_t t);

// Number of snake *sequences* of size t whose clause set appears exactly once
// in f (each equivalence class contributes its 8 sequences).
std::uint64_t snake_sequences_exactly_once(const Formula &f, std::uint32_t t);

// A set of k variables such that all 2^k sign patterns occur as clauses of f
// (an unsatisfiable sub-formula), if one exists.
std::optional<std::vector<std::uint32_t>> full_sign_core(const Formula &f,
                                                         int k);

// Variable-variable incidence graph: simple graph with an edge wherever two
// variables share a clause.
struct Vig
{
	std::uint32_t n = 0;
	std::vector<std::vector<std::uint32_t>> adj; // 1-based, sorted, deduped

	bool has_edge(std::uint32_t a, std::uint32_t b) const;
	std::size_t edge_count() const;
};

Vig build_vig(const Formula &f);

} // namespace nusat
