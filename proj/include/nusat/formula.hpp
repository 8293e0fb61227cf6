#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nusat {

// Literal over variable v in [1,n], encoded as 2v (positive) / 2v+1 (negated)
// so that negation is a bit flip and the variable is a shift.
class Lit
{
  public:
	Lit() = default;

	static Lit make(std::uint32_t var, bool negated)
	{
		return Lit(2 * var + (negated ? 1u : 0u));
	}
	static Lit pos(std::uint32_t var) { return make(var, false); }
	static Lit neg_of(std::uint32_t var) { return make(var, true); }
	static Lit from_code(std::uint32_t code) { return Lit(code); }
	static Lit from_dimacs(long long x)
	{
		return make(static_cast<std::uint32_t>(x < 0 ? -x : x), x < 0);
	}

	std::uint32_t var() const { return code_ >> 1; }
	bool negated() const { return code_ & 1u; }
	Lit neg() const { return Lit(code_ ^ 1u); }
	std::uint32_t code() const { return code_; }
	long long to_dimacs() const
	{
		auto v = static_cast<long long>(var());
		return negated() ? -v : v;
	}

	friend auto operator<=>(const Lit &, const Lit &) = default;

  private:
	explicit Lit(std::uint32_t code) : code_(code) {}
	std::uint32_t code_ = 0;
};

// CNF over n variables. Clauses are kept in draw order and duplicates are
// allowed (the drawing model counts draws, not distinct clauses). The common
// case is uniform arity k with implicit offsets; mixed-arity formulas (from
// permissive DIMACS input) fall back to an explicit offset table and report
// k() == 0.
class Formula
{
  public:
	Formula() = default;
	Formula(std::uint32_t n, std::uint32_t k) : n_(n), k_(k) {}

	// preallocated uniform-arity storage for parallel clause filling
	static Formula with_clause_count(std::uint32_t n, std::uint32_t k,
	                                 std::size_t m);

	std::uint32_t n() const { return n_; }
	std::uint32_t k() const { return k_; }
	std::size_t m() const
	{
		if (!offsets_.empty())
			return offsets_.size() - 1;
		return k_ ? lits_.size() / k_ : 0;
	}

	std::span<const Lit> clause(std::size_t i) const
	{
		if (offsets_.empty())
			return {lits_.data() + i * k_, k_};
		return {lits_.data() + offsets_[i],
		        offsets_[i + 1] - offsets_[i]};
	}

	// bounds-checked append; distinctness is the caller's contract
	void append_clause(std::span<const Lit> lits);
	// write into a preallocated uniform-arity slot
	void set_clause(std::size_t i, std::span<const Lit> lits);

	bool operator==(const Formula &other) const;

  private:
	void check_lits(std::span<const Lit> lits) const;
	void make_ragged();

	std::uint32_t n_ = 0;
	std::uint32_t k_ = 0; // uniform arity; 0 once arities mix
	std::vector<Lit> lits_;
	std::vector<std::size_t> offsets_; // empty while arity is uniform
};

bool has_distinct_vars(std::span<const Lit> clause);

enum class DimacsMode
{
	Strict,     // uniform arity, distinct variables per clause
	Permissive, // any clause shapes the header admits
};

std::string to_dimacs(const Formula &f);
Formula from_dimacs(std::string_view text, DimacsMode mode = DimacsMode::Strict);

} // namespace nusat
