#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nusat/alias.hpp"

namespace nusat {

enum class Family
{
	Uniform,
	PowerLaw,
	Geometric,
	Explicit,
};

// An ensemble of variable distributions, indexed by n at instantiation time.
// Built-in families scale to any n; Explicit fixes n = weights.size().
struct EnsembleSpec
{
	Family family = Family::Uniform;
	double beta = 0.0;            // PowerLaw, requires beta > 2
	double base = 0.0;            // Geometric, requires base > 1
	std::vector<double> weights;  // Explicit, all > 0

	static EnsembleSpec uniform();
	static EnsembleSpec power_law(double beta);
	static EnsembleSpec geometric(double base);
	static EnsembleSpec explicit_weights(std::vector<double> w);

	// "uniform" | "powerlaw:BETA" | "geometric:B" | "file:PATH"
	static EnsembleSpec parse(const std::string &text);
	// one positive weight per line, '#' comments allowed
	static EnsembleSpec load_weights_file(const std::string &path);

	bool scalable() const { return family != Family::Explicit; }
	std::string label() const;
};

// A concrete variable distribution: pmf sorted non-increasing plus the moment
// sums the threshold formulas need. Immutable once built; safe to share
// across threads.
class Distribution
{
  public:
	static Distribution instantiate(const EnsembleSpec &spec, std::uint32_t n);

	// pmf expected to sum to 1. |sum - 1| <= 1e-12 * n counts as float noise
	// and is silently renormalized; larger deviations throw.
	static Distribution from_pmf(std::vector<double> pmf, EnsembleSpec spec);

	std::uint32_t n() const { return static_cast<std::uint32_t>(p_.size()); }

	// 1-based, sorted order: p(1) >= p(2) >= ... > 0
	double p(std::uint32_t i) const { return p_[i - 1]; }
	std::span<const double> pmf() const { return p_; }

	double sum_sq() const { return moments_[0]; }            // sum p_i^2
	double sum_sq_tail() const { return sum_sq_tail_; }      // sum_{i>=2} p_i^2
	double sum_p4() const { return moments_[2]; }
	double c_const() const { return c_const_; }              // 1/(1 - sum_sq), k=2
	double f_ratio() const { return f_ratio_; }              // sum_sq / p1^2
	double q_max() const { return q_max_; }                  // max clause probability, k=2

	// sum_{i=from_index}^n p_i^exponent; exponent in [2,7], from_index in {1,2}
	double moment_sum(int exponent, int from_index) const;

	// sorted index (1-based) -> the caller's original 1-based index.
	// Identity for built-in families.
	std::uint32_t user_label(std::uint32_t i) const
	{
		return perm_.empty() ? i : perm_[i - 1];
	}
	bool identity_labels() const { return perm_.empty(); }

	const EnsembleSpec &spec() const { return spec_; }
	const AliasTable &alias() const { return alias_; }

  private:
	Distribution() = default;
	void finalize();

	EnsembleSpec spec_;
	std::vector<double> p_;              // sorted non-increasing
	std::vector<std::uint32_t> perm_;    // sorted pos -> user label; empty if identity
	double moments_[6] = {};             // power sums for exponents 2..7
	double sum_sq_tail_ = 0.0;
	double c_const_ = 0.0;
	double f_ratio_ = 0.0;
	double q_max_ = 0.0;
	AliasTable alias_;
};

// Probability that the drawing model emits one specific signed clause on the
// given variables (sorted coordinates, 1-based):
//   q_c = (prod_i p_i) / (2^k * e_k(p))
// where e_k is the degree-k elementary symmetric polynomial of the pmf,
// evaluated through the Newton-Girard recurrence on power sums. For k=2 this
// reduces to C * (k!/2^k) * p_i * p_j with C = 1/(1 - sum p^2).
double clause_probability(const Distribution &d,
                          std::span<const std::uint32_t> vars, int k);

// Probability that k i.i.d. draws from the pmf are pairwise distinct,
// k! * e_k(p); the generator's per-attempt acceptance probability. Equals
// 1 - sum p^2 for k=2.
double distinct_tuple_probability(const Distribution &d, int k);

// compensated (Neumaier) sum, added in the order given
double neumaier_sum(std::span<const double> xs);

} // namespace nusat
