#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "nusat/dist.hpp"

namespace nusat {

// The three-way split driving threshold location and sharpness:
//   Case1: p1^2 ~ sum p^2  and  p2^2 ~ tail sum   -> coarse, at ~1/q_max
//   Case2: p1^2 ~ sum p^2  but  p2^2 << tail sum  -> coarse
//   Case3: p1^2 << sum p^2                        -> sharp, at 1/sum p^2
enum class Regime
{
	Case1,
	Case2,
	Case3,
};

const char *regime_name(Regime r);

struct ThresholdReport
{
	Regime regime = Regime::Case3;
	double m_star = 0.0;
	bool sharp = false;
	std::string formula_tag; // which closed form produced m_star
	// diagnostics
	double r1 = 0.0;      // p1^2 / sum p^2
	double r2 = 0.0;      // p2^2 / sum_{i>=2} p^2
	double f_ratio = 0.0; // sum p^2 / p1^2
	double q_max = 0.0;
	std::string note; // classification basis, incl. any heuristic caveat
};

// m_star is the exact formula value for the classified regime:
//   Case3: 1 / sum p^2            (the uniform family reduces to exactly n)
//   Case1/Case2: (1 - sum p^2) / (p1 * sqrt(sum_{i>=2} p^2))
// Coarse regimes only pin the order of growth, so the Case1/Case2 number is a
// sweep anchor, not a certified constant; the note says so.
ThresholdReport predict_threshold(const Distribution &d);

struct RegimeCall
{
	Regime regime = Regime::Case3;
	bool closed_form = false;
	double r1_slope = 0.0; // log r1 vs log n fit (empirical path)
	double r2_slope = 0.0;
	std::string note;
};

// Built-in families classify by closed form (Uniform/Geometric: Case3;
// PowerLaw: Case3 iff beta >= 3, else Case1). Pass force_empirical to use the
// trend fit instead: requires >= 3 grid points spanning >= 2 decades, fits
// the slope of log r1 (then log r2) against log n, and treats |slope| <=
// slope_tol as Theta(1). Explicit specs cannot scale across a grid and are
// rejected here; predict_threshold falls back to a labeled single-n
// heuristic for them.
RegimeCall classify_regime(const EnsembleSpec &spec,
                           std::span<const std::uint32_t> n_grid,
                           double slope_tol = 0.05,
                           bool force_empirical = false);

// Pr(unsat) >= (1-e^{-q m})^{2^k} - q^2 4^k m (1+e^{-q m})^{2^k}; may be
// negative outside its useful range, callers clamp for reporting.
double unsat_bound_inclusion_exclusion(double q_max, double m, int k);

// Pr(unsat) >= 2 - (1+e^{-q m})^{2^k}
double unsat_bound_constant_q(double q_max, double m, int k);

// Lower bound on the expected number of snake sequences of size t whose
// clause set appears exactly once among m draws:
//   1/2 (m-2t)^{2t} C^{2t} e^{-(m-2t) 2t q /(1-2t q)} (sum p^4)
//     * (sum_{i>=2} p^2 - (2t-2) p2^2)^{2t-2}
// Returns 0 when the last factor is non-positive (vacuous bound).
double expected_snakes_lower_bound(const Distribution &d, double m,
                                   std::uint32_t t);

// Markov probe: Pr(unsat) <= 2 sum_{t=2}^{t_max} (Cm)^{t+1} t^2 p1^2 (sum p^2)^t.
// Returns +infinity when C*m*sum p^2 >= 1 (the series diverges).
double bicycle_expectation_upper_bound(const Distribution &d, double m,
                                       std::uint32_t t_max);

// snake size used for sharp-regime diagnostics: ceil(log^2 f(n)), at least 2
std::uint32_t default_snake_size(const Distribution &d);

double clamp_unit(double x); // clamp to [0,1] for reporting

} // namespace nusat
