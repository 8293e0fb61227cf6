#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nusat/dist.hpp"

namespace nusat {

// Monte Carlo estimation of Pr(formula satisfiable) across clause counts.
//
// Every trial's randomness comes from a key derived as
//   fork(fork(mix64(seed), m), trial_index)
// (bumped by fork(key, bump) when a trial hits the generator retry cap), so
// sweep output is a pure function of the configuration no matter how trials
// are sharded across workers. The worker count comes from, in order: the
// NUSAT_THREADS environment variable, the explicit thread field, hardware
// concurrency.

struct SweepConfig
{
	EnsembleSpec spec;
	std::uint32_t n = 0;
	std::vector<std::uint64_t> m_grid; // explicit clause counts
	std::vector<double> m_rel;         // or multiples of predicted m_star
	std::uint64_t trials = 100;
	std::uint64_t seed = 0;
	double confidence = 0.95;
	unsigned threads = 0;                  // 0 = auto
	std::uint64_t retry_cap = 1'000'000;   // per generated clause
};

struct SweepRecord
{
	std::uint32_t n = 0;
	std::uint64_t m = 0;
	std::uint64_t trials = 0;
	std::uint64_t sat_count = 0;
	double p_hat = 0.0;
	double ci_low = 0.0;
	double ci_high = 1.0;
	std::uint64_t seed = 0;
};

struct SweepStats
{
	std::uint64_t retry_bumps = 0; // trials re-drawn after a retry-cap hit
};

std::vector<SweepRecord> run_sweep(const SweepConfig &cfg,
                                   SweepStats *stats = nullptr);

// header: n,m,trials,sat_count,p_hat,ci_low,ci_high,seed
std::string sweep_csv(std::span<const SweepRecord> records);

struct CrossingEstimate
{
	std::uint32_t n = 0;
	double m_hat = 0.0; // clause count where Pr(sat) crosses the target
	// m interval: the last batch's p uncertainty propagated through the
	// fitted local slope of p against log m, capped by any flank whose
	// Wilson CI cleared the target; degenerates to the search bracket when
	// neither is available
	double ci_low = 0.0;
	double ci_high = 0.0;
	std::uint64_t trials_used = 0;
	double m_star_predicted = 0.0;
	std::uint64_t bracket_lo = 0;
	std::uint64_t bracket_hi = 0;
};

// Monotone bisection for the m where the measured Pr(sat) crosses `target`,
// inside [lo, hi]. The trial schedule is a fixed ramp derived from budget
// (later, tighter steps get more trials), so results are reproducible.
// Throws BracketError when the endpoint estimates do not straddle target.
CrossingEstimate bisect_p_target(const EnsembleSpec &spec, std::uint32_t n,
                                 std::uint64_t bracket_lo,
                                 std::uint64_t bracket_hi, double target,
                                 std::uint64_t budget, std::uint64_t seed,
                                 double confidence = 0.95,
                                 unsigned threads = 0);

// Bisection over [m_star/8, 8*m_star] for the Pr(sat) = 1/2 point; m_star
// comes from predict_threshold. budget >= 1000 trials.
CrossingEstimate estimate_crossing(const EnsembleSpec &spec, std::uint32_t n,
                                   std::uint64_t seed, std::uint64_t budget,
                                   double confidence = 0.95,
                                   unsigned threads = 0);

struct SharpnessPoint
{
	std::uint32_t n = 0;
	double m_half = 0.0;  // m at p = 1/2
	double m_lower = 0.0; // m at p = 1-delta (the satisfiable flank)
	double m_upper = 0.0; // m at p = delta
	double width = 0.0;   // (m_upper - m_lower) / m_half
	double width_lo = 0.0;
	double width_hi = 0.0;
	std::uint64_t trials_used = 0;
};

struct SharpnessReport
{
	double delta = 0.0;
	std::vector<SharpnessPoint> points;
	std::string verdict; // evidence label, never proof
};

// Relative transition width W(n) across n_grid; budget counts trials per
// bisection target. A shrinking W is consistent with a sharp threshold, a
// stable one with a coarse threshold.
SharpnessReport sharpness_probe(const EnsembleSpec &spec,
                                std::span<const std::uint32_t> n_grid,
                                double delta, std::uint64_t budget,
                                std::uint64_t seed, double confidence = 0.95,
                                unsigned threads = 0);

// Satisfiability frequency at one (n, m) point; the building block the
// harness layers above. Deterministic given (spec, n, m, trials, seed).
// A trial whose generation trips retry_cap is re-drawn under a bumped
// sub-seed (counted in stats) rather than aborting the run.
SweepRecord estimate_point(const EnsembleSpec &spec, std::uint32_t n,
                           std::uint64_t m, std::uint64_t trials,
                           std::uint64_t seed, double confidence = 0.95,
                           unsigned threads = 0, SweepStats *stats = nullptr,
                           std::uint64_t retry_cap = 1'000'000);

unsigned resolve_threads(unsigned requested);

} // namespace nusat
