#include "nusat/xlab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "nusat/analysis.hpp"
#include "nusat/errors.hpp"
#include "nusat/generator.hpp"
#include "nusat/rng.hpp"
#include "nusat/solver2.hpp"
#include "nusat/stats.hpp"

namespace nusat {

unsigned resolve_threads(unsigned requested)
{
	if (const char *env = std::getenv("NUSAT_THREADS"))
	{
		char *end = nullptr;
		long v = std::strtol(env, &end, 10);
		if (end && *end == '\0' && v >= 1 && v <= 4096)
			return static_cast<unsigned>(v);
	}
	if (requested > 0)
		return requested;
	unsigned hw = std::thread::hardware_concurrency();
	return hw ? hw : 1;
}

namespace {

struct PointOutcome
{
	std::uint64_t sat = 0;
	std::uint64_t bumps = 0;
};

// one (m, trials) estimation point; trial i uses key fork(point_key, i)
PointOutcome run_point(const Distribution &d, std::uint64_t m,
                       std::uint64_t trials, std::uint64_t point_key,
                       unsigned threads,
                       std::uint64_t retry_cap = 1'000'000)
{
	std::vector<std::uint8_t> sat_slot(trials, 0);
	std::atomic<std::uint64_t> next{0};
	std::atomic<std::uint64_t> bumps{0};
	std::atomic<bool> failed{false};
	std::string failure_msg;
	std::mutex failure_mtx;

	auto worker = [&]() {
		TwoSatSolver solver;
		while (true)
		{
			std::uint64_t i = next.fetch_add(1);
			if (i >= trials || failed.load(std::memory_order_relaxed))
				break;
			std::uint64_t trial_key = fork_key(point_key, i);
			GeneratorConfig gc;
			gc.seed = trial_key;
			gc.retry_cap = retry_cap;
			for (unsigned bump = 0;; ++bump)
			{
				try
				{
					Formula f = sample_formula(d, 2, m, gc);
					sat_slot[i] = solver.solve(f).sat() ? 1 : 0;
					break;
				}
				catch (const RetryCapError &e)
				{
					if (bump >= 16)
					{
						std::lock_guard<std::mutex> lock(failure_mtx);
						failure_msg = e.what();
						failed.store(true);
						break;
					}
					bumps.fetch_add(1, std::memory_order_relaxed);
					gc.seed = fork_key(trial_key, bump + 1);
				}
			}
		}
	};

	if (threads <= 1)
	{
		worker();
	}
	else
	{
		std::vector<std::thread> pool;
		pool.reserve(threads);
		for (unsigned t = 0; t < threads; ++t)
			pool.emplace_back(worker);
		for (auto &th : pool)
			th.join();
	}
	if (failed.load())
		throw RetryCapError("run_point: trial kept failing after 16 sub-seed "
		                    "bumps: " + failure_msg);

	PointOutcome out;
	out.bumps = bumps.load();
	for (std::uint8_t s : sat_slot)
		out.sat += s;
	return out;
}

} // namespace

SweepRecord estimate_point(const EnsembleSpec &spec, std::uint32_t n,
                           std::uint64_t m, std::uint64_t trials,
                           std::uint64_t seed, double confidence,
                           unsigned threads, SweepStats *stats,
                           std::uint64_t retry_cap)
{
	Distribution d = Distribution::instantiate(spec, n);
	std::uint64_t point_key = fork_key(mix64(seed), m);
	PointOutcome out = run_point(d, m, trials, point_key,
	                             resolve_threads(threads), retry_cap);
	if (stats)
		stats->retry_bumps += out.bumps;
	WilsonInterval w = wilson_interval(out.sat, trials, confidence);
	return SweepRecord{n, m, trials, out.sat, w.p_hat, w.low, w.high, seed};
}

std::vector<SweepRecord> run_sweep(const SweepConfig &cfg, SweepStats *stats)
{
	if (cfg.trials < 1)
		throw ConstructionError("run_sweep: trials must be >= 1");
	if (!(cfg.confidence > 0.0 && cfg.confidence < 1.0))
		throw ConstructionError("run_sweep: confidence must lie in (0,1)");

	Distribution d = Distribution::instantiate(cfg.spec, cfg.n);

	std::vector<std::uint64_t> grid = cfg.m_grid;
	if (grid.empty())
	{
		if (cfg.m_rel.empty())
			throw ConstructionError("run_sweep: need m_grid or m_rel");
		double m_star = predict_threshold(d).m_star;
		for (double rel : cfg.m_rel)
		{
			if (!(rel > 0.0))
				throw ConstructionError("run_sweep: m_rel entries must be > 0");
			grid.push_back(static_cast<std::uint64_t>(
			    std::max<long long>(1, std::llround(rel * m_star))));
		}
	}
	for (std::uint64_t m : grid)
		if (m < 1)
			throw ConstructionError("run_sweep: clause counts must be >= 1");

	unsigned threads = resolve_threads(cfg.threads);
	std::uint64_t base = mix64(cfg.seed);

	std::vector<SweepRecord> records;
	records.reserve(grid.size());
	for (std::uint64_t m : grid)
	{
		PointOutcome out = run_point(d, m, cfg.trials, fork_key(base, m),
		                             threads, cfg.retry_cap);
		if (stats)
			stats->retry_bumps += out.bumps;
		WilsonInterval w =
		    wilson_interval(out.sat, cfg.trials, cfg.confidence);
		records.push_back(SweepRecord{cfg.n, m, cfg.trials, out.sat, w.p_hat,
		                              w.low, w.high, cfg.seed});
	}
	return records;
}

std::string sweep_csv(std::span<const SweepRecord> records)
{
	std::string out = "n,m,trials,sat_count,p_hat,ci_low,ci_high,seed\n";
	char line[256];
	for (const SweepRecord &r : records)
	{
		std::snprintf(line, sizeof(line),
		              "%u,%llu,%llu,%llu,%.17g,%.17g,%.17g,%llu\n", r.n,
		              static_cast<unsigned long long>(r.m),
		              static_cast<unsigned long long>(r.trials),
		              static_cast<unsigned long long>(r.sat_count), r.p_hat,
		              r.ci_low, r.ci_high,
		              static_cast<unsigned long long>(r.seed));
		out += line;
	}
	return out;
}

CrossingEstimate bisect_p_target(const EnsembleSpec &spec, std::uint32_t n,
                                 std::uint64_t bracket_lo,
                                 std::uint64_t bracket_hi, double target,
                                 std::uint64_t budget, std::uint64_t seed,
                                 double confidence, unsigned threads)
{
	if (budget < 1000)
		throw DomainError("bisect_p_target: budget must be >= 1000 trials");
	if (!(target > 0.0 && target < 1.0))
		throw DomainError("bisect_p_target: target must lie in (0,1)");
	if (bracket_lo < 1 || bracket_hi <= bracket_lo)
		throw DomainError("bisect_p_target: bad bracket");

	Distribution d = Distribution::instantiate(spec, n);
	unsigned nthreads = resolve_threads(threads);
	// the key stream also hashes the target so the three sharpness targets
	// draw independent trials
	std::uint64_t base = fork_key(mix64(seed),
	                              static_cast<std::uint64_t>(target * (1ull << 32)));

	std::uint64_t trials_used = 0;
	struct Measurement
	{
		double log_m;
		double p_hat;
		double half_width;
	};
	std::vector<Measurement> history;
	auto measure = [&](std::uint64_t m, std::uint64_t trials) {
		PointOutcome out =
		    run_point(d, m, trials, fork_key(base, m), nthreads);
		trials_used += trials;
		WilsonInterval w = wilson_interval(out.sat, trials, confidence);
		history.push_back(Measurement{std::log(static_cast<double>(m)),
		                              w.p_hat, (w.high - w.low) / 2.0});
		return w;
	};

	// fixed deterministic schedule: endpoints, then a ramp that spends more
	// trials on the later (tighter) steps
	const int steps = 12;
	std::uint64_t endpoint_trials = std::max<std::uint64_t>(100, budget / 16);
	std::uint64_t remaining = budget - 2 * endpoint_trials;
	std::uint64_t ramp_total = 0;
	for (int i = 1; i <= steps; ++i)
		ramp_total += i;

	WilsonInterval at_lo = measure(bracket_lo, endpoint_trials);
	WilsonInterval at_hi = measure(bracket_hi, endpoint_trials);
	if (at_lo.p_hat < target || at_hi.p_hat >= target)
	{
		char msg[200];
		std::snprintf(msg, sizeof(msg),
		              "bisect_p_target: bracket [%llu, %llu] does not straddle "
		              "p=%.3f (endpoint estimates %.4f and %.4f)",
		              static_cast<unsigned long long>(bracket_lo),
		              static_cast<unsigned long long>(bracket_hi), target,
		              at_lo.p_hat, at_hi.p_hat);
		throw BracketError(msg);
	}

	std::uint64_t lo = bracket_lo, hi = bracket_hi;
	double cert_lo = 0.0, cert_hi = 0.0; // flanks with CI clear of target
	if (at_lo.low > target)
		cert_lo = static_cast<double>(bracket_lo);
	if (at_hi.high < target)
		cert_hi = static_cast<double>(bracket_hi);

	for (int i = 1; i <= steps && hi - lo > 1; ++i)
	{
		std::uint64_t step_trials = std::max<std::uint64_t>(
		    50, remaining * static_cast<std::uint64_t>(i) / ramp_total);
		auto mid = static_cast<std::uint64_t>(std::llround(
		    std::exp(0.5 * (std::log(static_cast<double>(lo)) +
		                    std::log(static_cast<double>(hi))))));
		mid = std::clamp(mid, lo + 1, hi - 1);
		WilsonInterval w = measure(mid, step_trials);
		if (w.p_hat >= target)
		{
			lo = mid;
			if (w.low > target)
				cert_lo = std::max(cert_lo, static_cast<double>(mid));
		}
		else
		{
			hi = mid;
			if (w.high < target)
			{
				double m = static_cast<double>(mid);
				cert_hi = cert_hi == 0.0 ? m : std::min(cert_hi, m);
			}
		}
	}

	CrossingEstimate est;
	est.n = n;
	est.m_hat = std::sqrt(static_cast<double>(lo) * static_cast<double>(hi));
	est.trials_used = trials_used;
	est.bracket_lo = bracket_lo;
	est.bracket_hi = bracket_hi;

	// m-interval by propagating the last batch's p uncertainty through the
	// local slope of p against log m, fitted over the measurements nearest
	// the crossing; certified flanks (CI clear of the target) cap it, and
	// the bracket is the last resort
	double flank_lo = cert_lo > 0.0 ? cert_lo : static_cast<double>(bracket_lo);
	double flank_hi = cert_hi > 0.0 ? cert_hi : static_cast<double>(bracket_hi);
	double log_hat = std::log(est.m_hat);
	std::sort(history.begin(), history.end(),
	          [&](const Measurement &a, const Measurement &b) {
		          return std::abs(a.log_m - log_hat) <
		                 std::abs(b.log_m - log_hat);
	          });
	std::size_t use = std::min<std::size_t>(history.size(), 5);
	double sx = 0, sy = 0, sxx = 0, sxy = 0;
	double spread_lo = 1e300, spread_hi = -1e300;
	for (std::size_t i = 0; i < use; ++i)
	{
		double x = history[i].log_m, y = history[i].p_hat;
		sx += x;
		sy += y;
		sxx += x * x;
		sxy += x * y;
		spread_lo = std::min(spread_lo, x);
		spread_hi = std::max(spread_hi, x);
	}
	double denom = use * sxx - sx * sx;
	double slope = denom > 0 ? (use * sxy - sx * sy) / denom : 0.0;
	double sigma_p = history.empty() ? 0.0 : history.front().half_width;
	if (use >= 3 && slope < 0.0 && spread_hi - spread_lo > 1e-9 &&
	    sigma_p / -slope < 2.0)
	{
		double dlog = sigma_p / -slope;
		est.ci_low = std::max(flank_lo, est.m_hat * std::exp(-dlog));
		est.ci_high = std::min(flank_hi, est.m_hat * std::exp(dlog));
	}
	else
	{
		est.ci_low = flank_lo;
		est.ci_high = flank_hi;
	}
	return est;
}

CrossingEstimate estimate_crossing(const EnsembleSpec &spec, std::uint32_t n,
                                   std::uint64_t seed, std::uint64_t budget,
                                   double confidence, unsigned threads)
{
	Distribution d = Distribution::instantiate(spec, n);
	double m_star = predict_threshold(d).m_star;
	auto lo = static_cast<std::uint64_t>(
	    std::max(1.0, std::floor(m_star / 8.0)));
	auto hi = static_cast<std::uint64_t>(
	    std::max(2.0, std::ceil(m_star * 8.0)));
	CrossingEstimate est =
	    bisect_p_target(spec, n, lo, hi, 0.5, budget, seed, confidence, threads);
	est.m_star_predicted = m_star;
	return est;
}

SharpnessReport sharpness_probe(const EnsembleSpec &spec,
                                std::span<const std::uint32_t> n_grid,
                                double delta, std::uint64_t budget,
                                std::uint64_t seed, double confidence,
                                unsigned threads)
{
	if (!(delta > 0.0 && delta <= 0.5))
		throw DomainError("sharpness_probe: delta must lie in (0, 1/2]");
	if (n_grid.empty())
		throw DomainError("sharpness_probe: empty n grid");
	for (std::size_t i = 1; i < n_grid.size(); ++i)
		if (n_grid[i] <= n_grid[i - 1])
			throw DomainError("sharpness_probe: n_grid must increase");

	SharpnessReport rep;
	rep.delta = delta;
	for (std::uint32_t n : n_grid)
	{
		CrossingEstimate half =
		    estimate_crossing(spec, n, seed, budget, confidence, threads);

		SharpnessPoint pt;
		pt.n = n;
		pt.m_half = half.m_hat;
		pt.trials_used = half.trials_used;
		if (delta == 0.5)
		{
			// both targets coincide with the half point
			pt.m_lower = pt.m_upper = half.m_hat;
			pt.width = pt.width_lo = pt.width_hi = 0.0;
		}
		else
		{
			CrossingEstimate lower = bisect_p_target(
			    spec, n, half.bracket_lo, half.bracket_hi, 1.0 - delta,
			    budget, seed, confidence, threads);
			CrossingEstimate upper = bisect_p_target(
			    spec, n, half.bracket_lo, half.bracket_hi, delta, budget,
			    seed, confidence, threads);
			pt.m_lower = lower.m_hat;
			pt.m_upper = upper.m_hat;
			pt.trials_used += lower.trials_used + upper.trials_used;
			pt.width = (upper.m_hat - lower.m_hat) / half.m_hat;
			pt.width_lo = std::max(
			    0.0, (upper.ci_low - lower.ci_high) / half.ci_high);
			pt.width_hi = (upper.ci_high - lower.ci_low) / half.ci_low;
		}
		rep.points.push_back(pt);
	}

	if (rep.points.size() < 2 || delta == 0.5)
	{
		rep.verdict = "inconclusive: need at least two n values and "
		              "delta < 1/2";
	}
	else
	{
		const SharpnessPoint &first = rep.points.front();
		const SharpnessPoint &last = rep.points.back();
		if (last.width_hi < first.width_lo)
			rep.verdict = "consistent-with-sharp: width shrinks across n "
			              "(evidence, not proof)";
		else if (last.width_lo > first.width_hi)
			rep.verdict = "inconclusive: width grew across n";
		else
			rep.verdict = "consistent-with-coarse: width stable within CI "
			              "overlap (evidence, not proof)";
	}
	return rep;
}

} // namespace nusat
