#include "nusat/generator.hpp"

#include <cstdio>
#include <mutex>
#include <optional>
#include <thread>

#include "nusat/errors.hpp"
#include "nusat/rng.hpp"

namespace nusat {

namespace {

struct ClauseFailure
{
	std::uint64_t clause_index;
	std::uint64_t attempts;
};

// fills lits[0..k); returns false when the retry cap was hit
bool draw_clause(const Distribution &d, int k, std::uint64_t retry_cap,
                 CounterRng &rng, Lit *lits, std::uint64_t &attempts_out)
{
	const AliasTable &alias = d.alias();
	const std::uint32_t n = d.n();
	std::uint32_t vars[8];
	for (std::uint64_t attempt = 1; attempt <= retry_cap; ++attempt)
	{
		bool distinct = true;
		for (int s = 0; s < k; ++s)
		{
			auto idx = static_cast<std::uint32_t>(rng.next_below(n));
			vars[s] = alias.pick(idx, rng.next_double()) + 1;
			for (int t = 0; t < s; ++t)
				if (vars[t] == vars[s])
					distinct = false;
		}
		if (!distinct)
			continue;
		std::uint64_t signs = rng.next();
		for (int s = 0; s < k; ++s)
		{
			std::uint32_t v = d.identity_labels() ? vars[s] : d.user_label(vars[s]);
			lits[s] = Lit::make(v, (signs >> s) & 1u);
		}
		attempts_out = attempt;
		return true;
	}
	attempts_out = retry_cap;
	return false;
}

} // namespace

Formula sample_formula(const Distribution &d, int k, std::uint64_t m,
                       const GeneratorConfig &cfg)
{
	if (k < 2 || k > 7)
		throw ArityError("sample_formula: k must be in [2,7], got " +
		                 std::to_string(k));
	if (d.n() < static_cast<std::uint32_t>(k))
		throw ArityError("sample_formula: n=" + std::to_string(d.n()) +
		                 " < k=" + std::to_string(k));
	if (cfg.retry_cap < 1)
		throw ConstructionError("sample_formula: retry_cap must be >= 1");

	Formula f = Formula::with_clause_count(d.n(), static_cast<std::uint32_t>(k), m);
	const std::uint64_t key0 = mix64(cfg.seed);

	unsigned threads = cfg.threads ? cfg.threads : 1;
	if (threads > m)
		threads = m ? static_cast<unsigned>(m) : 1;

	std::optional<ClauseFailure> failure;
	std::mutex failure_mtx;

	auto work = [&](std::uint64_t lo, std::uint64_t hi) {
		std::vector<Lit> buf(k);
		for (std::uint64_t ci = lo; ci < hi; ++ci)
		{
			CounterRng rng(fork_key(key0, ci));
			std::uint64_t attempts = 0;
			if (!draw_clause(d, k, cfg.retry_cap, rng, buf.data(), attempts))
			{
				std::lock_guard<std::mutex> lock(failure_mtx);
				if (!failure || ci < failure->clause_index)
					failure = ClauseFailure{ci, attempts};
				return;
			}
			f.set_clause(ci, buf);
		}
	};

	if (threads <= 1)
	{
		work(0, m);
	}
	else
	{
		std::vector<std::thread> pool;
		pool.reserve(threads);
		std::uint64_t chunk = (m + threads - 1) / threads;
		for (unsigned t = 0; t < threads; ++t)
		{
			std::uint64_t lo = t * chunk;
			std::uint64_t hi = std::min<std::uint64_t>(m, lo + chunk);
			if (lo >= hi)
				break;
			pool.emplace_back(work, lo, hi);
		}
		for (auto &th : pool)
			th.join();
	}

	if (failure)
	{
		// every attempt up to the cap collided; include the analytic
		// per-attempt collision probability for diagnosis
		char msg[200];
		std::snprintf(msg, sizeof(msg),
		              "sample_formula: clause %llu exceeded retry cap %llu; all "
		              "attempts collided (per-attempt collision probability %.6g)",
		              static_cast<unsigned long long>(failure->clause_index),
		              static_cast<unsigned long long>(cfg.retry_cap),
		              1.0 - distinct_tuple_probability(d, k));
		throw RetryCapError(msg);
	}
	return f;
}

} // namespace nusat
