// Acceptance suite: runs every release criterion end to end against the
// library and prints one PASS/FAIL line per criterion. Exit code is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>

#include "helpers.hpp"
#include "nusat/analysis.hpp"
#include "nusat/dist.hpp"
#include "nusat/generator.hpp"
#include "nusat/solver2.hpp"
#include "nusat/stats.hpp"
#include "nusat/witness.hpp"
#include "nusat/xlab.hpp"

using namespace nusat;

namespace {

int failures = 0;
std::chrono::steady_clock::time_point t0;

void begin()
{
	t0 = std::chrono::steady_clock::now();
}

void report(int criterion, const char *name, bool pass, const std::string &detail)
{
	double secs =
	    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
	        .count();
	std::printf("%s  criterion %2d: %s (%s; %.1f s)\n",
	            pass ? "PASS" : "FAIL", criterion, name, detail.c_str(), secs);
	std::fflush(stdout);
	if (!pass)
		++failures;
}

std::string fmt(const char *f, ...)
{
	char buf[512];
	va_list ap;
	va_start(ap, f);
	std::vsnprintf(buf, sizeof(buf), f, ap);
	va_end(ap);
	return buf;
}

void criterion_1_uniform_crossing()
{
	begin();
	CrossingEstimate est =
	    estimate_crossing(EnsembleSpec::uniform(), 10000, 1, 20000);
	double ratio = est.m_hat / 10000.0;
	report(1, "uniform sharp threshold, n=1e4", ratio >= 0.90 && ratio <= 1.10,
	       fmt("m_hat/n = %.4f, band [0.90, 1.10]", ratio));
}

void criterion_2_powerlaw_crossings()
{
	begin();
	{
		CrossingEstimate est =
		    estimate_crossing(EnsembleSpec::power_law(3.5), 10000, 1, 20000);
		double ratio = est.m_hat / 10000.0;
		double limit = 5.0 / 9.0; // (beta-3)(beta-1)/(beta-2)^2 at beta=3.5
		bool pass = ratio >= 0.85 * limit && ratio <= 1.15 * limit;
		report(2, "power-law beta=3.5 sharp threshold, n=1e4", pass,
		       fmt("m_hat/n = %.4f, band [%.4f, %.4f] = (1 +- 0.15) * 5/9",
		           ratio, 0.85 * limit, 1.15 * limit));
	}
	begin();
	{
		CrossingEstimate est =
		    estimate_crossing(EnsembleSpec::power_law(3.0), 100000, 1, 12000);
		double scaled = est.m_hat * std::log(1e5) / 1e5;
		bool pass = scaled >= 0.80 * 4.0 && scaled <= 1.20 * 4.0;
		report(2, "power-law beta=3 sharp threshold, n=1e5", pass,
		       fmt("m_hat*ln(n)/n = %.4f, band [3.2, 4.8]", scaled));
	}
}

void criterion_3_geometric_crossing()
{
	begin();
	CrossingEstimate est =
	    estimate_crossing(EnsembleSpec::geometric(2.0), 10000, 1, 20000);
	double ratio = est.m_hat / 10000.0;
	double limit = 2.0 / (3.0 * std::log(2.0)); // 2(b-1)/((b+1) ln b), b=2
	bool pass = ratio >= 0.85 * limit && ratio <= 1.15 * limit;
	report(3, "geometric b=2 sharp threshold, n=1e4", pass,
	       fmt("m_hat/n = %.4f, band [%.4f, %.4f]", ratio, 0.85 * limit,
	           1.15 * limit));
}

void criterion_4_coarseness_signature()
{
	begin();
	EnsembleSpec spec = EnsembleSpec::power_law(2.5);
	std::uint32_t grid[] = {1000, 10000, 100000};
	SharpnessReport rep = sharpness_probe(spec, grid, 0.1, 6000, 4);

	bool widths_overlap = true;
	std::string pairs;
	for (std::size_t i = 0; i < rep.points.size(); ++i)
		for (std::size_t j = i + 1; j < rep.points.size(); ++j)
		{
			const auto &a = rep.points[i];
			const auto &b = rep.points[j];
			bool overlap = !(a.width_hi < b.width_lo || b.width_hi < a.width_lo);
			pairs += fmt("%u~%u:%s ", a.n, b.n, overlap ? "yes" : "NO");
			widths_overlap &= overlap;
		}

	bool plateau_ok = true;
	std::string plateau;
	for (std::uint32_t n : grid)
	{
		Distribution d = Distribution::instantiate(spec, n);
		auto m_star =
		    static_cast<std::uint64_t>(std::llround(predict_threshold(d).m_star));
		SweepRecord pt = estimate_point(spec, n, m_star, 2000, 4);
		plateau += fmt("p(m*,n=%u)=%.3f ", n, pt.p_hat);
		if (!(pt.p_hat >= 0.02 && pt.p_hat <= 0.98 && pt.ci_low > 0.0 &&
		      pt.ci_high < 1.0))
			plateau_ok = false;
	}

	std::string widths;
	for (const auto &p : rep.points)
		widths += fmt("W(%u)=%.3f[%.3f,%.3f] ", p.n, p.width, p.width_lo,
		              p.width_hi);
	report(4, "coarseness signature, beta=2.5", widths_overlap && plateau_ok,
	       widths + "overlap " + pairs + plateau +
	           "(all width CIs must overlap, plateau inside [0.02,0.98])");
}

struct OracleBatch
{
	std::uint64_t total = 0;
	std::uint64_t disagreements = 0;
	std::uint64_t bad_sat_certificates = 0;
	std::uint64_t bad_unsat_certificates = 0;
};

OracleBatch run_oracle_batch()
{
	OracleBatch batch;
	std::mt19937_64 meta(20240601);
	const EnsembleSpec specs[4] = {
	    EnsembleSpec::uniform(), EnsembleSpec::power_law(2.5),
	    EnsembleSpec::power_law(3.5), EnsembleSpec::geometric(2.0)};
	GeneratorConfig cfg;
	TwoSatSolver solver;
	for (int iter = 0; iter < 10000; ++iter)
	{
		std::uint32_t n = 3 + static_cast<std::uint32_t>(meta() % 14); // 3..16
		Distribution d = Distribution::instantiate(specs[iter % 4], n);
		std::uint64_t m = meta() % (5 * n / 2 + 1);
		cfg.seed = meta();
		Formula f = sample_formula(d, 2, m, cfg);

		SolveResult fast = solver.solve(f);
		SolveResult slow = solve_brute(f);
		++batch.total;
		if (fast.status != slow.status)
			++batch.disagreements;
		if (fast.sat())
		{
			if (!satisfies(f, fast.assignment))
				++batch.bad_sat_certificates;
		}
		else
		{
			auto comp = testutil::kosaraju_implication_scc(f);
			std::uint32_t v = fast.witness_var.value_or(0);
			if (v == 0 || comp[2 * v] != comp[2 * v + 1])
				++batch.bad_unsat_certificates;
		}
	}
	return batch;
}

void criteria_5_6_solver_oracle(const OracleBatch &batch)
{
	report(5, "solver oracle equivalence on 1e4 mixed random formulas",
	       batch.disagreements == 0,
	       fmt("%llu/%llu agree",
	           static_cast<unsigned long long>(batch.total -
	                                           batch.disagreements),
	           static_cast<unsigned long long>(batch.total)));
	begin();
	report(6, "certificates verify (SAT assignments, UNSAT witnesses)",
	       batch.bad_sat_certificates == 0 && batch.bad_unsat_certificates == 0,
	       fmt("%llu bad assignments, %llu bad witnesses",
	           static_cast<unsigned long long>(batch.bad_sat_certificates),
	           static_cast<unsigned long long>(batch.bad_unsat_certificates)));
}

void criterion_7_bicycle_containment()
{
	begin();
	Distribution d = Distribution::instantiate(EnsembleSpec::uniform(), 50);
	GeneratorConfig cfg;
	TwoSatSolver solver;
	int unsat_seen = 0, found = 0;
	for (std::uint64_t seed = 0; unsat_seen < 500; ++seed)
	{
		cfg.seed = seed;
		Formula f = sample_formula(d, 2, 100, cfg);
		if (solver.solve(f).sat())
			continue;
		++unsat_seen;
		if (find_bicycle(f, 50).has_value())
			++found;
	}
	report(7, "bicycle found in every solver-certified UNSAT formula",
	       found == 500, fmt("%d/500 found (n=50, m=100, t_max=n)", found));
}

void criterion_8_snake_unsat()
{
	begin();
	std::mt19937_64 rng(88);
	std::bernoulli_distribution sign(0.5);
	int unsat = 0;
	for (int iter = 0; iter < 100; ++iter)
	{
		std::uint32_t t = 2 + iter % 4; // t in [2,5]
		std::uint32_t n = 2 * t - 1 + static_cast<std::uint32_t>(rng() % 8);
		std::vector<std::uint32_t> vars(n);
		std::iota(vars.begin(), vars.end(), 1u);
		std::shuffle(vars.begin(), vars.end(), rng);
		Snake s;
		s.t = t;
		for (std::uint32_t i = 0; i < 2 * t - 1; ++i)
			s.w.push_back(Lit::make(vars[i], sign(rng)));
		Formula f(n, 2);
		for (const auto &c : snake_clauses(s))
			f.append_clause(c);
		if (!solve_brute(f).sat())
			++unsat;
	}
	report(8, "every random snake clause set is UNSAT", unsat == 100,
	       fmt("%d/100 UNSAT (t in [2,5])", unsat));
}

void criterion_9_snake_expectation()
{
	begin();
	Distribution d = Distribution::instantiate(EnsembleSpec::uniform(), 50);
	const std::uint64_t m = 55;
	const std::uint32_t t = 2;
	double bound = expected_snakes_lower_bound(d, static_cast<double>(m), t);

	GeneratorConfig cfg;
	const int trials = 100000;
	double sum = 0.0, sum_sq = 0.0;
	for (int i = 0; i < trials; ++i)
	{
		cfg.seed = 900000 + i;
		Formula f = sample_formula(d, 2, m, cfg);
		auto x = static_cast<double>(snake_sequences_exactly_once(f, t));
		sum += x;
		sum_sq += x * x;
	}
	double mean = sum / trials;
	double var = (sum_sq / trials - mean * mean) * trials / (trials - 1);
	double se = std::sqrt(var / trials);
	bool pass = mean >= bound - 3 * se;
	report(9, "snake-count expectation bound (uniform n=50, m=55, t=2)", pass,
	       fmt("MC mean %.5f >= bound %.5f - 3*SE (SE %.5f)", mean, bound, se));
}

void criterion_10_core_frequency()
{
	begin();
	Distribution d = Distribution::instantiate(EnsembleSpec::power_law(2.5), 200);
	double q = d.q_max();
	auto m = static_cast<std::uint64_t>(std::ceil(1.0 / q));
	double bound = clamp_unit(
	    unsat_bound_inclusion_exclusion(q, static_cast<double>(m), 2));

	GeneratorConfig cfg;
	const int trials = 10000;
	int hits = 0;
	for (int i = 0; i < trials; ++i)
	{
		cfg.seed = 1000000 + i;
		Formula f = sample_formula(d, 2, m, cfg);
		if (full_sign_core(f, 2).has_value())
			++hits;
	}
	double freq = static_cast<double>(hits) / trials;
	double se = std::sqrt(freq * (1 - freq) / trials);
	bool pass = freq >= bound - 3 * se;
	report(10, "full-sign-core frequency beats the inclusion-exclusion bound", pass,
	       fmt("freq %.4f >= clamped bound %.4f - 3*SE (q_max %.2e, m=%llu)",
	           freq, bound, q, static_cast<unsigned long long>(m)));
}

void criterion_11_generator_fidelity()
{
	begin();
	Distribution d = Distribution::instantiate(EnsembleSpec::power_law(2.5), 5);
	GeneratorConfig cfg;
	cfg.seed = 424242;
	const std::uint64_t m = 1000000;
	Formula f = sample_formula(d, 2, m, cfg);

	// chi-square over all 4*C(5,2) = 40 signed clauses
	std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> counts;
	for (std::size_t i = 0; i < f.m(); ++i)
	{
		Lit a = f.clause(i)[0], b = f.clause(i)[1];
		if (a.code() > b.code())
			std::swap(a, b);
		++counts[{a.code(), b.code()}];
	}
	double chi2 = 0.0;
	int cells = 0;
	for (std::uint32_t i = 1; i <= 5; ++i)
		for (std::uint32_t j = i + 1; j <= 5; ++j)
		{
			std::uint32_t vars[2] = {i, j};
			double qc = clause_probability(d, vars, 2);
			for (int si = 0; si < 2; ++si)
				for (int sj = 0; sj < 2; ++sj)
				{
					Lit a = Lit::make(i, si), b = Lit::make(j, sj);
					auto it = counts.find({a.code(), b.code()});
					double obs = it == counts.end() ? 0.0 : double(it->second);
					double exp = qc * static_cast<double>(m);
					chi2 += (obs - exp) * (obs - exp) / exp;
					++cells;
				}
		}
	// chi-square 0.999 quantile, 39 degrees of freedom
	bool chi_ok = cells == 40 && chi2 < 72.0547;

	// byte identity across worker counts
	Distribution du = Distribution::instantiate(EnsembleSpec::uniform(), 1000);
	GeneratorConfig base;
	base.seed = 5150;
	base.threads = 1;
	std::string ref = to_dimacs(sample_formula(du, 2, 100000, base));
	bool bytes_ok = true;
	for (unsigned threads : {4u, 16u})
	{
		GeneratorConfig alt = base;
		alt.threads = threads;
		bytes_ok &= to_dimacs(sample_formula(du, 2, 100000, alt)) == ref;
	}
	report(11, "generator fidelity: chi-square + worker-count byte identity",
	       chi_ok && bytes_ok,
	       fmt("chi2 = %.2f < 72.05 (df 39), byte-identical 1/4/16 workers: %s",
	           chi2, bytes_ok ? "yes" : "no"));
}

void criterion_12_exact_uniform_prediction()
{
	begin();
	bool all_exact = true;
	std::uint32_t first_bad = 0;
	auto check = [&](std::uint32_t n) {
		Distribution d = Distribution::instantiate(EnsembleSpec::uniform(), n);
		ThresholdReport rep = predict_threshold(d);
		if (rep.m_star != static_cast<double>(n) || !rep.sharp)
		{
			if (all_exact)
				first_bad = n;
			all_exact = false;
		}
	};
	for (std::uint32_t n = 2; n <= 256; ++n)
		check(n);
	for (std::uint32_t n : {509u, 1000u, 2048u, 4999u, 9999u, 10000u})
		check(n);
	report(12, "uniform threshold prediction is exactly n", all_exact,
	       all_exact ? "all spot-grid n in {2..256, 509, 1000, 2048, 4999, "
	                   "9999, 10000} exact"
	                 : fmt("first inexact n = %u", first_bad));
}

} // namespace

int main()
{
	std::printf("acceptance suite (seeded, deterministic)\n");

	criterion_1_uniform_crossing();
	criterion_2_powerlaw_crossings();
	criterion_3_geometric_crossing();
	criterion_4_coarseness_signature();

	begin();
	OracleBatch batch = run_oracle_batch();
	criteria_5_6_solver_oracle(batch);

	criterion_7_bicycle_containment();
	criterion_8_snake_unsat();
	criterion_9_snake_expectation();
	criterion_10_core_frequency();
	criterion_11_generator_fidelity();
	criterion_12_exact_uniform_prediction();

	if (failures)
		std::printf("%d criterion(s) FAILED\n", failures);
	else
		std::printf("all criteria passed\n");
	return failures;
}
