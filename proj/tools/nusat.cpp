// nusat: generate, solve, and analyze non-uniform random 2-SAT instances.
//
// Machine-readable payloads (JSON/CSV/DIMACS) go to stdout, diagnostics to
// stderr. Exit codes: 0 success, 10/20 SAT/UNSAT (solve only), 2 usage
// error, 3 runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "nusat/analysis.hpp"
#include "nusat/dist.hpp"
#include "nusat/errors.hpp"
#include "nusat/formula.hpp"
#include "nusat/generator.hpp"
#include "nusat/solver2.hpp"
#include "nusat/witness.hpp"
#include "nusat/xlab.hpp"

using nlohmann::json;

namespace {

constexpr int schema_version = 1;

std::string read_stream_or_file(const std::string &path)
{
	if (path == "-")
	{
		std::ostringstream buf;
		buf << std::cin.rdbuf();
		return buf.str();
	}
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw nusat::ParseError("cannot open file: " + path);
	std::ostringstream buf;
	buf << in.rdbuf();
	return buf.str();
}

void write_stream_or_file(const std::string &path, const std::string &data)
{
	if (path == "-")
	{
		std::cout << data;
		std::cout.flush();
		return;
	}
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw nusat::Error("cannot write file: " + path);
	out << data;
}

void emit_json(const json &j)
{
	std::cout << j.dump(2) << "\n";
}

json load_config(const std::string &path)
{
	if (path.empty())
		return json::object();
	std::ifstream in(path);
	if (!in)
		throw nusat::ParseError("cannot open config file: " + path);
	json j;
	try
	{
		in >> j;
	}
	catch (const json::exception &e)
	{
		throw nusat::ParseError("config file " + path + ": " + e.what());
	}
	if (!j.is_object())
		throw nusat::ParseError("config file " + path +
		                        ": expected a JSON object");
	return j;
}

// CLI flags win over config values; config fills in anything left at its
// default
template <typename T>
void config_fill(const json &cfg, const char *key, const CLI::Option *opt,
                 T &value)
{
	if (opt->count() > 0 || !cfg.contains(key))
		return;
	try
	{
		value = cfg.at(key).get<T>();
	}
	catch (const json::exception &e)
	{
		throw nusat::ParseError(std::string("config key '") + key +
		                        "': " + e.what());
	}
}

std::vector<std::uint64_t> parse_u64_list(const std::string &text)
{
	std::vector<std::uint64_t> out;
	std::stringstream ss(text);
	std::string item;
	while (std::getline(ss, item, ','))
	{
		if (item.empty())
			continue;
		out.push_back(std::stoull(item));
	}
	return out;
}

std::vector<double> parse_double_list(const std::string &text)
{
	std::vector<double> out;
	std::stringstream ss(text);
	std::string item;
	while (std::getline(ss, item, ','))
	{
		if (item.empty())
			continue;
		out.push_back(std::stod(item));
	}
	return out;
}

json threshold_report_json(const nusat::ThresholdReport &rep)
{
	return json{{"schema_version", schema_version},
	            {"regime", nusat::regime_name(rep.regime)},
	            {"m_star", rep.m_star},
	            {"sharp", rep.sharp},
	            {"formula", rep.formula_tag},
	            {"diagnostics",
	             json{{"r1", rep.r1},
	                  {"r2", rep.r2},
	                  {"f_ratio", rep.f_ratio},
	                  {"q_max", rep.q_max}}},
	            {"note", rep.note}};
}

json crossing_json(const nusat::CrossingEstimate &est)
{
	return json{{"schema_version", schema_version},
	            {"n", est.n},
	            {"m_hat", est.m_hat},
	            {"ci", json::array({est.ci_low, est.ci_high})},
	            {"trials_used", est.trials_used},
	            {"m_star_predicted", est.m_star_predicted},
	            {"bracket", json::array({est.bracket_lo, est.bracket_hi})}};
}

json lit_json(nusat::Lit l)
{
	return json(l.to_dimacs());
}

int cmd_gen(const std::string &dist, std::uint32_t n, int k, std::uint64_t m,
            std::uint64_t seed, std::uint64_t retry_cap, unsigned threads,
            const std::string &out)
{
	nusat::EnsembleSpec spec = nusat::EnsembleSpec::parse(dist);
	nusat::Distribution d = nusat::Distribution::instantiate(spec, n);
	nusat::GeneratorConfig cfg;
	cfg.seed = seed;
	cfg.retry_cap = retry_cap;
	cfg.threads = nusat::resolve_threads(threads);
	nusat::Formula f = nusat::sample_formula(d, k, m, cfg);
	write_stream_or_file(out, nusat::to_dimacs(f));
	return 0;
}

int cmd_solve(const std::string &path, bool permissive)
{
	nusat::Formula f = nusat::from_dimacs(
	    read_stream_or_file(path),
	    permissive ? nusat::DimacsMode::Permissive : nusat::DimacsMode::Strict);
	nusat::SolveResult res = nusat::solve2(f);
	json j{{"schema_version", schema_version},
	       {"status", res.sat() ? "SAT" : "UNSAT"}};
	if (res.sat())
	{
		json assignment = json::array();
		for (std::uint32_t v = 1; v <= f.n(); ++v)
			assignment.push_back(res.assignment[v] ? 1 : 0);
		j["assignment"] = assignment;
	}
	else
	{
		j["witness_var"] = *res.witness_var;
	}
	emit_json(j);
	return res.sat() ? 10 : 20;
}

int cmd_witness(const std::string &path, const std::string &find,
                std::uint32_t t_max)
{
	nusat::Formula f = nusat::from_dimacs(read_stream_or_file(path));
	if (find == "bicycle")
	{
		auto b = nusat::find_bicycle(f, t_max);
		if (!b)
		{
			emit_json(json(nullptr));
			return 0;
		}
		json w = json::array();
		for (nusat::Lit l : b->w)
			w.push_back(lit_json(l));
		emit_json(json{{"schema_version", schema_version},
		               {"kind", "bicycle"},
		               {"t", b->t},
		               {"w", w},
		               {"u", lit_json(b->u)},
		               {"v", lit_json(b->v)},
		               {"clause_indices", b->clause_indices}});
		return 0;
	}
	if (find == "core")
	{
		int k = f.k() >= 2 ? static_cast<int>(f.k()) : 2;
		auto core = nusat::full_sign_core(f, k);
		if (!core)
		{
			emit_json(json(nullptr));
			return 0;
		}
		emit_json(json{{"schema_version", schema_version},
		               {"kind", "full_sign_core"},
		               {"k", k},
		               {"vars", *core}});
		return 0;
	}
	if (find.rfind("snake:", 0) == 0)
	{
		auto t = static_cast<std::uint32_t>(std::stoul(find.substr(6)));
		auto classes = nusat::count_snake_occurrences(f, t);
		if (classes.empty())
		{
			emit_json(json(nullptr));
			return 0;
		}
		const auto &first = classes.front();
		json w = json::array();
		for (nusat::Lit l : first.representative.w)
			w.push_back(lit_json(l));
		std::uint64_t exactly_once = 0;
		for (const auto &c : classes)
			if (c.exactly_once)
				++exactly_once;
		emit_json(json{{"schema_version", schema_version},
		               {"kind", "snake"},
		               {"t", t},
		               {"w", w},
		               {"multiplicity", first.multiplicity},
		               {"exactly_once", first.exactly_once},
		               {"classes_total", classes.size()},
		               {"classes_exactly_once", exactly_once}});
		return 0;
	}
	throw nusat::ParseError("witness: --find must be bicycle|snake:T|core, "
	                        "got '" + find + "'");
}

int cmd_threshold(const std::string &dist, std::uint32_t n)
{
	nusat::EnsembleSpec spec = nusat::EnsembleSpec::parse(dist);
	nusat::Distribution d = nusat::Distribution::instantiate(spec, n);
	emit_json(threshold_report_json(nusat::predict_threshold(d)));
	return 0;
}

int cmd_bounds(const std::string &dist, std::uint32_t n, double m, int k,
               std::uint32_t t, std::uint32_t t_max)
{
	nusat::EnsembleSpec spec = nusat::EnsembleSpec::parse(dist);
	nusat::Distribution d = nusat::Distribution::instantiate(spec, n);
	if (t == 0)
		t = nusat::default_snake_size(d);

	double ie = nusat::unsat_bound_inclusion_exclusion(d.q_max(), m, k);
	double cq = nusat::unsat_bound_constant_q(d.q_max(), m, k);

	json snakes;
	try
	{
		double v = nusat::expected_snakes_lower_bound(d, m, t);
		snakes = json{{"t", t}, {"value", v}};
	}
	catch (const nusat::DomainError &e)
	{
		snakes = json{{"t", t}, {"error", e.what()}};
	}

	double bike = nusat::bicycle_expectation_upper_bound(d, m, t_max);
	json bike_j{{"t_max", t_max}};
	if (std::isinf(bike))
		bike_j["divergent"] = true;
	else
		bike_j["value"] = bike;

	emit_json(json{
	    {"schema_version", schema_version},
	    {"n", n},
	    {"m", m},
	    {"k", k},
	    {"q_max", d.q_max()},
	    {"unsat_inclusion_exclusion",
	     json{{"raw", ie}, {"clamped", nusat::clamp_unit(ie)}}},
	    {"unsat_constant_q",
	     json{{"raw", cq}, {"clamped", nusat::clamp_unit(cq)}}},
	    {"expected_snakes_lower_bound", snakes},
	    {"bicycle_expectation_upper_bound", bike_j}});
	return 0;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"non-uniform random 2-SAT: generation, solving, threshold "
	             "prediction, and Monte Carlo experiments"};
	app.require_subcommand(1);
	app.footer("Worker counts resolve as: NUSAT_THREADS env var, then "
	           "--threads, then hardware concurrency.");

	// gen
	auto *gen = app.add_subcommand("gen", "sample a random formula (DIMACS)");
	std::string g_dist;
	std::uint32_t g_n = 0;
	int g_k = 2;
	std::uint64_t g_m = 0, g_seed = 0, g_retry = 1'000'000;
	unsigned g_threads = 0;
	std::string g_out = "-";
	gen->add_option("--dist", g_dist,
	                "uniform|powerlaw:BETA|geometric:B|file:PATH")
	    ->required();
	gen->add_option("--n", g_n, "variable count")->required();
	gen->add_option("--k", g_k, "clause arity (default 2)");
	gen->add_option("--m", g_m, "clause count")->required();
	gen->add_option("--seed", g_seed, "PRNG seed");
	gen->add_option("--retry-cap", g_retry, "resampling cap per clause");
	gen->add_option("--threads", g_threads, "worker count (0 = auto)");
	gen->add_option("--out", g_out, "output path, '-' for stdout");

	// solve
	auto *solve = app.add_subcommand("solve", "decide a 2-CNF (exit 10 SAT / "
	                                          "20 UNSAT)");
	std::string s_file;
	bool s_permissive = false;
	solve->add_option("file", s_file, "DIMACS file, '-' for stdin")
	    ->required();
	solve->add_flag("--permissive", s_permissive,
	                "accept mixed arities and repeated variables in input");

	// witness
	auto *wit = app.add_subcommand("witness",
	                               "find structural witnesses in a formula");
	std::string w_file, w_find;
	std::uint32_t w_tmax = 20;
	wit->add_option("file", w_file, "DIMACS file, '-' for stdin")->required();
	wit->add_option("--find", w_find, "bicycle|snake:T|core")->required();
	wit->add_option("--tmax", w_tmax, "bicycle length cap (default 20)");

	// threshold
	auto *thr = app.add_subcommand("threshold",
	                               "predict threshold location and sharpness");
	std::string t_dist;
	std::uint32_t t_n = 0;
	thr->add_option("--dist", t_dist, "distribution")->required();
	thr->add_option("--n", t_n, "variable count")->required();

	// bounds
	auto *bnd = app.add_subcommand("bounds", "closed-form probability bounds "
	                                         "at (n, m)");
	std::string b_dist;
	std::uint32_t b_n = 0;
	double b_m = 0;
	int b_k = 2;
	std::uint32_t b_t = 0, b_tmax = 50;
	bnd->add_option("--dist", b_dist, "distribution")->required();
	bnd->add_option("--n", b_n, "variable count")->required();
	bnd->add_option("--m", b_m, "clause count")->required();
	bnd->add_option("--k", b_k, "arity for the sign-pattern bounds");
	bnd->add_option("--t", b_t, "snake size (default ceil(log^2 f))");
	bnd->add_option("--tmax", b_tmax, "bicycle series truncation");

	// sweep
	auto *swp = app.add_subcommand("sweep", "satisfiability curve (CSV)");
	std::string sw_dist, sw_mgrid, sw_mrel, sw_config;
	std::uint32_t sw_n = 0;
	std::uint64_t sw_trials = 100, sw_seed = 0;
	double sw_conf = 0.95;
	unsigned sw_threads = 0;
	auto *sw_dist_o = swp->add_option("--dist", sw_dist, "distribution");
	auto *sw_n_o = swp->add_option("--n", sw_n, "variable count");
	auto *sw_mgrid_o = swp->add_option("--m-grid", sw_mgrid,
	                                   "comma-separated clause counts");
	auto *sw_mrel_o = swp->add_option(
	    "--m-rel", sw_mrel, "comma-separated multiples of predicted m*");
	auto *sw_trials_o = swp->add_option("--trials", sw_trials,
	                                    "trials per grid point");
	auto *sw_seed_o = swp->add_option("--seed", sw_seed, "base seed");
	auto *sw_conf_o = swp->add_option("--confidence", sw_conf,
	                                  "Wilson CI level (default 0.95)");
	auto *sw_threads_o = swp->add_option("--threads", sw_threads,
	                                     "worker count (0 = auto)");
	swp->add_option("--config", sw_config,
	                "JSON config file; CLI flags override it");

	// crossing
	auto *crs = app.add_subcommand("crossing", "locate the Pr(sat)=1/2 point "
	                                           "(JSON)");
	std::string c_dist, c_config;
	std::uint32_t c_n = 0;
	std::uint64_t c_seed = 0, c_budget = 20000;
	double c_conf = 0.95;
	unsigned c_threads = 0;
	auto *c_dist_o = crs->add_option("--dist", c_dist, "distribution");
	auto *c_n_o = crs->add_option("--n", c_n, "variable count");
	auto *c_seed_o = crs->add_option("--seed", c_seed, "base seed");
	auto *c_budget_o = crs->add_option("--budget", c_budget,
	                                   "total trial budget (>= 1000)");
	auto *c_conf_o = crs->add_option("--confidence", c_conf, "CI level");
	auto *c_threads_o = crs->add_option("--threads", c_threads,
	                                    "worker count (0 = auto)");
	crs->add_option("--config", c_config,
	                "JSON config file; CLI flags override it");

	// sharpness
	auto *shp = app.add_subcommand("sharpness", "transition width trend "
	                                            "across n (JSON)");
	std::string h_dist, h_ngrid, h_config;
	double h_delta = 0.1, h_conf = 0.95;
	std::uint64_t h_seed = 0, h_budget = 20000;
	unsigned h_threads = 0;
	auto *h_dist_o = shp->add_option("--dist", h_dist, "distribution");
	auto *h_ngrid_o = shp->add_option("--n-grid", h_ngrid,
	                                  "comma-separated increasing n values");
	auto *h_delta_o = shp->add_option("--delta", h_delta,
	                                  "width endpoints p=delta / p=1-delta");
	auto *h_seed_o = shp->add_option("--seed", h_seed, "base seed");
	auto *h_budget_o = shp->add_option("--budget", h_budget,
	                                   "trial budget per bisection target");
	auto *h_conf_o = shp->add_option("--confidence", h_conf, "CI level");
	auto *h_threads_o = shp->add_option("--threads", h_threads,
	                                    "worker count (0 = auto)");
	shp->add_option("--config", h_config,
	                "JSON config file; CLI flags override it");

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError &e)
	{
		if (e.get_exit_code() == 0)
		{
			app.exit(e); // --help
			return 0;
		}
		std::cerr << "usage error: " << e.what() << "\n";
		return 2;
	}

	try
	{
		if (*gen)
			return cmd_gen(g_dist, g_n, g_k, g_m, g_seed, g_retry, g_threads,
			               g_out);
		if (*solve)
			return cmd_solve(s_file, s_permissive);
		if (*wit)
			return cmd_witness(w_file, w_find, w_tmax);
		if (*thr)
			return cmd_threshold(t_dist, t_n);
		if (*bnd)
			return cmd_bounds(b_dist, b_n, b_m, b_k, b_t, b_tmax);

		if (*swp)
		{
			json cfg = load_config(sw_config);
			config_fill(cfg, "dist", sw_dist_o, sw_dist);
			config_fill(cfg, "n", sw_n_o, sw_n);
			config_fill(cfg, "m_grid", sw_mgrid_o, sw_mgrid);
			config_fill(cfg, "m_rel", sw_mrel_o, sw_mrel);
			config_fill(cfg, "trials", sw_trials_o, sw_trials);
			config_fill(cfg, "seed", sw_seed_o, sw_seed);
			config_fill(cfg, "confidence", sw_conf_o, sw_conf);
			config_fill(cfg, "threads", sw_threads_o, sw_threads);
			if (sw_dist.empty() || sw_n == 0)
				throw nusat::ParseError("sweep: --dist and --n are required "
				                        "(flag or config)");
			nusat::SweepConfig sc;
			sc.spec = nusat::EnsembleSpec::parse(sw_dist);
			sc.n = sw_n;
			sc.m_grid = parse_u64_list(sw_mgrid);
			sc.m_rel = parse_double_list(sw_mrel);
			sc.trials = sw_trials;
			sc.seed = sw_seed;
			sc.confidence = sw_conf;
			sc.threads = sw_threads;
			nusat::SweepStats stats;
			auto records = nusat::run_sweep(sc, &stats);
			if (stats.retry_bumps)
				std::cerr << "warning: " << stats.retry_bumps
				          << " trial(s) re-drawn after generator retry-cap "
				             "hits\n";
			std::cout << nusat::sweep_csv(records);
			return 0;
		}

		if (*crs)
		{
			json cfg = load_config(c_config);
			config_fill(cfg, "dist", c_dist_o, c_dist);
			config_fill(cfg, "n", c_n_o, c_n);
			config_fill(cfg, "seed", c_seed_o, c_seed);
			config_fill(cfg, "budget", c_budget_o, c_budget);
			config_fill(cfg, "confidence", c_conf_o, c_conf);
			config_fill(cfg, "threads", c_threads_o, c_threads);
			if (c_dist.empty() || c_n == 0)
				throw nusat::ParseError("crossing: --dist and --n are "
				                        "required (flag or config)");
			auto est = nusat::estimate_crossing(
			    nusat::EnsembleSpec::parse(c_dist), c_n, c_seed, c_budget,
			    c_conf, c_threads);
			emit_json(crossing_json(est));
			return 0;
		}

		if (*shp)
		{
			json cfg = load_config(h_config);
			config_fill(cfg, "dist", h_dist_o, h_dist);
			config_fill(cfg, "n_grid", h_ngrid_o, h_ngrid);
			config_fill(cfg, "delta", h_delta_o, h_delta);
			config_fill(cfg, "seed", h_seed_o, h_seed);
			config_fill(cfg, "budget", h_budget_o, h_budget);
			config_fill(cfg, "confidence", h_conf_o, h_conf);
			config_fill(cfg, "threads", h_threads_o, h_threads);
			if (h_dist.empty() || h_ngrid.empty())
				throw nusat::ParseError("sharpness: --dist and --n-grid are "
				                        "required (flag or config)");
			auto grid64 = parse_u64_list(h_ngrid);
			std::vector<std::uint32_t> grid(grid64.begin(), grid64.end());
			auto rep = nusat::sharpness_probe(
			    nusat::EnsembleSpec::parse(h_dist), grid, h_delta, h_budget,
			    h_seed, h_conf, h_threads);
			json points = json::array();
			for (const auto &p : rep.points)
				points.push_back(json{{"n", p.n},
				                      {"m_half", p.m_half},
				                      {"m_lower", p.m_lower},
				                      {"m_upper", p.m_upper},
				                      {"width", p.width},
				                      {"width_ci",
				                       json::array({p.width_lo, p.width_hi})},
				                      {"trials_used", p.trials_used}});
			emit_json(json{{"schema_version", schema_version},
			               {"delta", rep.delta},
			               {"points", points},
			               {"verdict", rep.verdict}});
			return 0;
		}
	}
	catch (const nusat::ParseError &e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	}
	catch (const std::exception &e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return 3;
	}

	std::cerr << "usage error: no subcommand\n";
	return 2;
}
