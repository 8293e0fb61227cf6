#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "nusat/dist.hpp"
#include "nusat/errors.hpp"
#include "nusat/generator.hpp"
#include "nusat/solver2.hpp"

using namespace nusat;

namespace {

Formula make2(std::uint32_t n,
              std::initializer_list<std::pair<long long, long long>> clauses)
{
	Formula f(n, 2);
	for (auto [a, b] : clauses)
	{
		Lit cl[2] = {Lit::from_dimacs(a), Lit::from_dimacs(b)};
		f.append_clause(cl);
	}
	return f;
}

} // namespace

TEST_CASE("single clause is SAT with a verified assignment")
{
	Formula f = make2(2, {{1, 2}});
	SolveResult r = solve2(f);
	CHECK(r.sat());
	CHECK(satisfies(f, r.assignment));
}

TEST_CASE("all four sign patterns on two variables are UNSAT")
{
	Formula f = make2(2, {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}});
	SolveResult r = solve2(f);
	CHECK_FALSE(r.sat());
	REQUIRE(r.witness_var.has_value());
	CHECK((*r.witness_var == 1 || *r.witness_var == 2));
	CHECK_FALSE(solve_brute(f).sat());
}

TEST_CASE("the snake clause set on (x1,x2,x3) is UNSAT")
{
	// clauses 1-2 force x2 = 1, clauses 3-4 then contradict
	Formula f = make2(3, {{2, 1}, {-1, 2}, {-2, 3}, {-3, -2}});
	CHECK_FALSE(solve2(f).sat());
	CHECK_FALSE(solve_brute(f).sat());
}

TEST_CASE("empty formula is SAT")
{
	Formula f(5, 2);
	CHECK(solve2(f).sat());
	SolveResult b = solve_brute(f);
	CHECK(b.sat());
	CHECK(satisfies(f, b.assignment));
}

TEST_CASE("arity and size guards")
{
	Formula f3(3, 3);
	Lit cl[3] = {Lit::pos(1), Lit::pos(2), Lit::pos(3)};
	f3.append_clause(cl);
	CHECK_THROWS_AS(solve2(f3), ArityError);
	CHECK(solve_brute(f3).sat()); // brute handles any arity

	Formula big(26, 2);
	CHECK_THROWS_AS(solve_brute(big), SizeError);
}

TEST_CASE("oracle equivalence on random formulas, n=12")
{
	std::mt19937_64 rng(4321);
	std::uniform_int_distribution<std::size_t> md(1, 40);
	for (int iter = 0; iter < 3000; ++iter)
	{
		Formula f = testutil::random_formula(rng, 12, md(rng));
		SolveResult fast = solve2(f);
		SolveResult slow = solve_brute(f);
		REQUIRE(fast.status == slow.status);
		if (fast.sat())
		{
			CHECK(satisfies(f, fast.assignment));
			CHECK(satisfies(f, slow.assignment));
		}
	}
}

TEST_CASE("UNSAT witness re-verifies against an independent SCC pass")
{
	std::mt19937_64 rng(777);
	int unsat_seen = 0;
	while (unsat_seen < 50)
	{
		Formula f = testutil::random_formula(rng, 10, 25);
		SolveResult r = solve2(f);
		if (r.sat())
			continue;
		++unsat_seen;
		REQUIRE(r.witness_var.has_value());
		std::uint32_t v = *r.witness_var;
		auto comp = testutil::kosaraju_implication_scc(f);
		CHECK(comp[2 * v] == comp[2 * v + 1]);
	}
}

TEST_CASE("unsatisfiability is monotone under clause addition")
{
	std::mt19937_64 rng(31337);
	for (int chain = 0; chain < 40; ++chain)
	{
		Formula full = testutil::random_formula(rng, 8, 30);
		Formula prefix(8, 2);
		bool seen_unsat = false;
		for (std::size_t i = 0; i < full.m(); ++i)
		{
			auto c = full.clause(i);
			prefix.append_clause(c);
			bool sat = solve2(prefix).sat();
			if (seen_unsat)
				CHECK_FALSE(sat);
			if (!sat)
				seen_unsat = true;
		}
	}
}

TEST_CASE("deep implication chains do not overflow the stack")
{
	// x1 -> x2 -> ... -> x_n as clauses (~x_i v x_{i+1}), then close a cycle
	const std::uint32_t n = 300000;
	Formula f(n, 2);
	for (std::uint32_t v = 1; v + 1 <= n; ++v)
	{
		Lit cl[2] = {Lit::neg_of(v), Lit::pos(v + 1)};
		f.append_clause(cl);
	}
	Lit close[2] = {Lit::neg_of(n), Lit::pos(1)};
	f.append_clause(close);
	SolveResult r = solve2(f);
	CHECK(r.sat());
	CHECK(satisfies(f, r.assignment));

	// and the contradictory version: chain plus (~x_n v ~x_1) and (x1 v x2)...
	Formula g = f;
	Lit force1[2] = {Lit::pos(1), Lit::pos(2)};
	Lit force2[2] = {Lit::pos(1), Lit::neg_of(2)};
	Lit deny[2] = {Lit::neg_of(n), Lit::neg_of(1)};
	g.append_clause(force1);
	g.append_clause(force2);
	g.append_clause(deny);
	CHECK_FALSE(solve2(g).sat());
}

TEST_CASE("oracle equivalence across ensemble-generated formulas")
{
	GeneratorConfig cfg;
	std::uint64_t seed = 0;
	for (const EnsembleSpec &spec :
	     {EnsembleSpec::uniform(), EnsembleSpec::power_law(2.5),
	      EnsembleSpec::geometric(2.0)})
	{
		Distribution d = Distribution::instantiate(spec, 14);
		for (int iter = 0; iter < 300; ++iter)
		{
			cfg.seed = ++seed;
			Formula f = sample_formula(d, 2, 10 + (iter % 25), cfg);
			CHECK(solve2(f).status == solve_brute(f).status);
		}
	}
}
