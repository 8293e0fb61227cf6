#include "nusat/solver2.hpp"

#include <stdexcept>

#include "nusat/errors.hpp"

namespace nusat {

namespace {
constexpr std::uint32_t unvisited = 0xffffffffu;
} // namespace

SolveResult TwoSatSolver::solve(const Formula &f)
{
	const std::size_t m = f.m();
	for (std::size_t i = 0; i < m; ++i)
	{
		auto c = f.clause(i);
		if (c.size() != 2)
			throw ArityError("solve2: clause " + std::to_string(i + 1) +
			                 " has arity " + std::to_string(c.size()) +
			                 ", need k=2");
		if (c[0].var() == c[1].var())
			throw ArityError("solve2: clause " + std::to_string(i + 1) +
			                 " repeats a variable");
	}

	// literal nodes are codes 2..2n+1; slots 0,1 stay unused
	const std::uint32_t nodes = 2 * f.n() + 2;

	// implication edges in CSR form: counting pass, then fill
	edge_head_.assign(nodes + 1, 0);
	for (std::size_t i = 0; i < m; ++i)
	{
		auto c = f.clause(i);
		++edge_head_[c[0].neg().code() + 1];
		++edge_head_[c[1].neg().code() + 1];
	}
	for (std::uint32_t v = 0; v < nodes; ++v)
		edge_head_[v + 1] += edge_head_[v];
	edge_to_.resize(edge_head_[nodes]);
	{
		std::vector<std::uint32_t> cursor(edge_head_.begin(), edge_head_.end() - 1);
		for (std::size_t i = 0; i < m; ++i)
		{
			auto c = f.clause(i);
			edge_to_[cursor[c[0].neg().code()]++] = c[1].code();
			edge_to_[cursor[c[1].neg().code()]++] = c[0].code();
		}
	}

	// iterative Tarjan; comp ids come out in reverse topological order
	index_.assign(nodes, unvisited);
	low_.assign(nodes, 0);
	comp_.assign(nodes, unvisited);
	on_stack_.assign(nodes, 0);
	scc_stack_.clear();
	call_stack_.clear();
	std::uint32_t next_index = 0;
	std::uint32_t next_comp = 0;

	for (std::uint32_t root = 2; root < nodes; ++root)
	{
		if (index_[root] != unvisited)
			continue;
		call_stack_.emplace_back(root, edge_head_[root]);
		index_[root] = low_[root] = next_index++;
		scc_stack_.push_back(root);
		on_stack_[root] = 1;

		while (!call_stack_.empty())
		{
			auto &[v, edge] = call_stack_.back();
			if (edge < edge_head_[v + 1])
			{
				std::uint32_t w = edge_to_[edge++];
				if (index_[w] == unvisited)
				{
					call_stack_.emplace_back(w, edge_head_[w]);
					index_[w] = low_[w] = next_index++;
					scc_stack_.push_back(w);
					on_stack_[w] = 1;
				}
				else if (on_stack_[w] && index_[w] < low_[v])
				{
					low_[v] = index_[w];
				}
				continue;
			}
			std::uint32_t done = v;
			if (low_[done] == index_[done])
			{
				while (true)
				{
					std::uint32_t t = scc_stack_.back();
					scc_stack_.pop_back();
					on_stack_[t] = 0;
					comp_[t] = next_comp;
					if (t == done)
						break;
				}
				++next_comp;
			}
			call_stack_.pop_back();
			if (!call_stack_.empty())
			{
				std::uint32_t parent = call_stack_.back().first;
				if (low_[done] < low_[parent])
					low_[parent] = low_[done];
			}
		}
	}

	SolveResult res;
	for (std::uint32_t v = 1; v <= f.n(); ++v)
	{
		if (comp_[2 * v] == comp_[2 * v + 1])
		{
			res.status = SolveStatus::Unsat;
			res.witness_var = v;
			return res;
		}
	}

	// reverse topological emission: a literal is true when its component is
	// emitted before its negation's
	res.status = SolveStatus::Sat;
	res.assignment.assign(f.n() + 1, 0);
	for (std::uint32_t v = 1; v <= f.n(); ++v)
		res.assignment[v] = comp_[2 * v] < comp_[2 * v + 1] ? 1 : 0;

	if (!satisfies(f, res.assignment))
		throw std::logic_error("solve2: extracted assignment failed verification");
	return res;
}

SolveResult solve2(const Formula &f)
{
	TwoSatSolver solver;
	return solver.solve(f);
}

SolveResult solve_brute(const Formula &f)
{
	if (f.n() > 25)
		throw SizeError("solve_brute: n=" + std::to_string(f.n()) +
		                " exceeds the 2^25 enumeration limit");

	const std::size_t m = f.m();
	std::vector<std::uint32_t> pos(m, 0), neg(m, 0);
	for (std::size_t i = 0; i < m; ++i)
	{
		for (Lit l : f.clause(i))
		{
			std::uint32_t bit = 1u << (l.var() - 1);
			if (l.negated())
				neg[i] |= bit;
			else
				pos[i] |= bit;
		}
	}

	const std::uint64_t total = 1ull << f.n();
	for (std::uint64_t a = 0; a < total; ++a)
	{
		auto bits = static_cast<std::uint32_t>(a);
		bool ok = true;
		for (std::size_t i = 0; i < m; ++i)
		{
			if (((pos[i] & bits) | (neg[i] & ~bits)) == 0)
			{
				ok = false;
				break;
			}
		}
		if (ok)
		{
			SolveResult res;
			res.status = SolveStatus::Sat;
			res.assignment.assign(f.n() + 1, 0);
			for (std::uint32_t v = 1; v <= f.n(); ++v)
				res.assignment[v] = (bits >> (v - 1)) & 1u;
			return res;
		}
	}
	SolveResult res;
	res.status = SolveStatus::Unsat;
	return res;
}

bool satisfies(const Formula &f, std::span<const std::uint8_t> assignment)
{
	if (assignment.size() < f.n() + 1)
		return false;
	for (std::size_t i = 0; i < f.m(); ++i)
	{
		bool sat = false;
		for (Lit l : f.clause(i))
		{
			if (assignment[l.var()] != (l.negated() ? 1 : 0))
			{
				sat = true;
				break;
			}
		}
		if (!sat)
			return false;
	}
	return true;
}

} // namespace nusat
