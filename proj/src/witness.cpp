#include "nusat/witness.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "nusat/errors.hpp"

namespace nusat {

namespace {

std::uint64_t pair_key(Lit a, Lit b)
{
	std::uint32_t x = a.code(), y = b.code();
	if (x > y)
		std::swap(x, y);
	return (static_cast<std::uint64_t>(x) << 32) | y;
}

struct PairOccurrence
{
	std::uint64_t count = 0;
	std::uint32_t first_index = 0;
	std::uint32_t second_index = 0; // valid when count >= 2
};

// Clause-pair view of a 2-CNF: multiset of unordered literal pairs plus, per
// literal, the partners it shares a clause with.
struct PairIndex
{
	std::unordered_map<std::uint64_t, PairOccurrence> pairs;
	// partner lists indexed by literal code; one entry per clause occurrence
	std::vector<std::vector<std::pair<Lit, std::uint32_t>>> partners;

	explicit PairIndex(const Formula &f, const char *op)
	{
		partners.resize(2 * f.n() + 2);
		pairs.reserve(f.m() * 2);
		for (std::size_t i = 0; i < f.m(); ++i)
		{
			auto c = f.clause(i);
			if (c.size() != 2)
				throw ArityError(std::string(op) + ": clause " +
				                 std::to_string(i + 1) + " has arity " +
				                 std::to_string(c.size()) + ", need k=2");
			if (c[0].var() == c[1].var())
				throw ArityError(std::string(op) + ": clause " +
				                 std::to_string(i + 1) + " repeats a variable");
			auto idx = static_cast<std::uint32_t>(i);
			auto &occ = pairs[pair_key(c[0], c[1])];
			if (occ.count == 0)
				occ.first_index = idx;
			else if (occ.count == 1)
				occ.second_index = idx;
			++occ.count;
			partners[c[0].code()].emplace_back(c[1], idx);
			partners[c[1].code()].emplace_back(c[0], idx);
		}
	}

	const PairOccurrence *find(Lit a, Lit b) const
	{
		auto it = pairs.find(pair_key(a, b));
		return it == pairs.end() ? nullptr : &it->second;
	}
};

} // namespace

std::vector<std::array<Lit, 2>> snake_clauses(const Snake &s)
{
	if (s.t < 2 || s.w.size() != 2 * s.t - 1)
		throw ConstructionError("snake: size t must be >= 2 with 2t-1 literals");
	for (std::size_t i = 0; i < s.w.size(); ++i)
		for (std::size_t j = i + 1; j < s.w.size(); ++j)
			if (s.w[i].var() == s.w[j].var())
				throw ConstructionError("snake: duplicate variable " +
				                        std::to_string(s.w[i].var()));

	auto at = [&](std::uint32_t i) -> Lit {
		if (i == 0 || i == 2 * s.t)
			return s.central().neg(); // w_0 = w_{2t} = ~w_t
		return s.w[i - 1];
	};
	std::vector<std::array<Lit, 2>> clauses;
	clauses.reserve(2 * s.t);
	for (std::uint32_t i = 0; i < 2 * s.t; ++i)
		clauses.push_back({at(i).neg(), at(i + 1)});
	return clauses;
}

Snake canonical_snake(const Snake &s)
{
	const std::uint32_t t = s.t;
	const std::uint32_t len = 2 * t - 1;
	auto flip_left = [&](const std::vector<Lit> &w) {
		std::vector<Lit> out(w);
		for (std::uint32_t i = 0; i + 1 < t; ++i)
			out[i] = w[t - 2 - i].neg();
		return out;
	};
	auto flip_right = [&](const std::vector<Lit> &w) {
		std::vector<Lit> out(w);
		for (std::uint32_t i = t; i < len; ++i)
			out[i] = w[len - 1 - (i - t)].neg();
		return out;
	};
	// the clause set is an implication cycle through w_t and ~w_t; starting
	// the traversal at the other central occurrence swaps the halves and
	// negates the center, so it describes the same clause set too
	auto rotate = [&](const std::vector<Lit> &w) {
		std::vector<Lit> out;
		out.reserve(len);
		for (std::uint32_t i = t; i < len; ++i)
			out.push_back(w[i]);
		out.push_back(w[t - 1].neg());
		for (std::uint32_t i = 0; i + 1 < t; ++i)
			out.push_back(w[i]);
		return out;
	};

	// full orbit: {id, flip_left, flip_right, both} x {id, rotate}
	std::vector<Lit> best = s.w;
	for (int mask = 0; mask < 8; ++mask)
	{
		std::vector<Lit> cand = s.w;
		if (mask & 1)
			cand = flip_left(cand);
		if (mask & 2)
			cand = flip_right(cand);
		if (mask & 4)
			cand = rotate(cand);
		if (std::lexicographical_compare(cand.begin(), cand.end(),
		                                 best.begin(), best.end()))
			best = cand;
	}
	return Snake{t, std::move(best)};
}

namespace {

struct BicycleSearch
{
	const PairIndex &index;
	std::uint32_t t_max;
	bool use_memo;
	std::vector<Lit> chain;
	std::vector<std::uint32_t> chain_clause; // clause realizing each chain step
	std::uint64_t var_mask = 0;              // when use_memo (n <= 64)
	std::vector<std::uint8_t> in_chain;      // by variable, always maintained
	// fully explored, fruitless (end literal, chain-variable-set) states;
	// the var set pins the chain length, so the remaining budget matches too
	std::unordered_map<std::uint64_t, std::unordered_set<std::uint32_t>> failed;

	BicycleSearch(const PairIndex &idx, std::uint32_t n, std::uint32_t tmax)
	    : index(idx), t_max(tmax), use_memo(n <= 63), in_chain(n + 1, 0)
	{
	}

	// complete chain [w1..wt]; look for entry (u,w1) and exit (~wt,v) clauses
	// whose variables lie inside the chain
	std::optional<Bicycle> try_close()
	{
		if (chain.size() < 2)
			return std::nullopt;
		Lit w1 = chain.front();
		Lit wt = chain.back();
		for (auto [v, exit_idx] : index.partners[wt.neg().code()])
		{
			if (!in_chain[v.var()])
				continue;
			for (auto [u, entry_idx] : index.partners[w1.code()])
			{
				if (!in_chain[u.var()] || entry_idx == exit_idx)
					continue;
				Bicycle b;
				b.t = static_cast<std::uint32_t>(chain.size());
				b.w = chain;
				b.u = u;
				b.v = v;
				b.clause_indices.reserve(b.t + 1);
				b.clause_indices.push_back(entry_idx);
				b.clause_indices.insert(b.clause_indices.end(),
				                        chain_clause.begin(), chain_clause.end());
				b.clause_indices.push_back(exit_idx);
				return b;
			}
		}
		return std::nullopt;
	}

	std::optional<Bicycle> dfs()
	{
		if (auto hit = try_close())
			return hit;
		if (chain.size() >= t_max)
			return std::nullopt;
		Lit end = chain.back();
		if (use_memo)
		{
			auto it = failed.find(var_mask);
			if (it != failed.end() && it->second.contains(end.code()))
				return std::nullopt;
		}
		for (auto [next, idx] : index.partners[end.neg().code()])
		{
			if (in_chain[next.var()])
				continue;
			chain.push_back(next);
			chain_clause.push_back(idx);
			in_chain[next.var()] = 1;
			if (use_memo)
				var_mask |= 1ull << next.var();
			auto hit = dfs();
			if (use_memo)
				var_mask &= ~(1ull << next.var());
			in_chain[next.var()] = 0;
			chain_clause.pop_back();
			chain.pop_back();
			if (hit)
				return hit;
		}
		if (use_memo)
			failed[var_mask].insert(end.code());
		return std::nullopt;
	}
};

} // namespace

std::optional<Bicycle> find_bicycle(const Formula &f, std::uint32_t t_max)
{
	PairIndex index(f, "find_bicycle");
	if (t_max < 2 || f.m() < 3)
		return std::nullopt;

	for (std::uint32_t code = 2; code < 2 * f.n() + 2; ++code)
	{
		Lit w1 = Lit::from_code(code);
		if (index.partners[code].empty())
			continue; // w1 needs an entry clause, so it must occur in f
		BicycleSearch search(index, f.n(), t_max);
		search.chain.push_back(w1);
		search.in_chain[w1.var()] = 1;
		if (search.use_memo)
			search.var_mask |= 1ull << w1.var();
		if (auto hit = search.dfs())
			return hit;
	}
	return std::nullopt;
}

namespace {

// simple paths from `from` of exactly `steps` implication edges ending at
// `target`, interior variables fresh; returns the interior literal sequences
void enumerate_paths(const PairIndex &index, Lit from, Lit target,
                     std::uint32_t steps, std::vector<std::uint8_t> &used,
                     std::vector<Lit> &interior,
                     std::vector<std::vector<Lit>> &out)
{
	if (steps == 1)
	{
		// final edge from -> target means clause {~from, target}
		if (index.find(from.neg(), target))
			out.push_back(interior);
		return;
	}
	for (auto [next, idx] : index.partners[from.neg().code()])
	{
		(void)idx;
		if (used[next.var()])
			continue;
		used[next.var()] = 1;
		interior.push_back(next);
		enumerate_paths(index, next, target, steps - 1, used, interior, out);
		interior.pop_back();
		used[next.var()] = 0;
	}
}

} // namespace

std::vector<SnakeClassCount> count_snake_occurrences(const Formula &f,
                                                     std::uint32_t t)
{
	if (t < 2)
		throw DomainError("snake census: t must be >= 2");
	if (t > 3)
		throw BudgetError("snake census: t=" + std::to_string(t) +
		                  " exceeds the enumeration budget (t <= 3)");
	PairIndex index(f, "snake census");

	std::map<std::vector<std::uint32_t>, Snake> classes;
	std::vector<std::uint8_t> used(f.n() + 1, 0);
	std::vector<Lit> interior;
	std::vector<std::vector<Lit>> lefts, rights;

	for (std::uint32_t code = 2; code < 2 * f.n() + 2; ++code)
	{
		Lit c = Lit::from_code(code);
		if (index.partners[code].empty() && index.partners[code ^ 1].empty())
			continue;
		used[c.var()] = 1;

		// left half: ~c -> w_1 -> ... -> w_{t-1} -> c
		lefts.clear();
		enumerate_paths(index, c.neg(), c, t, used, interior, lefts);
		if (!lefts.empty())
		{
			// right half: c -> w_{t+1} -> ... -> w_{2t-1} -> ~c
			rights.clear();
			enumerate_paths(index, c, c.neg(), t, used, interior, rights);
			for (const auto &left : lefts)
			{
				for (const auto &right : rights)
				{
					bool disjoint = true;
					for (Lit a : left)
						for (Lit b : right)
							if (a.var() == b.var())
								disjoint = false;
					if (!disjoint)
						continue;
					Snake s;
					s.t = t;
					s.w.reserve(2 * t - 1);
					s.w.insert(s.w.end(), left.begin(), left.end());
					s.w.push_back(c);
					s.w.insert(s.w.end(), right.begin(), right.end());
					Snake canon = canonical_snake(s);
					std::vector<std::uint32_t> key;
					key.reserve(canon.w.size());
					for (Lit l : canon.w)
						key.push_back(l.code());
					classes.emplace(std::move(key), std::move(canon));
				}
			}
		}
		used[c.var()] = 0;
	}

	std::vector<SnakeClassCount> out;
	out.reserve(classes.size());
	for (auto &[key, snake] : classes)
	{
		SnakeClassCount scc;
		scc.multiplicity = ~0ull;
		scc.exactly_once = true;
		for (const auto &cl : snake_clauses(snake))
		{
			const PairOccurrence *occ = index.find(cl[0], cl[1]);
			std::uint64_t count = occ ? occ->count : 0;
			scc.multiplicity = std::min(scc.multiplicity, count);
			if (count != 1)
				scc.exactly_once = false;
		}
		scc.representative = std::move(snake);
		out.push_back(std::move(scc));
	}
	return out;
}

std::uint64_t snake_sequences_exactly_once(const Formula &f, std::uint32_t t)
{
	std::uint64_t classes = 0;
	for (const auto &c : count_snake_occurrences(f, t))
		if (c.exactly_once)
			++classes;
	return 8 * classes; // each clause set is realized by eight sequences
}

std::optional<std::vector<std::uint32_t>> full_sign_core(const Formula &f,
                                                         int k)
{
	if (k < 2 || k > 5)
		throw DomainError("full_sign_core: k must be in [2,5]");
	const std::uint64_t complete = (1ull << (1u << k)) - 1;

	if (k == 2)
	{
		std::unordered_map<std::uint64_t, std::uint64_t> seen;
		seen.reserve(f.m());
		for (std::size_t i = 0; i < f.m(); ++i)
		{
			auto c = f.clause(i);
			if (c.size() != 2 || c[0].var() == c[1].var())
				continue;
			Lit a = c[0], b = c[1];
			if (a.var() > b.var())
				std::swap(a, b);
			std::uint64_t key = (static_cast<std::uint64_t>(a.var()) << 32) |
			                    b.var();
			unsigned pattern = (a.negated() ? 1u : 0u) |
			                   (b.negated() ? 2u : 0u);
			auto &mask = seen[key];
			mask |= 1ull << pattern;
			if (mask == complete)
				return std::vector<std::uint32_t>{a.var(), b.var()};
		}
		return std::nullopt;
	}

	std::map<std::vector<std::uint32_t>, std::uint64_t> seen;
	std::vector<std::pair<std::uint32_t, bool>> sorted;
	for (std::size_t i = 0; i < f.m(); ++i)
	{
		auto c = f.clause(i);
		if (c.size() != static_cast<std::size_t>(k) || !has_distinct_vars(c))
			continue;
		sorted.clear();
		for (Lit l : c)
			sorted.emplace_back(l.var(), l.negated());
		std::sort(sorted.begin(), sorted.end());
		std::vector<std::uint32_t> key;
		unsigned pattern = 0;
		for (int j = 0; j < k; ++j)
		{
			key.push_back(sorted[j].first);
			if (sorted[j].second)
				pattern |= 1u << j;
		}
		auto &mask = seen[key];
		mask |= 1ull << pattern;
		if (mask == complete)
			return key;
	}
	return std::nullopt;
}

bool Vig::has_edge(std::uint32_t a, std::uint32_t b) const
{
	if (a < 1 || a > n || b < 1 || b > n)
		return false;
	return std::binary_search(adj[a].begin(), adj[a].end(), b);
}

std::size_t Vig::edge_count() const
{
	std::size_t total = 0;
	for (const auto &list : adj)
		total += list.size();
	return total / 2;
}

Vig build_vig(const Formula &f)
{
	Vig g;
	g.n = f.n();
	g.adj.resize(f.n() + 1);
	for (std::size_t i = 0; i < f.m(); ++i)
	{
		auto c = f.clause(i);
		for (std::size_t a = 0; a < c.size(); ++a)
			for (std::size_t b = a + 1; b < c.size(); ++b)
			{
				std::uint32_t x = c[a].var(), y = c[b].var();
				if (x == y)
					continue;
				g.adj[x].push_back(y);
				g.adj[y].push_back(x);
			}
	}
	for (auto &list : g.adj)
	{
		std::sort(list.begin(), list.end());
		list.erase(std::unique(list.begin(), list.end()), list.end());
	}
	return g;
}

} // namespace nusat
