#include "nusat/formula.hpp"

#include <charconv>

#include "nusat/errors.hpp"

namespace nusat {

Formula Formula::with_clause_count(std::uint32_t n, std::uint32_t k,
                                   std::size_t m)
{
	if (k == 0)
		throw ArityError("formula: arity must be positive");
	Formula f(n, k);
	f.lits_.resize(m * k);
	return f;
}

void Formula::check_lits(std::span<const Lit> lits) const
{
	if (lits.empty())
		throw ParseError("formula: zero-length clause");
	for (Lit l : lits)
		if (l.var() < 1 || l.var() > n_)
			throw ParseError("formula: literal variable " +
			                 std::to_string(l.var()) + " outside [1," +
			                 std::to_string(n_) + "]");
}

void Formula::make_ragged()
{
	offsets_.resize(m() + 1);
	for (std::size_t i = 0; i <= m(); ++i)
		offsets_[i] = i * k_;
	k_ = 0;
}

void Formula::append_clause(std::span<const Lit> lits)
{
	check_lits(lits);
	if (offsets_.empty())
	{
		if (k_ == 0 && lits_.empty())
			k_ = static_cast<std::uint32_t>(lits.size());
		if (lits.size() != k_)
			make_ragged();
	}
	lits_.insert(lits_.end(), lits.begin(), lits.end());
	if (!offsets_.empty())
		offsets_.push_back(lits_.size());
}

void Formula::set_clause(std::size_t i, std::span<const Lit> lits)
{
	check_lits(lits);
	if (offsets_.empty() && lits.size() == k_ && (i + 1) * k_ <= lits_.size())
	{
		std::copy(lits.begin(), lits.end(), lits_.begin() + i * k_);
		return;
	}
	throw ArityError("formula: set_clause needs a preallocated uniform slot");
}

bool Formula::operator==(const Formula &other) const
{
	if (n_ != other.n_ || m() != other.m())
		return false;
	for (std::size_t i = 0; i < m(); ++i)
	{
		auto a = clause(i);
		auto b = other.clause(i);
		if (a.size() != b.size() ||
		    !std::equal(a.begin(), a.end(), b.begin()))
			return false;
	}
	return true;
}

bool has_distinct_vars(std::span<const Lit> clause)
{
	for (std::size_t i = 0; i < clause.size(); ++i)
		for (std::size_t j = i + 1; j < clause.size(); ++j)
			if (clause[i].var() == clause[j].var())
				return false;
	return true;
}

std::string to_dimacs(const Formula &f)
{
	std::string out;
	out.reserve(16 + f.m() * 8);
	out += "p cnf ";
	out += std::to_string(f.n());
	out += ' ';
	out += std::to_string(f.m());
	out += '\n';
	char buf[16];
	for (std::size_t i = 0; i < f.m(); ++i)
	{
		for (Lit l : f.clause(i))
		{
			auto [end, ec] =
			    std::to_chars(buf, buf + sizeof(buf), l.to_dimacs());
			out.append(buf, end);
			out += ' ';
		}
		out += "0\n";
	}
	return out;
}

namespace {

struct Scanner
{
	const char *cur;
	const char *end;

	void skip_space_and_comments()
	{
		while (cur != end)
		{
			if (*cur == 'c' && at_line_start)
			{
				while (cur != end && *cur != '\n')
					++cur;
			}
			else if (*cur == ' ' || *cur == '\t' || *cur == '\r')
			{
				++cur;
				at_line_start = false;
				continue;
			}
			else if (*cur == '\n')
			{
				++cur;
				at_line_start = true;
				continue;
			}
			else
				return;
		}
	}

	bool next_int(long long &v)
	{
		skip_space_and_comments();
		if (cur == end)
			return false;
		auto [p, ec] = std::from_chars(cur, end, v);
		if (ec != std::errc{} || p == cur)
			throw ParseError("dimacs: expected an integer near '" +
			                 std::string(cur, std::min<std::size_t>(8, end - cur)) +
			                 "'");
		cur = p;
		at_line_start = false;
		return true;
	}

	bool at_line_start = true;
};

} // namespace

Formula from_dimacs(std::string_view text, DimacsMode mode)
{
	Scanner sc{text.data(), text.data() + text.size()};
	sc.skip_space_and_comments();
	if (sc.cur == sc.end || *sc.cur != 'p')
		throw ParseError("dimacs: missing 'p cnf' header");
	++sc.cur;
	sc.skip_space_and_comments();
	if (sc.end - sc.cur < 3 || std::string_view(sc.cur, 3) != "cnf")
		throw ParseError("dimacs: malformed header (expected 'p cnf n m')");
	sc.cur += 3;

	long long n = 0, m = 0;
	if (!sc.next_int(n) || !sc.next_int(m) || n < 0 || m < 0)
		throw ParseError("dimacs: malformed header counts");

	Formula f(static_cast<std::uint32_t>(n), 0);
	std::vector<Lit> clause;
	std::uint32_t arity = 0;
	for (long long ci = 0; ci < m; ++ci)
	{
		clause.clear();
		long long v;
		while (true)
		{
			if (!sc.next_int(v))
				throw ParseError("dimacs: unexpected end of input in clause " +
				                 std::to_string(ci + 1));
			if (v == 0)
				break;
			if (v < -n || v > n)
				throw ParseError("dimacs: literal " + std::to_string(v) +
				                 " out of range in clause " +
				                 std::to_string(ci + 1));
			clause.push_back(Lit::from_dimacs(v));
		}
		if (clause.empty())
			throw ParseError("dimacs: zero-length clause " +
			                 std::to_string(ci + 1));
		if (mode == DimacsMode::Strict)
		{
			if (ci == 0)
				arity = static_cast<std::uint32_t>(clause.size());
			if (clause.size() != arity)
				throw ParseError("dimacs: clause " + std::to_string(ci + 1) +
				                 " has arity " + std::to_string(clause.size()) +
				                 " but the formula declared " +
				                 std::to_string(arity));
			if (!has_distinct_vars(clause))
				throw ParseError("dimacs: repeated variable in clause " +
				                 std::to_string(ci + 1));
		}
		f.append_clause(clause);
	}
	long long trailing;
	if (sc.next_int(trailing))
		throw ParseError("dimacs: trailing input after the declared " +
		                 std::to_string(m) + " clauses");
	return f;
}

} // namespace nusat
