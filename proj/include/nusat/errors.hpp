#pragma once

#include <stdexcept>

namespace nusat {

struct Error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// bad ensemble parameters, weights, or pmf normalization
struct ConstructionError : Error {
	using Error::Error;
};

// malformed DIMACS or weight-file input
struct ParseError : Error {
	using Error::Error;
};

struct ArityError : Error {
	using Error::Error;
};

struct SizeError : Error {
	using Error::Error;
};

// violated precondition of a closed-form bound
struct DomainError : Error {
	using Error::Error;
};

// enumeration request beyond the feasible budget
struct BudgetError : Error {
	using Error::Error;
};

// bisection bracket does not straddle the target probability
struct BracketError : Error {
	using Error::Error;
};

// clause resampling exceeded the configured retry cap
struct RetryCapError : Error {
	using Error::Error;
};

} // namespace nusat
