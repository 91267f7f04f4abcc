#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "ensys/polynomial.hpp"
#include "ensys/system.hpp"

namespace ensys {

struct SolveBudget {
    Int bound = 0;  // search box is [0, bound]^n unless var_bounds overrides
    std::size_t cap = std::numeric_limits<std::size_t>::max();
    std::uint64_t node_limit = std::numeric_limits<std::uint64_t>::max();
    std::vector<Int> var_bounds;             // empty, or size n: per-variable upper bounds
    std::vector<std::optional<Int>> pinned;  // empty, or size n: coordinates fixed up front
};

enum class SolveStatus { Complete, CapReached, BudgetExhausted };
const char* to_string(SolveStatus s);

struct SolveResult {
    std::vector<Assignment> solutions;  // lexicographic order
    SolveStatus status = SolveStatus::Complete;
    std::uint64_t nodes = 0;  // branch decisions taken
};

// Backtracking search for all solutions of s inside the box.
// Branches on the lowest unassigned variable with ascending values;
// unit equations and single-unknown atoms are propagated eagerly.
// CapReached and BudgetExhausted leave solutions as a correct prefix.
SolveResult solve_in_box(const System& s, const SolveBudget& budget);

inline SolveResult solve_in_box(const System& s, const Int& bound) {
    SolveBudget budget;
    budget.bound = bound;
    return solve_in_box(s, budget);
}

// Decides whether poly = 0 has a solution in non-negative integers.
// A truthful oracle is only assumed when the solution set is finite.
using Oracle = std::function<bool(const Polynomial&)>;

// Exhaustive check over [0, B]^vars; truthful whenever all solutions fit the box.
Oracle bounded_search_oracle(const Int& B);

// (m + y - (x_1 + ... + x_p))^2 + d^2 with y fresh at index p+1.
// Solvable in N^(p+1) iff d = 0 has a solution with coordinate sum >= m.
Polynomial padded_equation(const Polynomial& d, unsigned m);

struct ConditionalSolutions {
    std::vector<Assignment> solutions;  // all roots of d, lexicographic
    unsigned m = 0;                     // first parameter the oracle rejected
};

// Raises m until the oracle rejects the padded equation, then reads off
// every root below m. Complete when d has finitely many roots and the
// oracle answers truthfully. nullopt once m would pass max_m.
std::optional<ConditionalSolutions> find_all_conditional(const Polynomial& d, const Oracle& oracle,
                                                         unsigned max_m);

// Same loop, but only reports the first rejected m. That value is a strict
// upper bound on every coordinate of every root of d.
std::optional<unsigned> bound_conditional(const Polynomial& d, const Oracle& oracle,
                                          unsigned max_m);

}  // namespace ensys
