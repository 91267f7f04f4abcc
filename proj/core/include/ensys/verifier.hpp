#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ensys/system.hpp"

namespace ensys {

// A constructed witness failed its own exact checks.
struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Primality { Prime, Composite };

// Lucas-Lehmer residue test for 2^p - 1. p must be an odd prime.
Primality lucas_lehmer(unsigned p);

enum class Family { Intro1, Intro2, Thm2, Thm3, Thm4, Uncond };

std::optional<Family> parse_family(std::string_view name);
std::string_view family_name(Family f);

struct FamilyWitness {
    Family family;
    unsigned param = 0;
    System system;
    Assignment solution;
    Int claimed_max;
};

// The family's system at parameter n.
//   intro1 (n >= 3): unit + doubling + squaring chain, unique solution.
//   intro2 (n >= 2): squaring tower with two solutions.
//   thm2 (2^n - 1 prime): unique solution, max (2^n)^(2^n).
//   thm3 (2^(2^n) + 1 prime, n in 1..4): unique solution.
//   thm4 (n >= 1): infinitely many solutions via the Pell equation.
//   uncond (n >= 1): finitely many solutions, max solution closed-form.
System family_system(Family f, unsigned n);

// Closed-form witness (the maximal solution where several exist), checked
// exactly against the system before returning. Size guards raise BudgetError
// via the enumerator header's type; primality preconditions raise
// invalid_argument; an arithmetic mismatch raises VerifyError.
FamilyWitness family_witness(Family f, unsigned n);

struct PellSolution {
    unsigned k = 0;
    Int x, y;  // x^2 + 1 = 5^(2k+1) * y^2
};

// Smallest solution: x = ((2+sqrt5)^(5^k) + (2-sqrt5)^(5^k)) / 2,
// y the matching cofactor. Computed by binary powers of 2 + sqrt5.
PellSolution pell_minimal(unsigned k);  // k <= 8

// Strictly larger solution of the same equation, by cubing x + y*sqrtN.
PellSolution pell_next(const PellSolution& s);

// Every solution of the uncond system: x_{n+4} must divide 2^(2^n),
// giving 2^n + 1 solutions, one per power of two. Ascending x_{n+4}.
std::vector<Assignment> uncond_all_solutions(unsigned n);  // n <= 4

// (x+1)^M == 1 + M*x + x^2 * sum_{k=2..M} C(M,k) x^(k-2), checked exactly.
bool binomial_identity_check(unsigned M, const Int& x);  // M in 1..8192

}  // namespace ensys
