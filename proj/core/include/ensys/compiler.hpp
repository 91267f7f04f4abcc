#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ensys/polynomial.hpp"
#include "ensys/system.hpp"

namespace ensys {

struct PolyParseError : std::runtime_error {
    PolyParseError(std::size_t pos, const std::string& what);
    std::size_t pos;  // 0-based offset into the input text
};

// Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' digits)?         exponent is a literal, >= 0
//   base   := digits | 'x' digits | '(' expr ')' | '-' factor
Polynomial parse_poly(std::string_view text);

// One derived variable of a compiled system, in evaluation order.
struct AuxStep {
    enum class Op : std::uint8_t { Unit, Zero, Add, Mul };
    VarIndex target = 0;
    Op op = Op::Unit;
    VarIndex a = 0, b = 0;  // operands for Add/Mul

    friend bool operator==(const AuxStep&, const AuxStep&) = default;
};

struct CompilationResult {
    System system;
    unsigned p = 0;                 // original variables occupy indices 1..p
    std::vector<AuxStep> aux_plan;  // defines indices p+1..system.n()
    Polynomial source;
};

// Encodes d = 0 as a system whose solutions project onto the roots of d:
// d splits as P - Q with non-negative coefficients; auxiliaries provide 1
// (unit atom) and 0 (z + z = z), constants by double-and-add from 1,
// monomials by product chains, each side by a balanced sum tree, and a
// final x_P + z = x_Q pins the sides together. Every auxiliary is a
// function of x_1..x_p, so each root extends to exactly one solution.
CompilationResult compile_to_system(const Polynomial& d);  // d == 0 rejected

// Evaluates the aux plan on a root of d; rejects non-roots.
Assignment extend_witness(const CompilationResult& r, const Assignment& base);

// Sum of squared atom residuals; same solutions as s over any box.
Polynomial dioph(const System& s);  // empty system rejected

struct SnLayout {
    unsigned s = 0;        // phi occupies 1..s
    unsigned z_count = 0;  // forced-1 padding at s+1 .. s+z_count
    unsigned t_count = 0;  // counting chain, t_i holds i
    VarIndex t(unsigned i) const { return s + z_count + i; }  // 1-based
    VarIndex w = 0, y = 0, u = 0;                             // u is index n
};
SnLayout sn_layout(unsigned s, unsigned n);

// Padded system over exactly n variables. The t-chain counts to floor(n/2),
// w doubles it, and w + y = x_1 with y zero (n even) or one (n odd) forces
// x_1 = n, so u = x_2 + 1 carries the padded function value.
System build_sn(const System& phi, unsigned n);  // needs s >= 3, n >= 6+2s

}  // namespace ensys
