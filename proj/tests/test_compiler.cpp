#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include <ensys/compiler.hpp>
#include <ensys/solver.hpp>

#include "oracles.hpp"

using namespace ensys;

namespace {

Polynomial x(unsigned i) { return Polynomial::variable(i); }
Polynomial c(long v) { return Polynomial::constant(Int(v)); }

Assignment tup(std::initializer_list<long> vs) {
    Assignment out;
    for (long v : vs) out.emplace_back(v);
    return out;
}

// Upper bounds for every variable of a compiled system when the base box is
// [0, base_bound]^p: auxiliaries are monotone in the base coordinates, so
// their values at the top corner dominate.
std::vector<Int> compiled_bounds(const CompilationResult& r, const Int& base_bound) {
    std::vector<Int> val(r.system.n() + 1, 0);
    for (unsigned v = 1; v <= r.p; ++v) val[v] = base_bound;
    for (const auto& step : r.aux_plan) {
        switch (step.op) {
            case AuxStep::Op::Unit: val[step.target] = 1; break;
            case AuxStep::Op::Zero: val[step.target] = 0; break;
            case AuxStep::Op::Add: val[step.target] = val[step.a] + val[step.b]; break;
            case AuxStep::Op::Mul: val[step.target] = val[step.a] * val[step.b]; break;
        }
    }
    return {val.begin() + 1, val.end()};
}

// Base tuples of [0, base_bound]^p whose compiled system extends them,
// read off a full box solve of the compiled system.
std::vector<Assignment> projected_solutions(const CompilationResult& r, const Int& base_bound) {
    SolveBudget budget;
    budget.var_bounds = compiled_bounds(r, base_bound);
    auto res = solve_in_box(r.system, budget);
    REQUIRE(res.status == SolveStatus::Complete);
    std::vector<Assignment> out;
    for (const auto& sol : res.solutions)
        out.emplace_back(sol.begin(), sol.begin() + r.p);
    return out;
}

std::vector<Assignment> direct_roots(const Polynomial& d, unsigned p, const Int& base_bound) {
    std::vector<Assignment> out;
    for (const auto& pt : oracles::box_points(p, base_bound))
        if (d.eval(pt) == 0) out.push_back(pt);
    return out;
}

}  // namespace

TEST_CASE("polynomial parsing") {
    CHECK(parse_poly("x1^2 - x2") == x(1).pow(2) - x(2));
    CHECK(parse_poly("(x1 + 1)^2 - x1^2 - 2*x1 - 1").is_zero());
    CHECK(parse_poly("3*x1*x2 - 5") == c(3) * x(1) * x(2) - c(5));
    CHECK(parse_poly("-x1 + 3") == c(3) - x(1));
    CHECK(parse_poly("2^3") == c(8));
    CHECK(parse_poly("x2*(x1 - 4)") == x(1) * x(2) - c(4) * x(2));
    CHECK(parse_poly(" - ( x1 - x1 ) ").is_zero());
    CHECK(parse_poly("x1^0") == c(1));
}

TEST_CASE("polynomial parse errors carry positions") {
    auto pos_of = [](const std::string& text) {
        try {
            parse_poly(text);
        } catch (const PolyParseError& e) {
            return e.pos;
        }
        return std::size_t(9999);
    };
    CHECK(pos_of("") == 0);
    CHECK(pos_of("x0") == 1);       // variable indices start at 1
    CHECK(pos_of("x1^") == 3);      // exponent must be a literal
    CHECK(pos_of("x1^x2") == 3);    // likewise
    CHECK(pos_of("x1 +") == 4);
    CHECK(pos_of("(x1") == 3);      // unbalanced parenthesis
    CHECK(pos_of("x1 x2") == 3);    // trailing input
    CHECK(pos_of("x1 ** x2") == 4);
}

TEST_CASE("compiling the zero polynomial is refused") {
    CHECK_THROWS_AS(compile_to_system(Polynomial()), std::invalid_argument);
    CHECK_THROWS_AS(compile_to_system(parse_poly("x1 - x1")), std::invalid_argument);
}

TEST_CASE("compiled systems preserve solution sets over the base box") {
    SUBCASE("x1^2 - x2 over [0,5]^2") {
        auto r = compile_to_system(parse_poly("x1^2 - x2"));
        CHECK(r.p == 2);
        auto projected = projected_solutions(r, 5);
        // x2 <= 5 cuts the graph of x2 = x1^2 after x1 = 2
        std::vector<Assignment> expected = {tup({0, 0}), tup({1, 1}), tup({2, 4})};
        CHECK(projected == expected);
    }
    SUBCASE("x1 - 1 is forced") {
        auto r = compile_to_system(parse_poly("x1 - 1"));
        CHECK(projected_solutions(r, 5) == std::vector<Assignment>{tup({1})});
    }
    SUBCASE("x1 + x2 - 3 over [0,3]^2") {
        auto r = compile_to_system(parse_poly("x1 + x2 - 3"));
        std::vector<Assignment> expected = {tup({0, 3}), tup({1, 2}), tup({2, 1}), tup({3, 0})};
        CHECK(projected_solutions(r, 3) == expected);
    }
    SUBCASE("nonzero constants have no solutions") {
        auto r = compile_to_system(parse_poly("3"));
        CHECK(projected_solutions(r, 4).empty());
    }
}

TEST_CASE("random polynomials round trip and extend uniquely") {
    std::mt19937 rng(20260814);
    const Int base_bound = 5;
    for (int trial = 0; trial < 25; ++trial) {
        Polynomial d = oracles::random_polynomial(rng);
        CAPTURE(d.str());
        auto r = compile_to_system(d);
        REQUIRE(r.p >= d.vars());

        auto expected = direct_roots(d, r.p, base_bound);
        CHECK(projected_solutions(r, base_bound) == expected);

        for (const auto& base : expected) {
            Assignment full = extend_witness(r, base);
            CHECK(satisfies(r.system, full));

            SolveBudget budget;
            budget.var_bounds = compiled_bounds(r, base_bound);
            budget.pinned.assign(r.system.n(), std::nullopt);
            for (unsigned v = 0; v < r.p; ++v) budget.pinned[v] = base[v];
            auto res = solve_in_box(r.system, budget);
            REQUIRE(res.solutions.size() == 1);
            CHECK(res.solutions[0] == full);
        }
    }
}

TEST_CASE("witness extension checks its base") {
    auto r = compile_to_system(parse_poly("x1^2 - x2"));
    Assignment full = extend_witness(r, tup({2, 4}));
    CHECK(satisfies(r.system, full));
    CHECK(full.size() == r.system.n());

    Assignment low = extend_witness(r, tup({1, 1}));
    bool has_zero = false, has_one = false;
    for (const auto& v : low) {
        has_zero = has_zero || v == 0;
        has_one = has_one || v == 1;
    }
    CHECK(has_zero);  // the forced zero variable
    CHECK(has_one);   // the forced unit variable

    CHECK_THROWS_AS(extend_witness(r, tup({2, 5})), std::invalid_argument);
    CHECK_THROWS_AS(extend_witness(r, tup({2})), std::invalid_argument);
}

TEST_CASE("aux plan is deterministic and covers indices p+1..n") {
    auto r1 = compile_to_system(parse_poly("2*x1^2 - x2 + 3"));
    auto r2 = compile_to_system(parse_poly("2*x1^2 - x2 + 3"));
    CHECK(r1.aux_plan == r2.aux_plan);
    CHECK(r1.system == r2.system);
    std::vector<VarIndex> targets;
    for (const auto& s : r1.aux_plan) targets.push_back(s.target);
    std::vector<VarIndex> expected;
    for (VarIndex v = r1.p + 1; v <= r1.system.n(); ++v) expected.push_back(v);
    CHECK(targets == expected);
}

TEST_CASE("single equation conversions") {
    CHECK(dioph(System(2, {Atom::add(1, 1, 2)})).str() == "4*x1^2 - 4*x1*x2 + x2^2");
    Polynomial q = dioph(System(1, {Atom::unit(1), Atom::mul(1, 1, 1)}));
    Polynomial expected = (x(1) - c(1)).pow(2) + (x(1) * x(1) - x(1)).pow(2);
    CHECK(q == expected);
    CHECK_THROWS_AS(dioph(System(2, {})), std::invalid_argument);
}

TEST_CASE("converted equations keep the solution set in any box") {
    System intro = parse_system("n 3\nx1 + x1 = x2\nx1 * x1 = x2\nx2 * x2 = x3\n");
    Polynomial d = dioph(intro);
    auto roots = direct_roots(d, 3, 16);
    std::vector<Assignment> expected = {tup({0, 0, 0}), tup({2, 4, 16})};
    CHECK(roots == expected);

    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        System s = oracles::random_system(rng);
        Polynomial q = dioph(s);
        CAPTURE(format_system(s));
        CHECK(direct_roots(q, s.n(), 4) == oracles::brute_solutions(s, 4));
    }
}

TEST_CASE("padding layout arithmetic") {
    SnLayout l = sn_layout(3, 12);
    CHECK(l.z_count == 0);
    CHECK(l.t_count == 6);
    CHECK(l.t(1) == 4);
    CHECK(l.t(6) == 9);
    CHECK(l.w == 10);
    CHECK(l.y == 11);
    CHECK(l.u == 12);

    SnLayout odd = sn_layout(3, 13);
    CHECK(odd.z_count == 1);
    CHECK(odd.t_count == 6);
    CHECK(odd.u == 13);

    CHECK_THROWS_AS(sn_layout(3, 11), std::invalid_argument);
    CHECK_THROWS_AS(sn_layout(2, 20), std::invalid_argument);
}

TEST_CASE("padded systems have one solution with the proof's closing value") {
    System phi = parse_system("n 3\nx1 * x1 = x2\nx3 = 1\n");

    for (unsigned n : {12u, 13u, 14u, 15u, 16u}) {
        System sn = build_sn(phi, n);
        CHECK(sn.n() == n);
        SolveBudget budget;
        budget.bound = Int(n) * n + 1;
        auto res = solve_in_box(sn, budget);
        CAPTURE(n);
        REQUIRE(res.solutions.size() == 1);  // fewer than two box solutions
        const Assignment& sol = res.solutions[0];
        CHECK(sol[0] == n);
        CHECK(sol[1] == Int(n) * n);
        CHECK(sol[sn.n() - 1] == Int(n) * n + 1);  // u = g(n) + 1
    }

    System sn12 = build_sn(phi, 12);
    SolveBudget budget;
    budget.bound = 145;
    auto res = solve_in_box(sn12, budget);
    REQUIRE(res.solutions.size() == 1);
    CHECK(res.solutions[0] == tup({12, 144, 1, 1, 2, 3, 4, 5, 6, 12, 0, 145}));
}
