#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include <ensys/system.hpp>

using namespace ensys;

TEST_CASE("atom factories canonicalize commutative arguments") {
    Atom a = Atom::add(3, 1, 2);
    CHECK(a.i == 1);
    CHECK(a.j == 3);
    CHECK(a.k == 2);
    CHECK(Atom::mul(3, 1, 2) == Atom::mul(1, 3, 2));
    CHECK(Atom::add(1, 3, 2) == a);
    CHECK(Atom::unit(4).k == 4);
}

TEST_CASE("atom text forms") {
    CHECK(Atom::unit(2).str() == "x2 = 1");
    CHECK(Atom::add(1, 2, 3).str() == "x1 + x2 = x3");
    CHECK(Atom::mul(2, 2, 1).str() == "x2 * x2 = x1");
}

TEST_CASE("system constructor sorts, dedups and validates") {
    System s(3, {Atom::mul(2, 2, 3), Atom::unit(1), Atom::add(1, 1, 2), Atom::mul(2, 2, 3)});
    CHECK(s.size() == 3);
    CHECK(std::is_sorted(s.atoms().begin(), s.atoms().end()));
    CHECK(s.contains(Atom::unit(1)));
    CHECK(!s.contains(Atom::unit(2)));

    CHECK_THROWS_AS(System(2, {Atom::unit(3)}), std::invalid_argument);
    CHECK_THROWS_AS(System(2, {Atom::add(1, 3, 2)}), std::invalid_argument);
    CHECK_THROWS_AS(System(2, {Atom::add(0, 1, 2)}), std::invalid_argument);
    CHECK_NOTHROW(System(0, {}));
}

TEST_CASE("parse and format round trip") {
    const std::string text = "n 3\nx1 = 1\nx1 + x1 = x2\nx2 * x2 = x3\n";
    System s = parse_system(text);
    CHECK(s.n() == 3);
    CHECK(s.size() == 3);
    CHECK(format_system(s) == text);
    CHECK(parse_system(format_system(s)) == s);
}

TEST_CASE("parser accepts comments, blanks and inferred n") {
    System s = parse_system("# leading comment\n\n  x2 * x2 = x4   # squares\n\nx1 = 1\n");
    CHECK(s.n() == 4);
    CHECK(s.size() == 2);
    CHECK(s.contains(Atom::mul(2, 2, 4)));
}

TEST_CASE("parser accepts a header after comments") {
    System s = parse_system("# what follows is tiny\nn 2\nx1 + x1 = x2\n");
    CHECK(s.n() == 2);
}

TEST_CASE("parse errors carry line numbers") {
    auto line_of = [](const std::string& text) {
        try {
            parse_system(text);
        } catch (const ParseError& e) {
            return e.line;
        }
        return std::size_t(0);
    };
    CHECK(line_of("x1 = 1\nn 3\n") == 2);           // header after an atom
    CHECK(line_of("n 2\nn 2\n") == 2);              // duplicate header
    CHECK(line_of("n 2\nx3 = 1\n") == 2);           // index above declared n
    CHECK(line_of("x1 = 2\n") == 1);                // unit must equal 1
    CHECK(line_of("x1 + x2\n") == 1);               // missing '='
    CHECK(line_of("x0 = 1\n") == 1);                // indices start at 1
    CHECK(line_of("x1 = 1 x2 = 1\n") == 1);         // trailing text
    CHECK(line_of("n 2\nx1 % x2 = x2\n") == 2);     // unknown operator
}

TEST_CASE("satisfies") {
    System s = parse_system("x1 = 1\nx1 + x1 = x2\nx2 * x2 = x3\n");
    CHECK(satisfies(s, {1, 2, 4}));
    CHECK(!satisfies(s, {1, 2, 5}));
    CHECK(!satisfies(s, {0, 0, 0}));
    CHECK_THROWS_AS(satisfies(s, {1, 2}), std::invalid_argument);
}

TEST_CASE("canonical atom inventory") {
    CHECK(canonical_atoms(1).size() == 3);
    CHECK(canonical_atoms(2).size() == 14);
    CHECK(canonical_atoms(3).size() == 39);  // n + n^2 (n+1)
    auto atoms = canonical_atoms(2);
    CHECK(std::is_sorted(atoms.begin(), atoms.end()));
    for (const auto& a : atoms)
        if (a.kind != Atom::Kind::Unit) CHECK(a.i <= a.j);
}

TEST_CASE("type_of collects exactly the satisfied atoms") {
    System t0 = type_of({Int(0)}, 1);
    CHECK(t0.size() == 2);  // 0+0=0 and 0*0=0
    CHECK(t0.contains(Atom::add(1, 1, 1)));
    CHECK(t0.contains(Atom::mul(1, 1, 1)));

    System t1 = type_of({Int(1)}, 1);
    CHECK(t1.size() == 2);  // x1=1 and 1*1=1
    CHECK(t1.contains(Atom::unit(1)));
    CHECK(t1.contains(Atom::mul(1, 1, 1)));

    CHECK(type_of({Int(2)}, 1).empty());
    CHECK(type_of({Int(5)}, 1).empty());

    System t12 = type_of({Int(1), Int(2)}, 2);
    CHECK(t12.contains(Atom::unit(1)));
    CHECK(t12.contains(Atom::add(1, 1, 2)));
    CHECK(!t12.contains(Atom::unit(2)));
}

TEST_CASE("max_coord") {
    CHECK(max_coord({Int(3), Int(9), Int(1)}) == 9);
    CHECK(max_coord({Int(0)}) == 0);
    CHECK_THROWS_AS(max_coord({}), std::invalid_argument);
}
