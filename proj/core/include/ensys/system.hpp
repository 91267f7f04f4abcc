#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ensys {

using Int = mpz_class;
using VarIndex = unsigned;  // 1-based

// Atomic equation over variables x_1..x_n.
// Add/Mul are stored with i <= j; the factories canonicalize.
struct Atom {
    enum class Kind : std::uint8_t { Unit, Add, Mul };

    Kind kind;
    VarIndex i = 0;  // unused for Unit
    VarIndex j = 0;  // unused for Unit
    VarIndex k = 0;

    static Atom unit(VarIndex k) { return {Kind::Unit, 0, 0, k}; }
    static Atom add(VarIndex i, VarIndex j, VarIndex k) {
        if (i > j) std::swap(i, j);
        return {Kind::Add, i, j, k};
    }
    static Atom mul(VarIndex i, VarIndex j, VarIndex k) {
        if (i > j) std::swap(i, j);
        return {Kind::Mul, i, j, k};
    }

    VarIndex max_index() const { return i > k ? (i > j ? i : j) : (j > k ? j : k); }

    friend auto operator<=>(const Atom&, const Atom&) = default;

    std::string str() const;
};

// Finite subset of the atomic equations over x_1..x_n.
// Invariants: every index in [1, n]; atoms sorted, no duplicates.
class System {
public:
    System() = default;
    System(unsigned n, std::vector<Atom> atoms);  // throws std::invalid_argument

    unsigned n() const { return n_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }
    std::size_t size() const { return atoms_.size(); }

    bool contains(const Atom& a) const;

    friend bool operator==(const System&, const System&) = default;

private:
    unsigned n_ = 0;
    std::vector<Atom> atoms_;
};

// x_i lives at position i-1; size must equal the system's n.
using Assignment = std::vector<Int>;

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& what);
    std::size_t line;
};

// Text form: optional "n <N>" header, then one atom per line,
// "x<k> = 1" | "x<i> + x<j> = x<k>" | "x<i> * x<j> = x<k>".
// '#' starts a comment; blank lines are skipped.
// Without a header, n is the largest index that occurs.
System parse_system(std::istream& in);
System parse_system(const std::string& text);
System parse_system_file(const std::string& path);

// Round-trips through parse_system; always emits the header.
std::string format_system(const System& s);

bool satisfies(const System& s, const Assignment& x);

// All atoms of E_n whose Add/Mul arguments satisfy i <= j, sorted.
// Count: n + n^2 * (n + 1).
std::vector<Atom> canonical_atoms(unsigned n);

// Largest system satisfied by x: every canonical atom of E_n that x satisfies.
System type_of(const Assignment& x, unsigned n);

Int max_coord(const Assignment& x);

}  // namespace ensys
