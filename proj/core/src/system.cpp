#include "ensys/system.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace ensys {

std::string Atom::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Unit: os << "x" << k << " = 1"; break;
        case Kind::Add: os << "x" << i << " + x" << j << " = x" << k; break;
        case Kind::Mul: os << "x" << i << " * x" << j << " = x" << k; break;
    }
    return os.str();
}

System::System(unsigned n, std::vector<Atom> atoms) : n_(n), atoms_(std::move(atoms)) {
    for (auto& a : atoms_) {
        if (a.kind != Atom::Kind::Unit && a.i > a.j) std::swap(a.i, a.j);
        bool ok = a.k >= 1 && a.k <= n_;
        if (a.kind != Atom::Kind::Unit) ok = ok && a.i >= 1 && a.j <= n_;
        if (!ok) throw std::invalid_argument("atom index out of range: " + a.str());
    }
    std::sort(atoms_.begin(), atoms_.end());
    atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

bool System::contains(const Atom& a) const {
    return std::binary_search(atoms_.begin(), atoms_.end(), a);
}

ParseError::ParseError(std::size_t line_no, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}

namespace {

struct LineScanner {
    const std::string& s;
    std::size_t pos = 0;
    std::size_t line_no;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    unsigned number() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw ParseError(line_no, "expected a number");
        unsigned long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + static_cast<unsigned long>(s[pos] - '0');
            if (v > 1'000'000'000ul) throw ParseError(line_no, "index too large");
            ++pos;
        }
        return static_cast<unsigned>(v);
    }
    unsigned var() {
        skip_ws();
        if (!eat('x')) throw ParseError(line_no, "expected a variable like x3");
        unsigned v = number();
        if (v == 0) throw ParseError(line_no, "variable indices start at 1");
        return v;
    }
};

}  // namespace

System parse_system(std::istream& in) {
    std::vector<Atom> atoms;
    unsigned declared_n = 0;
    bool have_n = false;
    unsigned max_seen = 0;
    std::string raw;
    std::size_t line_no = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        LineScanner sc{raw, 0, line_no};
        if (sc.done()) continue;

        sc.skip_ws();
        if (sc.s.compare(sc.pos, 2, "n ") == 0 || sc.s.compare(sc.pos, 2, "n\t") == 0) {
            if (have_n) throw ParseError(line_no, "duplicate n header");
            if (!atoms.empty()) throw ParseError(line_no, "n header must come first");
            ++sc.pos;
            declared_n = sc.number();
            have_n = true;
            if (!sc.done()) throw ParseError(line_no, "trailing text after n header");
            continue;
        }

        unsigned a = sc.var();
        max_seen = std::max(max_seen, a);
        if (sc.eat('=')) {
            sc.skip_ws();
            if (sc.number() != 1) throw ParseError(line_no, "right side of a unit atom must be 1");
            atoms.push_back(Atom::unit(a));
        } else {
            char op;
            if (sc.eat('+'))
                op = '+';
            else if (sc.eat('*'))
                op = '*';
            else
                throw ParseError(line_no, "expected '=', '+' or '*'");
            unsigned b = sc.var();
            if (!sc.eat('=')) throw ParseError(line_no, "expected '='");
            unsigned c = sc.var();
            max_seen = std::max({max_seen, b, c});
            atoms.push_back(op == '+' ? Atom::add(a, b, c) : Atom::mul(a, b, c));
        }
        if (!sc.done()) throw ParseError(line_no, "trailing text after atom");
    }

    unsigned n = have_n ? declared_n : max_seen;
    if (have_n && max_seen > declared_n)
        throw ParseError(line_no, "index exceeds declared n");
    try {
        return System(n, std::move(atoms));
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
    }
}

System parse_system(const std::string& text) {
    std::istringstream is(text);
    return parse_system(is);
}

System parse_system_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return parse_system(f);
}

std::string format_system(const System& s) {
    std::ostringstream os;
    os << "n " << s.n() << "\n";
    for (const auto& a : s.atoms()) os << a.str() << "\n";
    return os.str();
}

bool satisfies(const System& s, const Assignment& x) {
    if (x.size() != s.n()) throw std::invalid_argument("assignment size != n");
    for (const auto& a : s.atoms()) {
        switch (a.kind) {
            case Atom::Kind::Unit:
                if (x[a.k - 1] != 1) return false;
                break;
            case Atom::Kind::Add:
                if (x[a.i - 1] + x[a.j - 1] != x[a.k - 1]) return false;
                break;
            case Atom::Kind::Mul:
                if (x[a.i - 1] * x[a.j - 1] != x[a.k - 1]) return false;
                break;
        }
    }
    return true;
}

std::vector<Atom> canonical_atoms(unsigned n) {
    std::vector<Atom> out;
    out.reserve(n + static_cast<std::size_t>(n) * n * (n + 1));
    for (unsigned k = 1; k <= n; ++k) out.push_back(Atom::unit(k));
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = i; j <= n; ++j)
            for (unsigned k = 1; k <= n; ++k) {
                out.push_back(Atom::add(i, j, k));
                out.push_back(Atom::mul(i, j, k));
            }
    std::sort(out.begin(), out.end());
    return out;
}

System type_of(const Assignment& x, unsigned n) {
    if (x.size() != n) throw std::invalid_argument("assignment size != n");
    std::vector<Atom> sat;
    for (const auto& a : canonical_atoms(n)) {
        bool ok = false;
        switch (a.kind) {
            case Atom::Kind::Unit: ok = x[a.k - 1] == 1; break;
            case Atom::Kind::Add: ok = x[a.i - 1] + x[a.j - 1] == x[a.k - 1]; break;
            case Atom::Kind::Mul: ok = x[a.i - 1] * x[a.j - 1] == x[a.k - 1]; break;
        }
        if (ok) sat.push_back(a);
    }
    return System(n, std::move(sat));
}

Int max_coord(const Assignment& x) {
    if (x.empty()) throw std::invalid_argument("empty assignment");
    Int m = x[0];
    for (const auto& v : x)
        if (v > m) m = v;
    return m;
}

}  // namespace ensys
