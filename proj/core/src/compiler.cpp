#include "ensys/compiler.hpp"

#include <cctype>
#include <map>

namespace ensys {

PolyParseError::PolyParseError(std::size_t position, const std::string& what)
    : std::runtime_error("position " + std::to_string(position) + ": " + what), pos(position) {}

namespace {

struct PolyParser {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::string digits() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw PolyParseError(pos, "expected digits");
        return std::string(s.substr(start, pos - start));
    }

    unsigned exponent() {
        std::size_t at = pos;
        std::string d = digits();
        if (d.size() > 7) throw PolyParseError(at, "exponent too large");
        return static_cast<unsigned>(std::stoul(d));
    }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    Polynomial factor() {
        Polynomial b = base();
        if (eat('^')) return b.pow(exponent());
        return b;
    }

    Polynomial base() {
        char c = peek();
        if (c == '-') {
            ++pos;
            return -factor();
        }
        if (c == '(') {
            ++pos;
            Polynomial inner = expr();
            if (!eat(')')) throw PolyParseError(pos, "expected ')'");
            return inner;
        }
        if (c == 'x') {
            ++pos;
            std::size_t at = pos;
            std::string d = digits();
            if (d.size() > 7) throw PolyParseError(at, "variable index too large");
            unsigned long idx = std::stoul(d);
            if (idx == 0) throw PolyParseError(at, "variable indices start at 1");
            return Polynomial::variable(static_cast<VarIndex>(idx));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Polynomial::constant(Int(digits()));
        throw PolyParseError(pos, "expected a number, variable, '(' or '-'");
    }
};

}  // namespace

Polynomial parse_poly(std::string_view text) {
    PolyParser p{text};
    Polynomial out = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) throw PolyParseError(p.pos, "unexpected trailing input");
    return out;
}

namespace {

// Accumulates aux variables and their defining atoms. Steps with the same
// operands are reused, so shared subterms compile once.
struct Builder {
    unsigned next_var;
    std::vector<AuxStep> plan;
    std::vector<Atom> atoms;
    std::map<Int, VarIndex> consts;
    std::map<std::tuple<AuxStep::Op, VarIndex, VarIndex>, VarIndex> steps;
    VarIndex unit = 0, zero = 0;

    explicit Builder(unsigned p) : next_var(p + 1) {
        unit = fresh({0, AuxStep::Op::Unit, 0, 0});
        atoms.push_back(Atom::unit(unit));
        zero = fresh({0, AuxStep::Op::Zero, 0, 0});
        atoms.push_back(Atom::add(zero, zero, zero));  // z + z = z forces z = 0
        consts.emplace(1, unit);
    }

    VarIndex fresh(AuxStep step) {
        step.target = next_var++;
        plan.push_back(step);
        return step.target;
    }

    VarIndex binary(AuxStep::Op op, VarIndex a, VarIndex b) {
        if (a > b) std::swap(a, b);
        auto [it, inserted] = steps.try_emplace({op, a, b}, 0);
        if (!inserted) return it->second;
        VarIndex v = fresh({0, op, a, b});
        atoms.push_back(op == AuxStep::Op::Add ? Atom::add(a, b, v) : Atom::mul(a, b, v));
        it->second = v;
        return v;
    }

    VarIndex constant(const Int& c) {  // c >= 1
        auto it = consts.find(c);
        if (it != consts.end()) return it->second;
        VarIndex half = constant(c / 2);
        VarIndex v = binary(AuxStep::Op::Add, half, half);
        if (mpz_odd_p(c.get_mpz_t())) v = binary(AuxStep::Op::Add, v, unit);
        consts.emplace(c, v);
        return v;
    }

    VarIndex monomial(const Monomial& mono) {  // non-constant
        VarIndex cur = 0;
        for (unsigned v = 0; v < mono.size(); ++v)
            for (unsigned e = 0; e < mono[v]; ++e)
                cur = cur == 0 ? v + 1 : binary(AuxStep::Op::Mul, cur, v + 1);
        return cur;
    }

    VarIndex term(const Monomial& mono, const Int& coeff) {  // coeff >= 1
        if (mono.empty()) return constant(coeff);
        VarIndex m = monomial(mono);
        if (coeff == 1) return m;
        return binary(AuxStep::Op::Mul, constant(coeff), m);
    }

    VarIndex sum(std::vector<VarIndex> vars) {  // balanced reduction
        if (vars.empty()) return zero;
        while (vars.size() > 1) {
            std::vector<VarIndex> next;
            for (std::size_t i = 0; i + 1 < vars.size(); i += 2)
                next.push_back(binary(AuxStep::Op::Add, vars[i], vars[i + 1]));
            if (vars.size() % 2) next.push_back(vars.back());
            vars = std::move(next);
        }
        return vars[0];
    }
};

}  // namespace

CompilationResult compile_to_system(const Polynomial& d) {
    if (d.is_zero()) throw std::invalid_argument("zero polynomial has no finite encoding");
    const unsigned p = d.vars();
    Builder b(p);

    std::vector<VarIndex> pos_terms, neg_terms;
    for (const auto& [mono, coeff] : d.terms()) {
        if (coeff > 0)
            pos_terms.push_back(b.term(mono, coeff));
        else
            neg_terms.push_back(b.term(mono, -coeff));
    }
    VarIndex up = b.sum(std::move(pos_terms));
    VarIndex uq = b.sum(std::move(neg_terms));
    if (up == uq) throw std::logic_error("P and Q collapsed to one variable");
    b.atoms.push_back(Atom::add(up, b.zero, uq));  // x_P + 0 = x_Q

    CompilationResult r;
    r.p = p;
    r.aux_plan = std::move(b.plan);
    r.system = System(b.next_var - 1, std::move(b.atoms));
    r.source = d;
    return r;
}

Assignment extend_witness(const CompilationResult& r, const Assignment& base) {
    if (base.size() != r.p) throw std::invalid_argument("base length != p");
    if (r.source.eval(base) != 0) throw std::invalid_argument("base does not solve d = 0");
    Assignment full(r.system.n());
    for (unsigned i = 0; i < r.p; ++i) full[i] = base[i];
    for (const auto& st : r.aux_plan) {
        Int v;
        switch (st.op) {
            case AuxStep::Op::Unit: v = 1; break;
            case AuxStep::Op::Zero: v = 0; break;
            case AuxStep::Op::Add: v = full[st.a - 1] + full[st.b - 1]; break;
            case AuxStep::Op::Mul: v = full[st.a - 1] * full[st.b - 1]; break;
        }
        full[st.target - 1] = std::move(v);
    }
    return full;
}

Polynomial dioph(const System& s) {
    if (s.empty()) throw std::invalid_argument("empty system");
    Polynomial total;
    for (const Atom& a : s.atoms()) {
        Polynomial res;
        switch (a.kind) {
            case Atom::Kind::Unit:
                res = Polynomial::variable(a.k) - Polynomial::constant(1);
                break;
            case Atom::Kind::Add:
                res = Polynomial::variable(a.i) + Polynomial::variable(a.j) -
                      Polynomial::variable(a.k);
                break;
            case Atom::Kind::Mul:
                res = Polynomial::variable(a.i) * Polynomial::variable(a.j) -
                      Polynomial::variable(a.k);
                break;
        }
        total += res * res;
    }
    return total;
}

SnLayout sn_layout(unsigned s, unsigned n) {
    if (s < 3) throw std::invalid_argument("phi needs at least 3 variables");
    if (n < 6 + 2 * s) throw std::invalid_argument("n must be at least 6 + 2s");
    SnLayout l;
    l.s = s;
    l.t_count = n / 2;
    l.z_count = n - l.t_count - 3 - s;
    l.w = s + l.z_count + l.t_count + 1;
    l.y = l.w + 1;
    l.u = l.y + 1;
    return l;
}

System build_sn(const System& phi, unsigned n) {
    const SnLayout l = sn_layout(phi.n(), n);
    std::vector<Atom> atoms = phi.atoms();
    for (unsigned i = 1; i <= l.z_count; ++i) atoms.push_back(Atom::unit(l.s + i));
    atoms.push_back(Atom::unit(l.t(1)));
    for (unsigned i = 2; i <= l.t_count; ++i) atoms.push_back(Atom::add(l.t(i - 1), l.t(1), l.t(i)));
    atoms.push_back(Atom::add(l.t(l.t_count), l.t(l.t_count), l.w));
    atoms.push_back(Atom::add(l.w, l.y, 1));
    if (n % 2 == 0)
        atoms.push_back(Atom::add(l.y, l.y, l.y));
    else
        atoms.push_back(Atom::unit(l.y));
    atoms.push_back(Atom::add(2, l.t(1), l.u));
    return System(n, std::move(atoms));
}

}  // namespace ensys
