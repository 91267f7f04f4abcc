#include "ensys/verifier.hpp"

#include "ensys/enumerator.hpp"

namespace ensys {

namespace {

bool small_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Int pow2(unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

Int ipow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

}  // namespace

Primality lucas_lehmer(unsigned p) {
    if (p < 3 || !small_prime(p))
        throw std::invalid_argument("exponent must be an odd prime, got " + std::to_string(p));
    const Int mersenne = pow2(p) - 1;
    Int s = 4;
    for (unsigned i = 0; i + 2 < p; ++i) {
        s = s * s - 2;
        s %= mersenne;
    }
    return s == 0 ? Primality::Prime : Primality::Composite;
}

std::optional<Family> parse_family(std::string_view name) {
    if (name == "intro1") return Family::Intro1;
    if (name == "intro2") return Family::Intro2;
    if (name == "thm2") return Family::Thm2;
    if (name == "thm3") return Family::Thm3;
    if (name == "thm4") return Family::Thm4;
    if (name == "uncond") return Family::Uncond;
    return std::nullopt;
}

std::string_view family_name(Family f) {
    switch (f) {
        case Family::Intro1: return "intro1";
        case Family::Intro2: return "intro2";
        case Family::Thm2: return "thm2";
        case Family::Thm3: return "thm3";
        case Family::Thm4: return "thm4";
        case Family::Uncond: return "uncond";
    }
    return "?";
}

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument(what);
}

std::vector<Atom> squaring_chain(unsigned n) {  // x_i * x_i = x_{i+1}, i = 1..n
    std::vector<Atom> atoms;
    for (unsigned i = 1; i <= n; ++i) atoms.push_back(Atom::mul(i, i, i + 1));
    return atoms;
}

bool mersenne_prime(unsigned n) {
    if (n == 2) return true;  // 3; below the Lucas-Lehmer domain
    if (n < 2 || !small_prime(n)) return false;
    return lucas_lehmer(n) == Primality::Prime;
}

// 1 + sum_{k=2..M} C(M,k) * q^(k-2), by the exact binomial recurrence.
Int tail_sum(unsigned long M, const Int& q) {
    Int acc = 1, c = Int(M) * (M - 1) / 2, pw = 1;
    for (unsigned long k = 2; k <= M; ++k) {
        acc += c * pw;
        pw *= q;
        c *= M - k;
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), k + 1);
    }
    return acc;
}

}  // namespace

System family_system(Family f, unsigned n) {
    std::vector<Atom> a;
    switch (f) {
        case Family::Intro1:
            require(n >= 3, "intro1 needs n >= 3");
            a.push_back(Atom::unit(1));
            a.push_back(Atom::add(1, 1, 2));
            for (unsigned i = 2; i + 1 <= n; ++i) a.push_back(Atom::mul(i, i, i + 1));
            return System(n, std::move(a));
        case Family::Intro2:
            require(n >= 2, "intro2 needs n >= 2");
            a.push_back(Atom::add(1, 1, 2));
            a.push_back(Atom::mul(1, 1, 2));
            for (unsigned i = 2; i + 1 <= n; ++i) a.push_back(Atom::mul(i, i, i + 1));
            return System(n, std::move(a));
        case Family::Thm2:
            require(mersenne_prime(n), "thm2 needs 2^n - 1 prime");
            a = squaring_chain(n);
            a.push_back(Atom::unit(n + 2));
            a.push_back(Atom::add(n + 3, n + 2, n + 4));
            a.push_back(Atom::add(n + 4, n + 2, n + 5));
            a.push_back(Atom::add(n + 5, n + 2, 1));
            a.push_back(Atom::mul(n + 5, n + 5, n + 6));
            a.push_back(Atom::mul(n + 6, n + 7, n + 8));
            a.push_back(Atom::add(n + 8, 1, n + 1));
            return System(n + 8, std::move(a));
        case Family::Thm3:
            require(n >= 1 && n <= 4, "thm3 needs n in 1..4 (known Fermat primes)");
            a = squaring_chain(n);
            a.push_back(Atom::unit(n + 2));
            a.push_back(Atom::add(1, n + 2, n + 3));
            a.push_back(Atom::add(n + 3, n + 2, n + 4));
            a.push_back(Atom::add(n + 1, n + 2, n + 5));
            a.push_back(Atom::mul(n + 4, n + 6, n + 5));
            return System(n + 6, std::move(a));
        case Family::Thm4:
            require(n >= 1, "thm4 needs n >= 1");
            a = squaring_chain(n);
            a.push_back(Atom::mul(1, n + 1, n + 2));
            a.push_back(Atom::unit(n + 3));
            a.push_back(Atom::add(n + 3, n + 3, n + 4));
            a.push_back(Atom::add(n + 4, n + 4, n + 5));
            a.push_back(Atom::add(n + 5, n + 3, 1));
            a.push_back(Atom::mul(n + 6, n + 6, n + 7));
            a.push_back(Atom::mul(n + 8, n + 8, n + 9));
            a.push_back(Atom::add(n + 9, n + 3, n + 10));
            a.push_back(Atom::mul(n + 2, n + 7, n + 10));
            return System(n + 10, std::move(a));
        case Family::Uncond:
            require(n >= 1, "uncond needs n >= 1");
            a = squaring_chain(n);
            a.push_back(Atom::unit(n + 2));
            a.push_back(Atom::add(n + 3, n + 2, 1));
            a.push_back(Atom::add(n + 4, n + 2, n + 3));
            a.push_back(Atom::mul(n + 4, n + 5, n + 1));
            return System(n + 5, std::move(a));
    }
    throw std::invalid_argument("unknown family");
}

namespace {

FamilyWitness checked(Family f, unsigned n, System sys, Assignment sol) {
    FamilyWitness w{f, n, std::move(sys), std::move(sol), 0};
    if (!satisfies(w.system, w.solution))
        throw VerifyError(std::string(family_name(f)) + "(" + std::to_string(n) +
                          "): closed-form solution does not satisfy the system");
    w.claimed_max = max_coord(w.solution);
    return w;
}

void tower(Assignment& x, const Int& base, unsigned upto) {  // x_i = base^(2^(i-1))
    x[0] = base;
    for (unsigned i = 1; i < upto; ++i) x[i] = x[i - 1] * x[i - 1];
}

}  // namespace

PellSolution pell_minimal(unsigned k) {
    if (k > 8) throw BudgetError("pell_minimal limited to k <= 8");
    unsigned long e = 1;
    for (unsigned i = 0; i < k; ++i) e *= 5;
    // (2 + sqrt5)^e = a + b*sqrt5 by binary powering
    Int a = 1, b = 0, pa = 2, pb = 1;
    for (unsigned long bits = e; bits; bits >>= 1) {
        if (bits & 1) {
            Int na = a * pa + 5 * b * pb;
            Int nb = a * pb + b * pa;
            a = std::move(na);
            b = std::move(nb);
        }
        Int sa = pa * pa + 5 * pb * pb;
        Int sb = 2 * pa * pb;
        pa = std::move(sa);
        pb = std::move(sb);
    }
    PellSolution s;
    s.k = k;
    s.x = std::move(a);
    Int five_k = ipow(5, k);
    if (b % five_k != 0) throw VerifyError("pell_minimal: y is not integral");
    s.y = b / five_k;
    if (s.x * s.x + 1 != ipow(5, 2 * k + 1) * s.y * s.y)
        throw VerifyError("pell_minimal: identity check failed");
    return s;
}

PellSolution pell_next(const PellSolution& s) {
    const Int N = ipow(5, 2 * s.k + 1);
    PellSolution t;
    t.k = s.k;
    t.x = s.x * (s.x * s.x + 3 * N * s.y * s.y);
    t.y = s.y * (3 * s.x * s.x + N * s.y * s.y);
    if (t.x * t.x + 1 != N * t.y * t.y) throw VerifyError("pell_next: identity check failed");
    if (t.x <= s.x) throw VerifyError("pell_next: not strictly larger");
    return t;
}

FamilyWitness family_witness(Family f, unsigned n) {
    System sys = family_system(f, n);
    Assignment x(sys.n());
    switch (f) {
        case Family::Intro1: {
            if (n > 20) throw BudgetError("intro1 witness limited to n <= 20");
            x[0] = 1;
            x[1] = 2;
            for (unsigned i = 2; i < n; ++i) x[i] = x[i - 1] * x[i - 1];
            break;
        }
        case Family::Intro2: {
            if (n > 20) throw BudgetError("intro2 witness limited to n <= 20");
            tower(x, 2, n);
            break;
        }
        case Family::Thm2: {
            if (n > 13) throw BudgetError("thm2 witness limited to n <= 13");
            const unsigned long M = 1ul << n;
            const Int q = pow2(n) - 1;  // the Mersenne prime
            tower(x, q + 1, n + 1);
            x[n + 1] = 1;
            x[n + 2] = q - 2;
            x[n + 3] = q - 1;
            x[n + 4] = q;
            x[n + 5] = q * q;
            x[n + 6] = tail_sum(M, q);
            x[n + 7] = x[n] - x[0];
            break;
        }
        case Family::Thm3: {
            const unsigned long M = 1ul << n;
            const Int fermat = pow2(M) + 1;
            tower(x, fermat - 2, n + 1);
            x[n + 1] = 1;
            x[n + 2] = fermat - 1;
            x[n + 3] = fermat;
            x[n + 4] = x[n] + 1;
            Int acc = 1;  // 1 + sum_{k=1..M} C(M,k) F^(k-1) (-2)^(M-k)
            Int c = M;
            for (unsigned long k = 1; k <= M; ++k) {
                acc += c * ipow(fermat, k - 1) * ipow(-2, M - k);
                c *= M - k;
                mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), k + 1);
            }
            x[n + 5] = std::move(acc);
            break;
        }
        case Family::Thm4: {
            if (n > 4) throw BudgetError("thm4 witness limited to n <= 4");
            const PellSolution pell = pell_minimal(1u << (n - 1));
            tower(x, 5, n + 1);
            x[n + 1] = x[0] * x[n];
            x[n + 2] = 1;
            x[n + 3] = 2;
            x[n + 4] = 4;
            x[n + 5] = pell.y;
            x[n + 6] = pell.y * pell.y;
            x[n + 7] = pell.x;
            x[n + 8] = pell.x * pell.x;
            x[n + 9] = x[n + 8] + 1;
            break;
        }
        case Family::Uncond: {
            if (n > 8) throw BudgetError("uncond witness limited to n <= 8");
            const unsigned long M = 1ul << n;
            tower(x, pow2(M) + 2, n + 1);
            x[n + 1] = 1;
            x[n + 2] = pow2(M) + 1;
            x[n + 3] = pow2(M);
            x[n + 4] = ipow(pow2(M - 1) + 1, M);
            break;
        }
    }
    return checked(f, n, std::move(sys), std::move(x));
}

std::vector<Assignment> uncond_all_solutions(unsigned n) {
    if (n < 1 || n > 4) throw BudgetError("uncond enumeration limited to n in 1..4");
    const System sys = family_system(Family::Uncond, n);
    const unsigned long M = 1ul << n;
    std::vector<Assignment> out;
    for (unsigned long j = 0; j <= M; ++j) {  // x_{n+4} = 2^j divides 2^M
        Assignment x(sys.n());
        const Int d = pow2(j);
        tower(x, d + 2, n + 1);
        x[n + 1] = 1;
        x[n + 2] = d + 1;
        x[n + 3] = d;
        if (x[n] % d != 0) throw VerifyError("uncond: non-integral cofactor");
        x[n + 4] = x[n] / d;
        if (!satisfies(sys, x)) throw VerifyError("uncond: enumerated tuple fails the system");
        out.push_back(std::move(x));
    }
    return out;
}

bool binomial_identity_check(unsigned M, const Int& x) {
    if (M < 1 || M > 8192) throw BudgetError("binomial check limited to M in 1..8192");
    const Int lhs = ipow(x + 1, M);
    Int rhs = 1 + M * x;
    if (M >= 2) rhs += x * x * (tail_sum(M, x) - 1);
    return lhs == rhs;
}

}  // namespace ensys
