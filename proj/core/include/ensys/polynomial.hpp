#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ensys/system.hpp"

namespace ensys {

// Exponent vector for x_1..x_p; index 0 is x_1, trailing zeros stripped.
using Monomial = std::vector<unsigned>;

// Sparse integer polynomial. Zero coefficients are never stored.
class Polynomial {
public:
    Polynomial() = default;

    static Polynomial constant(Int c);
    static Polynomial variable(VarIndex i);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Smallest p such that the polynomial lives in Z[x_1..x_p].
    unsigned vars() const;
    unsigned degree() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial operator*(const Polynomial& o) const;
    Polynomial pow(unsigned e) const;

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    // x may be longer than vars(); extra coordinates are ignored.
    Int eval(const Assignment& x) const;
    // int64 fast path; nullopt on any intermediate overflow.
    std::optional<std::int64_t> eval_i64(const std::vector<std::int64_t>& x) const;

    // Terms ordered by total degree desc, then exponent vector lex desc.
    std::string str() const;

    const std::map<Monomial, Int>& terms() const { return terms_; }

private:
    std::map<Monomial, Int> terms_;
};

}  // namespace ensys
