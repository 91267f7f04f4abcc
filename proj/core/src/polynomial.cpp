#include "ensys/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ensys {

namespace {

void trim(Monomial& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

unsigned total_degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), 0u);
}

}  // namespace

Polynomial Polynomial::constant(Int c) {
    Polynomial p;
    if (c != 0) p.terms_.emplace(Monomial{}, std::move(c));
    return p;
}

Polynomial Polynomial::variable(VarIndex i) {
    if (i == 0) throw std::invalid_argument("variable indices start at 1");
    Polynomial p;
    Monomial m(i, 0);
    m[i - 1] = 1;
    p.terms_.emplace(std::move(m), 1);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

unsigned Polynomial::vars() const {
    unsigned p = 0;
    for (const auto& [m, c] : terms_) p = std::max(p, static_cast<unsigned>(m.size()));
    return p;
}

unsigned Polynomial::degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
    return d;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, -c);
        } else {
            it->second -= c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m(std::max(ma.size(), mb.size()), 0);
            for (std::size_t t = 0; t < ma.size(); ++t) m[t] += ma[t];
            for (std::size_t t = 0; t < mb.size(); ++t) m[t] += mb[t];
            trim(m);
            auto it = r.terms_.find(m);
            if (it == r.terms_.end()) {
                r.terms_.emplace(std::move(m), ca * cb);
            } else {
                it->second += ca * cb;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    }
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r = constant(1);
    Polynomial base = *this;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

Int Polynomial::eval(const Assignment& x) const {
    Int total = 0;
    for (const auto& [m, c] : terms_) {
        Int t = c;
        for (std::size_t v = 0; v < m.size(); ++v) {
            if (m[v] == 0) continue;
            if (v >= x.size()) throw std::invalid_argument("assignment too short for polynomial");
            Int p;
            mpz_pow_ui(p.get_mpz_t(), x[v].get_mpz_t(), m[v]);
            t *= p;
        }
        total += t;
    }
    return total;
}

std::optional<std::int64_t> Polynomial::eval_i64(const std::vector<std::int64_t>& x) const {
    std::int64_t total = 0;
    for (const auto& [m, c] : terms_) {
        if (!c.fits_slong_p()) return std::nullopt;
        std::int64_t t = c.get_si();
        for (std::size_t v = 0; v < m.size(); ++v) {
            if (m[v] == 0) continue;
            if (v >= x.size()) throw std::invalid_argument("assignment too short for polynomial");
            for (unsigned e = 0; e < m[v]; ++e)
                if (__builtin_mul_overflow(t, x[v], &t)) return std::nullopt;
        }
        if (__builtin_add_overflow(total, t, &total)) return std::nullopt;
    }
    return total;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";

    std::vector<const std::pair<const Monomial, Int>*> order;
    order.reserve(terms_.size());
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
        unsigned da = total_degree(a->first), db = total_degree(b->first);
        if (da != db) return da > db;
        return a->first > b->first;
    });

    std::ostringstream os;
    bool first = true;
    for (const auto* t : order) {
        const auto& [m, c] = *t;
        Int a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool need_coeff = a != 1 || m.empty();
        if (need_coeff) os << a.get_str();
        bool printed = need_coeff;
        for (std::size_t v = 0; v < m.size(); ++v) {
            if (m[v] == 0) continue;
            if (printed) os << "*";
            os << "x" << (v + 1);
            if (m[v] > 1) os << "^" << m[v];
            printed = true;
        }
    }
    return os.str();
}

}  // namespace ensys
