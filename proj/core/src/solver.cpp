#include "ensys/solver.hpp"

#include <algorithm>
#include <cassert>

namespace ensys {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Complete: return "complete";
        case SolveStatus::CapReached: return "cap-reached";
        case SolveStatus::BudgetExhausted: return "budget-exhausted";
    }
    return "?";
}

namespace {

// 1-based assignment state with an undo trail.
struct SearchState {
    const System& sys;
    const SolveBudget& budget;
    std::vector<Int> ub;                  // inclusive upper bound per variable
    std::vector<std::optional<Int>> val;  // val[0] unused
    std::vector<std::vector<unsigned>> touching;
    std::vector<VarIndex> trail;
    std::vector<VarIndex> queue;  // vars assigned since the last propagate

    SearchState(const System& s, const SolveBudget& b) : sys(s), budget(b) {
        unsigned n = s.n();
        ub.assign(n + 1, b.bound);
        if (!b.var_bounds.empty()) {
            if (b.var_bounds.size() != n) throw std::invalid_argument("var_bounds size != n");
            for (unsigned v = 1; v <= n; ++v) ub[v] = b.var_bounds[v - 1];
        }
        for (unsigned v = 1; v <= n; ++v)
            if (ub[v] < 0) throw std::invalid_argument("negative variable bound");
        val.assign(n + 1, std::nullopt);
        touching.assign(n + 1, {});
        for (unsigned ai = 0; ai < s.atoms().size(); ++ai) {
            const Atom& a = s.atoms()[ai];
            touching[a.k].push_back(ai);
            if (a.kind != Atom::Kind::Unit) {
                if (a.i != a.k) touching[a.i].push_back(ai);
                if (a.j != a.k && a.j != a.i) touching[a.j].push_back(ai);
            }
        }
    }

    bool assign(VarIndex v, Int x) {
        if (val[v]) return *val[v] == x;
        if (x < 0 || x > ub[v]) return false;
        val[v] = std::move(x);
        trail.push_back(v);
        queue.push_back(v);
        return true;
    }

    void undo_to(std::size_t mark) {
        while (trail.size() > mark) {
            val[trail.back()].reset();
            trail.pop_back();
        }
        queue.clear();
    }

    // One atom against the current partial assignment. Solves for a single
    // remaining unknown where the equation pins it down; false on conflict.
    bool check_atom(const Atom& a) {
        if (a.kind == Atom::Kind::Unit) return assign(a.k, 1);

        if (a.kind == Atom::Kind::Add) {
            // x_i + x_j - x_k = 0 is linear; fold knowns into r, the open
            // variable (at most one, possibly repeated) into coeff.
            Int r = 0;
            VarIndex unknown = 0;
            int coeff = 0;
            bool two_unknowns = false;
            auto fold = [&](VarIndex v, int c) {
                if (val[v]) {
                    r += c * *val[v];
                } else if (unknown == 0 || unknown == v) {
                    unknown = v;
                    coeff += c;
                } else {
                    two_unknowns = true;
                }
            };
            fold(a.i, 1);
            fold(a.j, 1);
            fold(a.k, -1);
            if (two_unknowns) return true;
            if (unknown == 0 || coeff == 0) return r == 0;
            Int num = -r;
            if (num % coeff != 0) return false;
            return assign(unknown, num / coeff);
        }

        // Mul: x_i * x_j = x_k.
        const bool ki = val[a.i].has_value(), kj = val[a.j].has_value(), kk = val[a.k].has_value();
        if (ki && kj) return assign(a.k, *val[a.i] * *val[a.j]);

        if (ki || kj) {  // one factor known
            const VarIndex ovar = ki ? a.j : a.i;
            const Int f = ki ? *val[a.i] : *val[a.j];
            if (f == 0) return assign(a.k, 0);
            if (ovar == a.k) {  // f * x_o = x_o with f != 0
                if (f == 1) return true;
                return assign(ovar, 0);
            }
            if (!kk) return true;
            const Int& prod = *val[a.k];
            if (prod % f != 0) return false;
            return assign(ovar, prod / f);
        }

        if (!kk) return true;  // everything open
        if (a.i == a.j) {      // t^2 = known product
            const Int& prod = *val[a.k];
            if (mpz_perfect_square_p(prod.get_mpz_t()) == 0) return false;
            Int root;
            mpz_sqrt(root.get_mpz_t(), prod.get_mpz_t());
            return assign(a.i, std::move(root));
        }
        return true;  // two distinct open factors: wait for one
    }

    bool propagate() {
        while (!queue.empty()) {
            VarIndex v = queue.back();
            queue.pop_back();
            for (unsigned ai : touching[v])
                if (!check_atom(sys.atoms()[ai])) return false;
        }
        return true;
    }

    bool initial_propagate() {
        queue.clear();
        if (!budget.pinned.empty()) {
            if (budget.pinned.size() != sys.n()) throw std::invalid_argument("pinned size != n");
            for (unsigned v = 1; v <= sys.n(); ++v)
                if (budget.pinned[v - 1] && !assign(v, *budget.pinned[v - 1])) return false;
        }
        for (const Atom& a : sys.atoms())
            if (!check_atom(a)) return false;
        return propagate();
    }
};

struct Search {
    SearchState st;
    SolveResult res;

    Search(const System& s, const SolveBudget& b) : st(s, b) {}

    // false aborts the whole search (cap or node budget hit).
    bool dfs(VarIndex from) {
        VarIndex v = from;
        while (v <= st.sys.n() && st.val[v]) ++v;
        if (v > st.sys.n()) {
            Assignment sol(st.sys.n());
            for (unsigned u = 1; u <= st.sys.n(); ++u) sol[u - 1] = *st.val[u];
            res.solutions.push_back(std::move(sol));
            if (res.solutions.size() >= st.budget.cap) {
                res.status = SolveStatus::CapReached;
                return false;
            }
            return true;
        }
        for (Int x = 0; x <= st.ub[v]; ++x) {
            if (++res.nodes > st.budget.node_limit) {
                res.status = SolveStatus::BudgetExhausted;
                return false;
            }
            std::size_t mark = st.trail.size();
            if (st.assign(v, x) && st.propagate()) {
                if (!dfs(v + 1)) return false;
            }
            st.undo_to(mark);
        }
        return true;
    }
};

}  // namespace

SolveResult solve_in_box(const System& s, const SolveBudget& budget) {
    if (budget.bound < 0) throw std::invalid_argument("negative bound");
    Search search(s, budget);
    if (search.st.budget.cap == 0) {
        search.res.status = SolveStatus::CapReached;
        return std::move(search.res);
    }
    if (search.st.initial_propagate()) search.dfs(1);
    return std::move(search.res);
}

namespace {

// Visits every point of [0, B]^p until the callback returns false.
// Callback gets int64 coordinates plus an on-demand mpz copy.
template <typename F>
void scan_box(unsigned p, const Int& B, F&& visit) {
    if (B < 0) return;
    if (p == 0) {
        visit(std::vector<std::int64_t>{});
        return;
    }
    if (!B.fits_slong_p()) throw std::invalid_argument("box too large to scan");
    const std::int64_t b = B.get_si();
    std::vector<std::int64_t> pt(p, 0);
    for (;;) {
        if (!visit(pt)) return;
        unsigned d = 0;
        while (d < p && pt[d] == b) pt[d++] = 0;
        if (d == p) return;
        ++pt[d];
    }
}

Int eval_point(const Polynomial& q, const std::vector<std::int64_t>& pt) {
    if (auto fast = q.eval_i64(pt)) return Int(*fast);
    Assignment x(pt.size());
    for (std::size_t t = 0; t < pt.size(); ++t) x[t] = Int(pt[t]);
    return q.eval(x);
}

}  // namespace

Oracle bounded_search_oracle(const Int& B) {
    return [B](const Polynomial& q) {
        bool found = false;
        scan_box(q.vars(), B, [&](const std::vector<std::int64_t>& pt) {
            if (auto fast = q.eval_i64(pt)) {
                if (*fast == 0) found = true;
            } else if (eval_point(q, pt) == 0) {
                found = true;
            }
            return !found;
        });
        return found;
    };
}

Polynomial padded_equation(const Polynomial& d, unsigned m) {
    unsigned p = d.vars();
    Polynomial lin = Polynomial::constant(m);
    lin += Polynomial::variable(p + 1);
    for (unsigned v = 1; v <= p; ++v) lin -= Polynomial::variable(v);
    return lin * lin + d * d;
}

std::optional<ConditionalSolutions> find_all_conditional(const Polynomial& d, const Oracle& oracle,
                                                         unsigned max_m) {
    unsigned m = 0;
    while (oracle(padded_equation(d, m))) {
        if (m >= max_m) return std::nullopt;
        ++m;
    }
    ConditionalSolutions out;
    out.m = m;
    if (m > 0) {
        scan_box(d.vars(), Int(m) - 1, [&](const std::vector<std::int64_t>& pt) {
            if (eval_point(d, pt) == 0) {
                Assignment x(pt.size());
                for (std::size_t t = 0; t < pt.size(); ++t) x[t] = Int(pt[t]);
                out.solutions.push_back(std::move(x));
            }
            return true;
        });
        std::sort(out.solutions.begin(), out.solutions.end());
    }
    return out;
}

std::optional<unsigned> bound_conditional(const Polynomial& d, const Oracle& oracle,
                                          unsigned max_m) {
    unsigned m = 0;
    while (oracle(padded_equation(d, m))) {
        if (m >= max_m) return std::nullopt;
        ++m;
    }
    return m;
}

}  // namespace ensys
