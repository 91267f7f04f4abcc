#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ensys/system.hpp"

namespace ensys {

// Enumeration mode: kappa(k) keeps systems with fewer than k box-solutions,
// omega1 keeps every solvable system.
struct Mode {
    enum class Kind : std::uint8_t { Kappa, Omega1 };
    Kind kind = Kind::Kappa;
    unsigned kappa = 2;

    static Mode kappa_mode(unsigned k) {
        if (k < 2) throw std::invalid_argument("kappa must be at least 2");
        return Mode{Kind::Kappa, k};
    }
    static Mode omega1() { return Mode{Kind::Omega1, 0}; }

    std::string str() const;                             // "kappa:2", "omega1"
    static std::optional<Mode> parse(std::string_view);  // inverse of str

    friend bool operator==(const Mode&, const Mode&) = default;
};

// Every atomic equation satisfied by x is satisfied by y.
bool is_duplicate(const Assignment& y, const Assignment& x);

// Raised when a requested scan exceeds the configured combinatorial guard.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Largest max-coordinate over tuples of [0,m]^n whose only duplicate
// inside the box is the tuple itself.
std::uint64_t beta2(unsigned n, std::uint64_t m, unsigned workers = 1);

// Smallest b such that every S subseteq E_n with at least one and fewer
// than kappa solutions in [0,m]^n has a solution in [0,b]^n. Witness-set
// method: a non-empty A subseteq box with |A| < kappa qualifies iff the
// solutions of the intersection of its member types, within the box, are
// exactly A; the result maximizes min max-coordinate over qualifying A.
std::uint64_t beta_kappa(unsigned n, std::uint64_t m, unsigned kappa, unsigned workers = 1);

// Tuples survive unless some duplicate has a strictly smaller max
// coordinate; returns the largest max-coordinate over survivors.
std::uint64_t omega1_value(unsigned n, std::uint64_t m, unsigned workers = 1);

std::uint64_t beta_value(unsigned n, std::uint64_t m, const Mode& mode, unsigned workers = 1);

struct BetaRecord {
    unsigned n = 0;
    Mode mode;
    std::uint64_t m = 0;
    std::uint64_t value = 0;
};

struct CacheError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Resumable sequence of BetaRecord for m = 0, 1, 2, ...
// With a cache attached, previously written records replay without
// recomputation and new records append one JSON line each, flushed
// immediately so interruption never loses completed work.
class LimitStream {
public:
    LimitStream(unsigned n, Mode mode, unsigned workers = 1);
    ~LimitStream();
    LimitStream(const LimitStream&) = delete;
    LimitStream& operator=(const LimitStream&) = delete;

    // Must precede the first next(). Validates that the file holds records
    // for exactly this (n, mode) with m contiguous from 0; anything else is
    // a CacheError unless restart, which wipes the file instead.
    void attach_cache(const std::string& path, bool restart = false);

    BetaRecord next();

    std::uint64_t next_m() const { return next_m_; }
    // Length of the run of most recent records sharing the latest value.
    std::uint64_t stable_for() const { return stable_for_; }

private:
    struct Impl;
    unsigned n_;
    Mode mode_;
    unsigned workers_;
    std::uint64_t next_m_ = 0;
    std::uint64_t stable_for_ = 0;
    std::optional<std::uint64_t> last_value_;
    std::vector<std::uint64_t> replay_;
    std::size_t replay_pos_ = 0;
    Impl* io_ = nullptr;

    BetaRecord emit(std::uint64_t value, bool fresh);
};

}  // namespace ensys
