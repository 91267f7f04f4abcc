#include "ensys/enumerator.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <thread>

#include <json.hpp>

namespace ensys {

std::string Mode::str() const {
    if (kind == Kind::Omega1) return "omega1";
    return "kappa:" + std::to_string(kappa);
}

std::optional<Mode> Mode::parse(std::string_view s) {
    if (s == "omega1") return omega1();
    if (s.rfind("kappa:", 0) == 0) {
        unsigned k = 0;
        auto body = s.substr(6);
        auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), k);
        if (ec == std::errc{} && ptr == body.data() + body.size() && k >= 2)
            return kappa_mode(k);
    }
    return std::nullopt;
}

bool is_duplicate(const Assignment& y, const Assignment& x) {
    if (y.size() != x.size()) throw std::invalid_argument("tuple lengths differ");
    const unsigned n = static_cast<unsigned>(x.size());
    for (unsigned i = 0; i < n; ++i)
        if (x[i] == 1 && y[i] != 1) return false;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i; j < n; ++j) {
            Int xs = x[i] + x[j], xp = x[i] * x[j];
            for (unsigned k = 0; k < n; ++k) {
                if (xs == x[k] && y[i] + y[j] != y[k]) return false;
                if (xp == x[k] && y[i] * y[j] != y[k]) return false;
            }
        }
    return true;
}

namespace {

constexpr std::uint64_t kMaxBoxPoints = 1u << 17;       // pairwise scans are quadratic
constexpr std::uint64_t kMaxWitnessSubsets = 50'000'000;  // beta_kappa guard

// Per-point satisfied-atom bitmask over the canonical atoms of E_n,
// plus the max coordinate. bits[t] superset of bits[s] means t duplicates s.
struct BoxTypes {
    std::uint64_t count = 0;
    unsigned words = 0;
    std::vector<std::uint64_t> bits;  // count * words
    std::vector<std::uint64_t> maxc;

    const std::uint64_t* row(std::uint64_t s) const { return bits.data() + s * words; }

    bool superset(std::uint64_t t, std::uint64_t s) const {
        const std::uint64_t* a = row(t);
        const std::uint64_t* b = row(s);
        for (unsigned w = 0; w < words; ++w)
            if ((a[w] & b[w]) != b[w]) return false;
        return true;
    }
};

BoxTypes build_box_types(unsigned n, std::uint64_t m) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    if (m > (1u << 20)) throw BudgetError("box edge too large");
    std::uint64_t count = 1;
    for (unsigned d = 0; d < n; ++d) {
        count *= m + 1;
        if (count > kMaxBoxPoints) throw BudgetError("box has too many points to scan");
    }
    const unsigned atom_count = n + n * n * (n + 1);
    BoxTypes box;
    box.count = count;
    box.words = (atom_count + 63) / 64;
    box.bits.assign(count * box.words, 0);
    box.maxc.assign(count, 0);

    std::vector<std::uint64_t> x(n);
    for (std::uint64_t s = 0; s < count; ++s) {
        std::uint64_t r = s;
        std::uint64_t mc = 0;
        for (unsigned d = 0; d < n; ++d) {
            x[d] = r % (m + 1);
            r /= m + 1;
            mc = std::max(mc, x[d]);
        }
        box.maxc[s] = mc;
        std::uint64_t* row = box.bits.data() + s * box.words;
        unsigned bit = 0;
        auto put = [&](bool sat) {
            if (sat) row[bit >> 6] |= 1ull << (bit & 63);
            ++bit;
        };
        for (unsigned k = 0; k < n; ++k) put(x[k] == 1);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = i; j < n; ++j)
                for (unsigned k = 0; k < n; ++k) {
                    put(x[i] + x[j] == x[k]);
                    put(x[i] * x[j] == x[k]);
                }
        if (bit != atom_count) throw std::logic_error("atom count mismatch");
    }
    return box;
}

// Chunked max-reduction over point indices; the max is order-independent,
// so any worker count yields the same value.
template <typename PerPoint>
std::uint64_t parallel_max(std::uint64_t count, unsigned workers, PerPoint&& value_at) {
    workers = std::max(1u, workers);
    if (workers == 1 || count < 2 * workers) {
        std::uint64_t best = 0;
        for (std::uint64_t s = 0; s < count; ++s) best = std::max(best, value_at(s));
        return best;
    }
    std::vector<std::uint64_t> best(workers, 0);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            const std::uint64_t lo = w * chunk;
            const std::uint64_t hi = std::min(count, lo + chunk);
            for (std::uint64_t s = lo; s < hi; ++s) best[w] = std::max(best[w], value_at(s));
        });
    }
    for (auto& t : pool) t.join();
    std::uint64_t out = 0;
    for (auto b : best) out = std::max(out, b);
    return out;
}

}  // namespace

std::uint64_t beta2(unsigned n, std::uint64_t m, unsigned workers) {
    const BoxTypes box = build_box_types(n, m);
    return parallel_max(box.count, workers, [&](std::uint64_t s) -> std::uint64_t {
        for (std::uint64_t t = 0; t < box.count; ++t)
            if (t != s && box.superset(t, s)) return 0;  // not lonely
        return box.maxc[s];
    });
}

std::uint64_t omega1_value(unsigned n, std::uint64_t m, unsigned workers) {
    const BoxTypes box = build_box_types(n, m);
    return parallel_max(box.count, workers, [&](std::uint64_t s) -> std::uint64_t {
        for (std::uint64_t t = 0; t < box.count; ++t)
            if (box.maxc[t] < box.maxc[s] && box.superset(t, s)) return 0;
        return box.maxc[s];
    });
}

namespace {

// Value of one qualifying witness set, 0 if the set does not qualify.
// members must be sorted. Qualifies iff the points satisfying the
// intersection of the members' types are exactly the members.
std::uint64_t witness_value(const BoxTypes& box, const std::vector<std::uint64_t>& members) {
    std::vector<std::uint64_t> t(box.words, ~0ull);
    std::uint64_t value = ~0ull;
    for (auto s : members) {
        const std::uint64_t* row = box.row(s);
        for (unsigned w = 0; w < box.words; ++w) t[w] &= row[w];
        value = std::min(value, box.maxc[s]);
    }
    std::size_t at = 0;
    for (std::uint64_t y = 0; y < box.count; ++y) {
        const std::uint64_t* row = box.row(y);
        bool sat = true;
        for (unsigned w = 0; w < box.words && sat; ++w) sat = (row[w] & t[w]) == t[w];
        if (!sat) continue;
        if (at == members.size() || members[at] != y) return 0;  // stray solution
        ++at;
    }
    return at == members.size() ? value : 0;
}

// All sorted subsets of {from..count-1} of size <= slots, prefixed by `members`.
std::uint64_t best_over_subsets(const BoxTypes& box, std::vector<std::uint64_t>& members,
                                std::uint64_t from, unsigned slots) {
    std::uint64_t best = 0;
    for (std::uint64_t s = from; s < box.count; ++s) {
        members.push_back(s);
        best = std::max(best, witness_value(box, members));
        if (slots > 1) best = std::max(best, best_over_subsets(box, members, s + 1, slots - 1));
        members.pop_back();
    }
    return best;
}

std::uint64_t subset_count_guard(std::uint64_t count, unsigned size) {
    // sum over sizes 1..size of C(count, s), saturating
    std::uint64_t total = 0, c = 1;
    for (unsigned s = 1; s <= size && s <= count; ++s) {
        if (c > kMaxWitnessSubsets * s) return kMaxWitnessSubsets + 1;
        c = c * (count - s + 1) / s;  // exact: C(count,s-1)*(count-s+1) is divisible by s
        total += c;
        if (total > kMaxWitnessSubsets) return total;
    }
    return total;
}

}  // namespace

std::uint64_t beta_kappa(unsigned n, std::uint64_t m, unsigned kappa, unsigned workers) {
    if (kappa < 2) throw std::invalid_argument("kappa must be at least 2");
    if (kappa == 2) return beta2(n, m, workers);
    const BoxTypes box = build_box_types(n, m);
    const unsigned size = kappa - 1;
    if (subset_count_guard(box.count, size) > kMaxWitnessSubsets)
        throw BudgetError("witness-set enumeration too large");
    // Parallel over the first (smallest) member; each task owns its suffix.
    return parallel_max(box.count, workers, [&](std::uint64_t s) -> std::uint64_t {
        std::vector<std::uint64_t> members{s};
        std::uint64_t best = witness_value(box, members);
        if (size > 1) best = std::max(best, best_over_subsets(box, members, s + 1, size - 1));
        return best;
    });
}

std::uint64_t beta_value(unsigned n, std::uint64_t m, const Mode& mode, unsigned workers) {
    if (mode.kind == Mode::Kind::Omega1) return omega1_value(n, m, workers);
    return beta_kappa(n, m, mode.kappa, workers);
}

struct LimitStream::Impl {
    std::string path;
    std::ofstream out;
};

LimitStream::LimitStream(unsigned n, Mode mode, unsigned workers)
    : n_(n), mode_(mode), workers_(std::max(1u, workers)) {
    if (n == 0) throw std::invalid_argument("n must be positive");
}

LimitStream::~LimitStream() { delete io_; }

void LimitStream::attach_cache(const std::string& path, bool restart) {
    if (next_m_ != 0) throw std::logic_error("attach_cache after streaming started");
    if (io_) throw std::logic_error("cache already attached");

    if (!restart) {
        std::ifstream in(path);
        std::string line;
        std::size_t line_no = 0;
        while (in && std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
            auto bad = [&](const std::string& why) {
                return CacheError(path + ":" + std::to_string(line_no) + ": " + why +
                                  " (pass the restart flag to discard the cache)");
            };
            if (j.is_discarded()) throw bad("not valid JSON");
            if (!j.contains("n") || !j.contains("mode") || !j.contains("m") ||
                !j.contains("value"))
                throw bad("missing field");
            if (!j["n"].is_number_unsigned() || !j["m"].is_number_unsigned() ||
                !j["value"].is_number_unsigned() || !j["mode"].is_string())
                throw bad("field has wrong type");
            if (j["n"].get<unsigned>() != n_ || j["mode"].get<std::string>() != mode_.str())
                throw bad("record belongs to a different (n, mode) stream");
            if (j["m"].get<std::uint64_t>() != replay_.size())
                throw bad("m values are not contiguous from 0");
            std::uint64_t v = j["value"].get<std::uint64_t>();
            if (v > j["m"].get<std::uint64_t>()) throw bad("value exceeds m");
            replay_.push_back(v);
        }
    }

    io_ = new Impl;
    io_->path = path;
    io_->out.open(path, restart ? std::ios::trunc : std::ios::app);
    if (!io_->out) {
        delete io_;
        io_ = nullptr;
        throw CacheError("cannot open cache file " + path);
    }
}

BetaRecord LimitStream::emit(std::uint64_t value, bool fresh) {
    if (fresh && io_) {
        nlohmann::json j{{"n", n_}, {"mode", mode_.str()}, {"m", next_m_}, {"value", value}};
        io_->out << j.dump() << "\n" << std::flush;
    }
    if (last_value_ && *last_value_ == value)
        ++stable_for_;
    else
        stable_for_ = 1;
    last_value_ = value;
    BetaRecord rec{n_, mode_, next_m_, value};
    ++next_m_;
    return rec;
}

BetaRecord LimitStream::next() {
    if (replay_pos_ < replay_.size()) return emit(replay_[replay_pos_++], false);
    return emit(beta_value(n_, next_m_, mode_, workers_), true);
}

}  // namespace ensys
