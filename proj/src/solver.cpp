#include "enumcomp/solver.hpp"

#include <bit>
#include <unordered_map>
#include <vector>

namespace enumcomp::game {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::P1WinsWithin: return "p1_wins_within";
        case Verdict::P2Survives: return "p2_survives";
        case Verdict::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

using Mask = std::uint64_t;

struct Key {
    Mask p1;
    Mask p2;
    bool operator==(const Key&) const = default;
};

struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
        return std::hash<Mask>{}(k.p1 * 0x9E3779B97F4A7C15ULL ^ (k.p2 + 0x632BE59BD9B4E019ULL));
    }
};

// Bounds learned so far for one position: wins within `win_at` rounds,
// cannot win within `lose_at` rounds.
struct Bounds {
    unsigned win_at = ~0u;
    unsigned lose_at = 0;
};

Mask bit(Number n) { return Mask{1} << n; }

class Search {
public:
    Search(const GameConfig& config, const SolveOptions& options)
        : config_(config), options_(options), universe_(*config.universe_bound) {
        Mask evens = 0;
        for (Number n = 0; n < universe_; n += 2) evens |= bit(n);
        evens_ = evens;
        full_ = universe_ == 64 ? ~Mask{0} : (bit(universe_) - 1);
    }

    std::uint64_t nodes() const noexcept { return nodes_; }

    bool wins(Mask p1, Mask p2, unsigned depth, Mask* first = nullptr) {
        if (depth == 0) return false;
        if (++nodes_ > options_.node_budget) throw BudgetExceeded(nodes_);
        const Key key{p1, p2};
        if (!first) {
            const auto it = memo_.find(key);
            if (it != memo_.end()) {
                if (it->second.win_at <= depth) return true;
                if (it->second.lose_at >= depth) return false;
            }
        }

        Mask pool = full_ & ~p1;
        if (config_.variant == Variant::Reduced) pool &= evens_;
        std::vector<Number> cand;
        for (Mask m = pool; m; m &= m - 1) cand.push_back(std::countr_zero(m));

        bool result = false;
        std::vector<std::size_t> idx;
        const std::size_t k = config_.k;
        if (cand.size() >= k) {
            idx.resize(k);
            for (std::size_t i = 0; i < k; ++i) idx[i] = i;
            while (!result) {
                Mask r = 0;
                for (auto i : idx) r |= bit(cand[i]);
                if (move_wins(p1, p2, r, cand[idx.front()], cand[idx.back()], depth)) {
                    result = true;
                    if (first) *first = r;
                    break;
                }
                std::size_t i = k;
                while (i > 0 && idx[i - 1] == cand.size() - k + i - 1) --i;
                if (i == 0) break;
                ++idx[i - 1];
                for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
            }
        }

        Bounds& b = memo_[key];
        if (result) b.win_at = std::min(b.win_at, depth);
        else b.lose_at = std::max(b.lose_at, depth);
        return result;
    }

private:
    bool move_wins(Mask p1, Mask p2, Mask r, Number lo, Number hi, unsigned depth) {
        const Mask np1 = p1 | r;
        Mask span = (hi == 63 ? ~Mask{0} : (bit(hi + 1) - 1)) & ~(bit(lo) - 1);
        Mask replies = span & evens_ & ~p2;
        if (config_.variant == Variant::Reduced) replies &= np1;
        for (Mask m = replies; m; m &= m - 1) {
            const Number n = std::countr_zero(m);
            if (config_.variant == Variant::Reduced) {
                const Mask near = (n >= 2 ? bit(n - 2) : 0) | (n + 2 < 64 ? bit(n + 2) : 0);
                if (p2 & near) continue;
            }
            if (!wins(np1, p2 | bit(n), depth - 1)) return false;
        }
        return true;
    }

    const GameConfig& config_;
    const SolveOptions& options_;
    Number universe_;
    Mask evens_ = 0;
    Mask full_ = 0;
    std::uint64_t nodes_ = 0;
    std::unordered_map<Key, Bounds, KeyHash> memo_;
};

}  // namespace

SolveResult solve(const GameConfig& config, const GameState& start, const SolveOptions& options) {
    config.validate();
    if (!config.universe_bound || *config.universe_bound > 64) {
        throw std::invalid_argument("solver needs a universe bound of at most 64");
    }
    if (start.outcome != Outcome::Ongoing || start.to_move != Player::P1) {
        throw std::invalid_argument("solver start position must have player 1 to move");
    }
    Mask p1 = 0;
    Mask p2 = 0;
    for (Number n : start.p1_chosen) {
        if (n < 0 || n >= *config.universe_bound)
            throw std::invalid_argument("start position lies outside the universe");
        p1 |= bit(n);
    }
    for (Number n : start.p2_chosen) {
        if (n < 0 || n >= *config.universe_bound)
            throw std::invalid_argument("start position lies outside the universe");
        p2 |= bit(n);
    }

    Search search(config, options);
    SolveResult result;
    const unsigned horizon = config.max_rounds - static_cast<unsigned>(start.rounds_completed());
    try {
        for (unsigned d = 1; d <= horizon; ++d) {
            Mask first = 0;
            if (search.wins(p1, p2, d, &first)) {
                result.verdict = Verdict::P1WinsWithin;
                result.depth = d;
                for (Mask m = first; m; m &= m - 1) result.move.push_back(std::countr_zero(m));
                result.nodes = search.nodes();
                result.note = "forced win in " + std::to_string(d) + " round(s) inside [0, " +
                              std::to_string(*config.universe_bound) + ")";
                return result;
            }
        }
    } catch (const BudgetExceeded&) {
        if (options.throw_on_budget) throw;
        result.verdict = Verdict::Unknown;
        result.nodes = search.nodes();
        result.note = "node budget exhausted";
        return result;
    }
    result.verdict = Verdict::P2Survives;
    result.nodes = search.nodes();
    result.note = "player 2 survives " + std::to_string(horizon) +
                  " round(s) inside [0, " + std::to_string(*config.universe_bound) +
                  "); horizon-bounded, not a verdict on the unbounded game";
    return result;
}

}  // namespace enumcomp::game
