#include "enumcomp/game.hpp"

#include <algorithm>

namespace enumcomp::game {

std::string_view to_string(Variant v) { return v == Variant::Even ? "even" : "reduced"; }
std::string_view to_string(Player p) { return p == Player::P1 ? "p1" : "p2"; }

std::string_view to_string(Outcome o) {
    switch (o) {
        case Outcome::Ongoing: return "ongoing";
        case Outcome::P1Wins: return "p1_wins";
        case Outcome::P2Survived: return "p2_survived";
    }
    return "ongoing";
}

Variant parse_variant(std::string_view name) {
    if (name == "even") return Variant::Even;
    if (name == "reduced") return Variant::Reduced;
    throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

Player parse_player(std::string_view name) {
    if (name == "p1") return Player::P1;
    if (name == "p2") return Player::P2;
    throw std::invalid_argument("unknown player '" + std::string(name) + "'");
}

void GameConfig::validate() const {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    if (max_rounds == 0) throw std::invalid_argument("max_rounds must be positive");
    if (universe_bound && *universe_bound <= 0) {
        throw std::invalid_argument("universe bound must be positive");
    }
}

const Move* GameState::pending_round() const noexcept {
    if (to_move != Player::P2 || history.empty() || history.back().reply) return nullptr;
    return &history.back().r;
}

std::size_t GameState::rounds_completed() const noexcept {
    return static_cast<std::size_t>(std::count_if(
        history.begin(), history.end(), [](const Round& r) { return r.reply.has_value(); }));
}

GameState GameState::from_position(const std::set<Number>& both,
                                   const std::set<Number>& p1_only) {
    GameState s;
    s.p1_chosen = both;
    s.p1_chosen.insert(p1_only.begin(), p1_only.end());
    s.p2_chosen = both;
    return s;
}

namespace {

bool is_even(Number n) { return n % 2 == 0; }

std::vector<Number> replies_for(const std::set<Number>& p1, const std::set<Number>& p2,
                                Variant variant, const Move& r) {
    std::vector<Number> out;
    if (r.empty()) return out;
    const auto [lo_it, hi_it] = std::minmax_element(r.begin(), r.end());
    Number lo = *lo_it;
    if (!is_even(lo)) ++lo;
    for (Number n = std::max<Number>(lo, 0); n <= *hi_it; n += 2) {
        if (p2.count(n)) continue;
        if (variant == Variant::Reduced && !p1.count(n)) continue;
        out.push_back(n);
    }
    return out;
}

bool creates_adjacency(const std::set<Number>& p2, Number n) {
    return p2.count(n - 2) || p2.count(n + 2);
}

}  // namespace

std::vector<Number> legal_replies(const GameState& state, const GameConfig& config) {
    const Move* r = state.pending_round();
    if (!r || state.outcome != Outcome::Ongoing) return {};
    return replies_for(state.p1_chosen, state.p2_chosen, config.variant, *r);
}

std::vector<Number> replies_to(const GameState& state, const GameConfig& config, const Move& r) {
    std::set<Number> p1 = state.p1_chosen;
    p1.insert(r.begin(), r.end());
    return replies_for(p1, state.p2_chosen, config.variant, r);
}

std::vector<Move> legal_moves(const GameState& state, const GameConfig& config) {
    if (state.outcome != Outcome::Ongoing) return {};
    if (state.to_move == Player::P2) {
        std::vector<Move> out;
        for (Number n : legal_replies(state, config)) out.push_back({n});
        return out;
    }
    Number bound = 0;
    if (config.universe_bound) {
        bound = *config.universe_bound;
    } else {
        Number top = 0;
        if (!state.p1_chosen.empty()) top = std::max(top, *state.p1_chosen.rbegin());
        if (!state.p2_chosen.empty()) top = std::max(top, *state.p2_chosen.rbegin());
        bound = top + 2 * static_cast<Number>(config.k) + 2;
    }
    std::vector<Number> pool;
    for (Number n = 0; n < bound; ++n) {
        if (state.p1_chosen.count(n)) continue;
        if (config.variant == Variant::Reduced && !is_even(n)) continue;
        pool.push_back(n);
    }
    std::vector<Move> out;
    if (pool.size() < config.k) return out;
    // Lexicographic k-combinations of the pool.
    std::vector<std::size_t> idx(config.k);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    while (true) {
        Move m;
        for (auto i : idx) m.push_back(pool[i]);
        out.push_back(std::move(m));
        std::size_t i = idx.size();
        while (i > 0 && idx[i - 1] == pool.size() - idx.size() + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

GameState apply_move(const GameState& state, const GameConfig& config, const Move& move) {
    if (state.outcome != Outcome::Ongoing) throw IllegalMove("game_over", "the game is over");
    GameState next = state;

    if (state.to_move == Player::P1) {
        if (move.size() != config.k) {
            throw IllegalMove("p1_wrong_count", "player 1 must choose exactly " +
                                                    std::to_string(config.k) + " numbers");
        }
        std::set<Number> seen;
        for (Number n : move) {
            if (n < 0) throw IllegalMove("not_natural", std::to_string(n) + " is negative");
            if (!seen.insert(n).second || state.p1_chosen.count(n)) {
                throw IllegalMove("p1_repeat", std::to_string(n) + " was already chosen by player 1");
            }
            if (config.variant == Variant::Reduced && !is_even(n)) {
                throw IllegalMove("p1_not_even", std::to_string(n) + " is odd");
            }
        }
        Move sorted(seen.begin(), seen.end());
        next.p1_chosen.insert(sorted.begin(), sorted.end());
        next.history.push_back({sorted, std::nullopt});
        next.to_move = Player::P2;
        if (legal_replies(next, config).empty()) {
            next.outcome = Outcome::P1Wins;
            next.loss_reason = "stuck";
        }
        return next;
    }

    const Move* r = state.pending_round();
    if (!r) throw IllegalMove("not_your_turn", "no round is awaiting a reply");
    if (move.size() != 1) throw IllegalMove("p2_wrong_count", "player 2 must choose one number");
    const Number n = move.front();
    if (n < 0) throw IllegalMove("not_natural", std::to_string(n) + " is negative");
    if (!is_even(n)) throw IllegalMove("p2_not_even", std::to_string(n) + " is odd");
    const auto [lo, hi] = std::minmax_element(r->begin(), r->end());
    if (n < *lo || n > *hi) {
        throw IllegalMove("p2_out_of_range", std::to_string(n) + " is outside [" +
                                                 std::to_string(*lo) + ", " +
                                                 std::to_string(*hi) + "]");
    }
    if (state.p2_chosen.count(n)) {
        throw IllegalMove("p2_repeat", std::to_string(n) + " was already chosen by player 2");
    }
    if (config.variant == Variant::Reduced && !state.p1_chosen.count(n)) {
        throw IllegalMove("p2_not_p1_chosen", std::to_string(n) + " was never chosen by player 1");
    }

    next.history.back().reply = n;
    if (config.variant == Variant::Reduced && creates_adjacency(state.p2_chosen, n)) {
        const Number other = state.p2_chosen.count(n - 2) ? n - 2 : n + 2;
        next.losing_pair = {std::min(n, other), std::max(n, other)};
        next.loss_reason = "adjacent";
        next.outcome = Outcome::P1Wins;
    }
    next.p2_chosen.insert(n);
    if (next.outcome == Outcome::Ongoing) {
        next.to_move = Player::P1;
        if (next.rounds_completed() >= config.max_rounds) next.outcome = Outcome::P2Survived;
    }
    return next;
}

// ---------------------------------------------------------------------------
// Strategy helpers. All of them reason with reduced-game semantics.

namespace {

const GameConfig kReduced{3, Variant::Reduced, 1000, std::nullopt};

bool fresh_even(const GameState& s, Number n) {
    return n >= 0 && is_even(n) && !s.p1_chosen.count(n);
}

bool playable(const GameState& s, const Move& r) {
    std::set<Number> distinct(r.begin(), r.end());
    if (distinct.size() != r.size()) return false;
    return std::all_of(r.begin(), r.end(), [&](Number n) { return fresh_even(s, n); });
}

std::vector<Number> x_numbers(const GameState& s) {
    std::vector<Number> xs;
    for (Number n : s.p1_chosen)
        if (s.p2_chosen.count(n)) xs.push_back(n);
    return xs;
}

GameState after_reply(const GameState& s, const Move& r, Number reply) {
    GameState t = s;
    t.p1_chosen.insert(r.begin(), r.end());
    t.p2_chosen.insert(reply);
    return t;
}

std::optional<Move> kill_for_pair(const GameState& s, Number n, Number m) {
    const Move candidates[] = {{n - 2, n + 2, m + 2},
                               {n + 2, m - 2, m + 2},
                               {n - 2, n + 2, m - 2},
                               {n - 2, m - 2, m + 2}};
    for (Move c : candidates) {
        std::sort(c.begin(), c.end());
        if (playable(s, c) && is_killing(s, c)) return c;
    }
    return std::nullopt;
}

std::optional<Move> find_xx_kill(const GameState& s, Number* a = nullptr, Number* b = nullptr) {
    const auto xs = x_numbers(s);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (auto c = kill_for_pair(s, xs[i], xs[i + 1])) {
            if (a) *a = xs[i];
            if (b) *b = xs[i + 1];
            return c;
        }
    }
    return std::nullopt;
}

// Every reply either loses on the spot or leaves an XX kill.
bool leads_to_kill(const GameState& s, const Move& r) {
    for (Number reply : replies_to(s, kReduced, r)) {
        if (creates_adjacency(s.p2_chosen, reply)) continue;
        if (!find_xx_kill(after_reply(s, r, reply))) return false;
    }
    return true;
}

std::optional<Move> xox_move(const GameState& s, std::vector<Number>* where = nullptr) {
    const std::vector<Number> p1(s.p1_chosen.begin(), s.p1_chosen.end());
    for (std::size_t i = 0; i + 2 < p1.size(); ++i) {
        const Number x1 = p1[i];
        const Number o1 = p1[i + 1];
        const Number x2 = p1[i + 2];
        if (!s.p2_chosen.count(x1) || s.p2_chosen.count(o1) || !s.p2_chosen.count(x2)) continue;
        const Move r = {x1 - 2, x2 - 2, x2 + 2};
        if (!playable(s, r) || !(x2 - 2 > o1)) continue;
        if (!leads_to_kill(s, r)) continue;
        if (where) *where = {x1, o1, x2};
        return r;
    }
    return std::nullopt;
}

bool window_clear(const GameState& s, Number lo, Number hi, Number except) {
    for (auto it = s.p1_chosen.lower_bound(lo); it != s.p1_chosen.end() && *it <= hi; ++it) {
        if (*it != except) return false;
    }
    return true;
}

std::optional<Move> single_x_move(const GameState& s, Number* where = nullptr) {
    for (Number x : x_numbers(s)) {
        const Move r = {x - 6, x + 6, x + 12};
        if (!playable(s, r) || !window_clear(s, x - 8, x + 14, x)) continue;
        bool ok = true;
        for (Number reply : replies_to(s, kReduced, r)) {
            if (creates_adjacency(s.p2_chosen, reply)) continue;
            const GameState t = after_reply(s, r, reply);
            if (!find_xx_kill(t) && !xox_move(t)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        if (where) *where = x;
        return r;
    }
    return std::nullopt;
}

std::string join(const std::vector<Number>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(v[i]);
    }
    return out;
}

void require_p1_turn(const GameState& s) {
    if (s.outcome != Outcome::Ongoing) throw StrategyError("the game is over");
    if (s.to_move != Player::P1) throw StrategyError("player 2 is to move");
}

}  // namespace

bool is_killing(const GameState& state, const Move& r) {
    for (Number reply : replies_to(state, kReduced, r)) {
        if (!creates_adjacency(state.p2_chosen, reply)) return false;
    }
    return true;
}

std::vector<Configuration> detect_configurations(const GameState& state) {
    std::set<Number> pending;
    if (const Move* r = state.pending_round()) pending.insert(r->begin(), r->end());
    const std::vector<Number> p1(state.p1_chosen.begin(), state.p1_chosen.end());
    auto letter = [&](Number n) {
        if (state.p2_chosen.count(n)) return 'X';
        return pending.count(n) ? 'T' : 'O';
    };

    std::vector<Configuration> out;
    std::set<Number> covered;
    for (std::size_t i = 0; i < p1.size(); ++i) {
        if (letter(p1[i]) != 'X') continue;
        if (i + 1 < p1.size() && letter(p1[i + 1]) == 'X') {
            Configuration c{"XX", {p1[i], p1[i + 1]}, false};
            // Space is sufficient when this very pair admits a killing move.
            GameState probe = state;
            probe.p1_chosen.insert(pending.begin(), pending.end());
            c.sufficient_space = kill_for_pair(probe, p1[i], p1[i + 1]).has_value();
            out.push_back(c);
            covered.insert({p1[i], p1[i + 1]});
        }
        if (i + 2 < p1.size() && letter(p1[i + 1]) == 'O' && letter(p1[i + 2]) == 'X') {
            Configuration c{"XOX", {p1[i], p1[i + 1], p1[i + 2]}, false};
            std::vector<Number> where;
            c.sufficient_space = xox_move(state, &where).has_value() && where == c.positions;
            out.push_back(c);
            covered.insert({p1[i], p1[i + 2]});
        }
    }
    for (Number x : p1) {
        if (letter(x) != 'X' || covered.count(x)) continue;
        Configuration c{"X", {x}, false};
        c.sufficient_space = window_clear(state, x - 8, x + 14, x) && x - 6 >= 0;
        out.push_back(c);
    }
    std::sort(out.begin(), out.end(), [](const Configuration& a, const Configuration& b) {
        if (a.positions.front() != b.positions.front())
            return a.positions.front() < b.positions.front();
        return a.pattern.size() < b.pattern.size();
    });
    return out;
}

StrategyChoice p1_strategy_reduced(const GameState& state) {
    require_p1_turn(state);
    Number a = 0;
    Number b = 0;
    if (auto r = find_xx_kill(state, &a, &b)) {
        return {*r, "XX",
                "XX at " + std::to_string(a) + ", " + std::to_string(b) +
                    ": every reply in range sits next to a number player 2 already holds"};
    }
    std::vector<Number> where;
    if (auto r = xox_move(state, &where)) {
        return {*r, "XOX",
                "XOX at " + join(where) +
                    ": the flank replies are adjacent to an X and the O reply leaves an XX kill"};
    }
    Number x = 0;
    if (auto r = single_x_move(state, &x)) {
        return {*r, "X",
                "single X at " + std::to_string(x) +
                    ": the two near replies form XX, the far reply forms XOX"};
    }
    if (state.p1_chosen.empty() && state.p2_chosen.empty()) {
        return {{10, 26, 42}, "opening", "opening: three spaced evens; any reply leaves a single X"};
    }
    Number top = 0;
    if (!state.p1_chosen.empty()) top = std::max(top, *state.p1_chosen.rbegin());
    if (!state.p2_chosen.empty()) top = std::max(top, *state.p2_chosen.rbegin());
    Number o = top + 16;
    if (!is_even(o)) ++o;
    return {{o, o + 16, o + 32}, "restart",
            "no configuration has enough space: open a fresh region above " + std::to_string(top)};
}

StrategyChoice p1_strategy_even(const GameState& state) {
    require_p1_turn(state);
    for (Number n : state.p2_chosen) {
        if (n < 1) continue;
        if (!state.p1_chosen.count(n - 1) && !state.p1_chosen.count(n) &&
            !state.p1_chosen.count(n + 1)) {
            return {{n - 1, n, n + 1}, "clause-i",
                    "player 2 holds " + std::to_string(n) +
                        ", never chosen by player 1: no fresh even is left in the span"};
        }
    }
    for (Number n : state.p2_chosen) {
        if (n < 1 || !state.p2_chosen.count(n + 2)) continue;
        if (!state.p1_chosen.count(n) || !state.p1_chosen.count(n + 2)) continue;
        if (state.p1_chosen.count(n - 1) || state.p1_chosen.count(n + 1) ||
            state.p1_chosen.count(n + 3)) {
            continue;
        }
        return {{n - 1, n + 1, n + 3}, "clause-ii",
                "player 2 holds adjacent " + std::to_string(n) + ", " + std::to_string(n + 2) +
                    ": the only evens in the span are already his"};
    }
    return p1_strategy_reduced(state);
}

bool strategy_known(const GameConfig& config) { return config.k == 3; }

StrategyChoice p1_strategy(const GameState& state, const GameConfig& config) {
    if (!strategy_known(config)) throw StrategyError("no strategy known; solver exploration only");
    return config.variant == Variant::Reduced ? p1_strategy_reduced(state)
                                              : p1_strategy_even(state);
}

}  // namespace enumcomp::game
