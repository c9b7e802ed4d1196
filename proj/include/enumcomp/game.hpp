#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace enumcomp::game {

using Number = std::int64_t;
using Move = std::vector<Number>;

enum class Variant { Even, Reduced };
enum class Player { P1, P2 };
enum class Outcome { Ongoing, P1Wins, P2Survived };

std::string_view to_string(Variant v);
std::string_view to_string(Player p);
std::string_view to_string(Outcome o);
Variant parse_variant(std::string_view name);
Player parse_player(std::string_view name);

struct GameConfig {
    unsigned k = 3;
    Variant variant = Variant::Reduced;
    unsigned max_rounds = 8;
    /// Solver and p1 move enumeration only: numbers are drawn from [0, bound).
    std::optional<Number> universe_bound;

    void validate() const;
};

struct Round {
    Move r;
    std::optional<Number> reply;
};

struct GameState {
    std::set<Number> p1_chosen;
    std::set<Number> p2_chosen;
    std::vector<Round> history;
    Player to_move = Player::P1;
    Outcome outcome = Outcome::Ongoing;
    /// "stuck" or "adjacent" once player 1 has won.
    std::string loss_reason;
    std::vector<Number> losing_pair;

    /// R of the round awaiting a reply, or nullptr.
    const Move* pending_round() const noexcept;
    std::size_t rounds_completed() const noexcept;

    /// A position with both players holding `both`, player 1 also holding
    /// `p1_only`, and player 1 to move. History is left empty.
    static GameState from_position(const std::set<Number>& both,
                                   const std::set<Number>& p1_only = {});
};

class IllegalMove : public std::invalid_argument {
public:
    IllegalMove(std::string rule, const std::string& message)
        : std::invalid_argument(message), rule_(std::move(rule)) {}
    const std::string& rule() const noexcept { return rule_; }

private:
    std::string rule_;
};

/// Player 2's legal replies to the pending round, ascending.
std::vector<Number> legal_replies(const GameState& state, const GameConfig& config);

/// Legal replies for a hypothetical round R played on `state` (p1 to move).
std::vector<Number> replies_to(const GameState& state, const GameConfig& config, const Move& r);

/**
 * Legal moves of the side to move. Player-1 moves are the k-subsets of
 * fresh numbers in [0, bound), bound = universe_bound if set, otherwise
 * max involved number + 2k + 2; the list is sorted lexicographically.
 */
std::vector<Move> legal_moves(const GameState& state, const GameConfig& config);

/// Validates and applies one move, evaluating loss conditions at once.
/// Throws IllegalMove naming the violated rule.
GameState apply_move(const GameState& state, const GameConfig& config, const Move& move);

struct Configuration {
    std::string pattern;  // "X", "XX" or "XOX"
    std::vector<Number> positions;
    bool sufficient_space = false;
};

/// XX and XOX windows over consecutive player-1 numbers, plus each X that
/// belongs to neither. Ordered by first position, then pattern length.
std::vector<Configuration> detect_configurations(const GameState& state);

struct StrategyChoice {
    Move move;
    std::string tag;  // opening, X, XX, XOX, clause-i, clause-ii, restart
    std::string rationale;
};

class StrategyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Every legal reduced-game reply to R leaves player 2 holding adjacent
/// evens (or there is no reply at all).
bool is_killing(const GameState& state, const Move& r);

/// Player-1 strategy for the reduced game with k = 3.
StrategyChoice p1_strategy_reduced(const GameState& state);
/// Player-1 strategy for the 3-even game: the two one-move kills, otherwise
/// the reduced-game strategy.
StrategyChoice p1_strategy_even(const GameState& state);
/// Dispatch on config; throws StrategyError unless k == 3.
StrategyChoice p1_strategy(const GameState& state, const GameConfig& config);

bool strategy_known(const GameConfig& config);

}  // namespace enumcomp::game
