#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "enumcomp/game.hpp"

namespace enumcomp::game {

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(std::uint64_t nodes)
        : std::runtime_error("solver node budget exceeded after " + std::to_string(nodes) +
                             " nodes"),
          nodes_(nodes) {}
    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    std::uint64_t nodes_;
};

enum class Verdict { P1WinsWithin, P2Survives, Unknown };
std::string_view to_string(Verdict v);

struct SolveOptions {
    std::uint64_t node_budget = 20'000'000;
    /// When false, an exhausted budget yields Verdict::Unknown instead.
    bool throw_on_budget = true;
};

struct SolveResult {
    Verdict verdict = Verdict::Unknown;
    /// Least number of further rounds in which player 1 forces a win.
    unsigned depth = 0;
    /// A first move achieving that depth (empty unless P1WinsWithin).
    Move move;
    std::uint64_t nodes = 0;
    /// Survival is only ever claimed up to config.max_rounds and inside the universe.
    std::string note;
};

/**
 * Depth-bounded minimax over positions in [0, universe_bound), bound <= 64.
 * Player-1 moves range over every k-subset of fresh numbers in the universe
 * (evens only in the reduced game). `start` must have player 1 to move.
 */
SolveResult solve(const GameConfig& config, const GameState& start = {},
                  const SolveOptions& options = {});

}  // namespace enumcomp::game
