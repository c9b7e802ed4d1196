#include <doctest.h>

#include "enumcomp/solver.hpp"
#include "game_oracle.hpp"

using namespace enumcomp::game;

TEST_CASE("k=2 even game: player 1 forces a win in two rounds") {
    // Derived constant: the least forcing depth the search finds at this size.
    const GameConfig cfg{2, Variant::Even, 6, Number{24}};
    const auto r = solve(cfg);
    CHECK(r.verdict == Verdict::P1WinsWithin);
    CHECK(r.depth == 2);
    CHECK(r.move == Move{1, 4});

    // The certificate move really forces a win: replay it against every reply.
    const GameState after = apply_move(GameState{}, cfg, r.move);
    for (Number reply : game_oracle::brute_replies(after, cfg)) {
        const GameState next = apply_move(after, cfg, {reply});
        REQUIRE(next.outcome == Outcome::Ongoing);
        const GameConfig rest{2, Variant::Even, 6, Number{24}};
        const auto sub = solve(rest, next);
        CHECK(sub.verdict == Verdict::P1WinsWithin);
        CHECK(sub.depth == 1);
    }
}

TEST_CASE("no single-round win for k=2 from the empty board") {
    const auto r = solve(GameConfig{2, Variant::Even, 1, Number{24}});
    CHECK(r.verdict == Verdict::P2Survives);
    CHECK_FALSE(r.note.empty());
}

TEST_CASE("reduced game from XX(10,14)") {
    const GameConfig cfg{3, Variant::Reduced, 1, Number{20}};
    const auto r = solve(cfg, GameState::from_position({10, 14}));
    CHECK(r.verdict == Verdict::P1WinsWithin);
    CHECK(r.depth == 1);
    CHECK(is_killing(GameState::from_position({10, 14}), r.move));
    CHECK(r.move == Move{8, 12, 16});
}

TEST_CASE("three-even game from the empty board survives one round") {
    const auto r = solve(GameConfig{3, Variant::Even, 1, Number{12}});
    CHECK(r.verdict == Verdict::P2Survives);
}

TEST_CASE("budget exhaustion") {
    const GameConfig cfg{3, Variant::Even, 3, Number{40}};
    CHECK_THROWS_AS(solve(cfg, {}, SolveOptions{1000, true}), BudgetExceeded);
    const auto r = solve(cfg, {}, SolveOptions{1000, false});
    CHECK(r.verdict == Verdict::Unknown);
    CHECK(r.nodes >= 1000);
}

TEST_CASE("solver input validation") {
    CHECK_THROWS(solve(GameConfig{2, Variant::Even, 4, std::nullopt}));
    CHECK_THROWS(solve(GameConfig{2, Variant::Even, 4, Number{65}}));
    CHECK(to_string(Verdict::P1WinsWithin) == "p1_wins_within");
}
