#include <doctest.h>

#include "enumcomp/game.hpp"
#include "game_oracle.hpp"

using namespace enumcomp::game;

namespace {

const GameConfig kReduced{3, Variant::Reduced, 8, std::nullopt};
const GameConfig kEven{3, Variant::Even, 8, std::nullopt};

GameState play(GameState s, const GameConfig& cfg, std::initializer_list<Move> moves) {
    for (const auto& m : moves) s = apply_move(s, cfg, m);
    return s;
}

std::string rule_of(const GameState& s, const GameConfig& cfg, const Move& m) {
    try {
        apply_move(s, cfg, m);
    } catch (const IllegalMove& e) {
        return e.rule();
    }
    return "";
}

}  // namespace

TEST_CASE("legal replies") {
    const auto xx = GameState::from_position({10, 14});
    const auto after = apply_move(xx, kReduced, {8, 12, 16});
    CHECK(legal_replies(after, kReduced) == std::vector<Number>{8, 12, 16});
    CHECK(replies_to(xx, kReduced, {8, 12, 16}) == std::vector<Number>{8, 12, 16});

    const auto even = apply_move(GameState{}, kEven, {3, 4, 5});
    CHECK(legal_replies(even, kEven) == std::vector<Number>{4});
    const auto odd_only = apply_move(GameState{}, GameConfig{2, Variant::Even, 8, std::nullopt}, {3, 5});
    CHECK(legal_replies(odd_only, GameConfig{2, Variant::Even, 8, std::nullopt}) == std::vector<Number>{4});
}

TEST_CASE("a player 2 without replies loses at once") {
    // Reduced game: all of R odd-free but none fresh for player 2.
    auto s = GameState::from_position({10, 12, 14});
    s = apply_move(s, kReduced, {8, 16, 18});
    CHECK(s.outcome == Outcome::Ongoing);

    auto even_stuck = GameState::from_position({20});
    even_stuck = apply_move(even_stuck, kEven, {19, 21, 23});
    CHECK(even_stuck.outcome == Outcome::Ongoing);  // 22 is still free

    GameState lone;
    lone.p2_chosen = {20};
    auto stuck = apply_move(lone, kEven, {19, 20, 21});
    CHECK(stuck.outcome == Outcome::P1Wins);
    CHECK(stuck.loss_reason == "stuck");
    CHECK(legal_replies(stuck, kEven).empty());
}

TEST_CASE("adjacency decides the reduced game") {
    auto s = apply_move(GameState::from_position({10}), kReduced, {12, 20, 30});
    s = apply_move(s, kReduced, {12});
    CHECK(s.outcome == Outcome::P1Wins);
    CHECK(s.loss_reason == "adjacent");
    CHECK(s.losing_pair == std::vector<Number>{10, 12});

    auto gap = apply_move(GameState::from_position({10}), kReduced, {14, 20, 30});
    gap = apply_move(gap, kReduced, {14});
    CHECK(gap.outcome == Outcome::Ongoing);

    auto even = play(GameState{}, kEven, {{3, 4, 5}, {4}});
    CHECK(even.outcome == Outcome::Ongoing);
    even = play(even, kEven, {{5 + 1, 7, 9}, {6}});
    CHECK(even.outcome == Outcome::Ongoing);  // adjacency is no loss in the even game
}

TEST_CASE("illegal moves name the broken rule") {
    const GameState empty;
    CHECK(rule_of(empty, kReduced, {2, 4}) == "p1_wrong_count");
    CHECK(rule_of(empty, kReduced, {2, 4, 5}) == "p1_not_even");
    CHECK(rule_of(empty, kReduced, {-2, 4, 6}) == "not_natural");
    CHECK(rule_of(empty, kReduced, {2, 2, 4}) == "p1_repeat");
    CHECK(rule_of(empty, kReduced, {2}) == "p1_wrong_count");

    const auto pending = apply_move(empty, kReduced, {10, 20, 30});
    CHECK(rule_of(pending, kReduced, {11}) == "p2_not_even");
    CHECK(rule_of(pending, kReduced, {32}) == "p2_out_of_range");
    CHECK(rule_of(pending, kReduced, {12}) == "p2_not_p1_chosen");
    CHECK(rule_of(pending, kReduced, {10, 20}) == "p2_wrong_count");
    const auto replied = apply_move(pending, kReduced, {10});
    CHECK(rule_of(replied, kReduced, {10, 20, 30}) == "p1_repeat");

    const auto again = apply_move(replied, kReduced, {8, 12, 40});
    CHECK(rule_of(again, kReduced, {10}) == "p2_repeat");

    auto done = apply_move(GameState::from_position({10}), kReduced, {12, 20, 30});
    done = apply_move(done, kReduced, {12});
    CHECK(rule_of(done, kReduced, {40, 42, 44}) == "game_over");

    CHECK_THROWS_AS(apply_move(empty, GameConfig{3, Variant::Reduced, 8, std::nullopt}, {1, 2, 3}),
                    IllegalMove);
}

TEST_CASE("rounds run out in favour of player 2") {
    const GameConfig short_game{3, Variant::Reduced, 1, std::nullopt};
    auto s = play(GameState{}, short_game, {{10, 26, 42}, {26}});
    CHECK(s.outcome == Outcome::P2Survived);
}

TEST_CASE("legal_moves enumerates fresh k-subsets") {
    const GameConfig cfg{2, Variant::Even, 4, Number{5}};
    const auto moves = legal_moves(GameState{}, cfg);
    CHECK(moves.size() == 10);
    CHECK(moves.front() == Move{0, 1});
    CHECK(moves.back() == Move{3, 4});

    const GameConfig red{2, Variant::Reduced, 4, Number{8}};
    const auto even_moves = legal_moves(GameState{}, red);
    CHECK(even_moves.size() == 6);  // pairs from {0,2,4,6}

    const auto pending = apply_move(GameState{}, kReduced, {10, 20, 30});
    const auto replies = legal_moves(pending, kReduced);
    CHECK(replies == std::vector<Move>{{10}, {20}, {30}});
}

TEST_CASE("configurations") {
    const auto xx = detect_configurations(GameState::from_position({10, 14}));
    REQUIRE(xx.size() == 1);
    CHECK(xx[0].pattern == "XX");
    CHECK(xx[0].positions == std::vector<Number>{10, 14});
    CHECK(xx[0].sufficient_space);

    const auto xox = detect_configurations(GameState::from_position({10, 16}, {12}));
    REQUIRE(xox.size() == 1);
    CHECK(xox[0].pattern == "XOX");
    CHECK(xox[0].positions == std::vector<Number>{10, 12, 16});

    CHECK(detect_configurations(GameState{}).empty());

    const auto single = detect_configurations(GameState::from_position({10}));
    REQUIRE(single.size() == 1);
    CHECK(single[0].pattern == "X");
}

TEST_CASE("reduced strategy: XX kill") {
    const auto xx = GameState::from_position({10, 14});
    const auto choice = p1_strategy_reduced(xx);
    CHECK(choice.move == Move{8, 12, 16});
    CHECK(choice.tag == "XX");
    CHECK(is_killing(xx, choice.move));
    const auto after = apply_move(xx, kReduced, choice.move);
    for (Number reply : game_oracle::brute_replies(after, kReduced)) {
        const auto end = apply_move(after, kReduced, {reply});
        CHECK(end.outcome == Outcome::P1Wins);
        CHECK(end.loss_reason == "adjacent");
    }
}

TEST_CASE("reduced strategy: single X and XOX shapes") {
    const auto x = GameState::from_position({10});
    const auto m = p1_strategy_reduced(x).move;
    REQUIRE(m.size() == 3);
    CHECK(m[0] < 10);
    CHECK(m[1] > 10);
    CHECK(m[2] > m[1]);
    for (Number n : m) CHECK(n % 2 == 0);

    const auto xox = GameState::from_position({10, 16}, {12});
    const auto choice = p1_strategy_reduced(xox);
    CHECK(choice.move == Move{8, 14, 18});
    // With O1 = 12 already chosen by player 1, the pair of X's at 10 and 16
    // is killable outright, so the kill rule fires before the XOX rule.
    CHECK(choice.tag == "XX");
    CHECK(is_killing(xox, choice.move));

    CHECK(p1_strategy_reduced(GameState{}).tag == "opening");
    CHECK(p1_strategy_reduced(GameState{}).move == Move{10, 26, 42});
}

namespace {

// Walks the reduced-game tree and checks every XOX move: it lands a number
// strictly between the O and the right X, and every reply either loses at
// once or leaves a position with a one-move kill.
void walk_xox(const GameState& s, std::size_t& seen) {
    if (s.outcome != Outcome::Ongoing) return;
    if (s.to_move == Player::P2) {
        for (Number n : game_oracle::brute_replies(s, kReduced)) walk_xox(apply_move(s, kReduced, {n}), seen);
        return;
    }
    const auto choice = p1_strategy_reduced(s);
    if (choice.tag == "XOX") {
        ++seen;
        bool between = false;
        for (const auto& c : detect_configurations(s)) {
            if (c.pattern != "XOX") continue;
            for (Number n : choice.move) between = between || (n > c.positions[1] && n < c.positions[2]);
        }
        CHECK(between);
        const auto after = apply_move(s, kReduced, choice.move);
        for (Number reply : game_oracle::brute_replies(after, kReduced)) {
            const auto next = apply_move(after, kReduced, {reply});
            if (next.outcome == Outcome::P1Wins) continue;
            CHECK(is_killing(next, p1_strategy_reduced(next).move));
        }
    }
    walk_xox(apply_move(s, kReduced, choice.move), seen);
}

}  // namespace

TEST_CASE("XOX moves set up a kill") {
    std::size_t seen = 0;
    walk_xox(GameState{}, seen);
    CHECK(seen > 0);
}

TEST_CASE("even strategy") {
    // Player 2 took 20, which player 1 never chose.
    auto clean = GameState{};
    clean.p2_chosen = {20};
    clean.history.push_back({{1, 3, 41}, Number{20}});
    clean.p1_chosen = {1, 3, 41};
    auto choice = p1_strategy_even(clean);
    CHECK(choice.move == Move{19, 20, 21});
    CHECK(choice.tag == "clause-i");
    const auto stuck = apply_move(clean, kEven, choice.move);
    CHECK(stuck.outcome == Outcome::P1Wins);

    auto both = GameState::from_position({20, 22});
    choice = p1_strategy_even(both);
    CHECK(choice.move == Move{19, 21, 23});
    CHECK(choice.tag == "clause-ii");
    CHECK(apply_move(both, kEven, choice.move).outcome == Outcome::P1Wins);

    const auto quiet = GameState::from_position({10, 14});
    CHECK(p1_strategy_even(quiet).move == p1_strategy_reduced(quiet).move);
}

TEST_CASE("strategy dispatch") {
    CHECK(strategy_known(kReduced));
    CHECK_FALSE(strategy_known(GameConfig{4, Variant::Reduced, 8, std::nullopt}));
    CHECK_THROWS_AS(p1_strategy(GameState{}, GameConfig{4, Variant::Even, 8, std::nullopt}),
                    StrategyError);
}

TEST_CASE("the strategies win every branch within eight rounds") {
    for (const auto& cfg : {kReduced, kEven}) {
        const auto t = game_oracle::explore_all(cfg);
        CHECK_MESSAGE(t.losses == 0, t.first_problem);
        CHECK_MESSAGE(t.errors == 0, t.first_problem);
        CHECK(t.wins > 0);
        CHECK(t.max_number < 64);
    }
}

TEST_CASE("text names round-trip") {
    CHECK(parse_variant(to_string(Variant::Even)) == Variant::Even);
    CHECK(parse_player("p1") == Player::P1);
    CHECK(to_string(Outcome::P1Wins) == "p1_wins");
    CHECK_THROWS(parse_variant("odd"));
}
