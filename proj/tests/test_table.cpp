#include <doctest.h>

#include "enumcomp/gainless.hpp"
#include "enumcomp/table.hpp"
#include "fixtures.hpp"

using namespace enumcomp;

namespace {

JointRun counting_without_d() {
    return JointRun(fixtures::counting(8), EnumerationTrace({}, 8));
}

JointRun two_target_run() { return compress_gainless(fixtures::two_burst()).run; }

}  // namespace

TEST_CASE("last_change") {
    const JointRun empty_d = counting_without_d();
    TableView v0(empty_d);
    for (Value r = 0; r < 8; ++r) {
        for (Stage s = 0; s <= 8; ++s) CHECK(v0.last_change(r, s) == 0);
    }
    const JointRun fig1 = fixtures::fig1_run();
    TableView v(fig1);
    CHECK(v.last_change(2, 10) == 3);
    CHECK(v.last_change(9, 10) == 9);
    CHECK(v.last_change(0, 10) == 0);
}

TEST_CASE("tail_load matches the definition") {
    const JointRun run = counting_without_d();
    TableView v(run);
    CHECK(v.tail_load(7, 8) == 8);
    CHECK(v.tail_load(3, 0) == 0);
    CHECK(v.is_loaded(3, 8, 4));
    CHECK(v.is_loaded(7, 8, 8));
    CHECK_FALSE(v.is_loaded(2, 8, 4));

    const JointRun fig1 = fixtures::fig1_run();
    TableView f(fig1);
    CHECK(f.tail_load(2, 10) == 1);
    for (Value r = 0; r < f.universe(); ++r) {
        for (Stage s = 0; s <= 10; ++s) {
            CHECK(f.tail_load(r, s) == fixtures::naive_tail_load(fig1, r, s));
        }
    }
}

TEST_CASE("queries reject rows and stages outside the view") {
    const JointRun fig1 = fixtures::fig1_run();
    TableView v(fig1);
    CHECK_THROWS_AS(v.tail_load(0, 11), std::out_of_range);
    CHECK_THROWS_AS(v.tail_load(v.row_limit(), 1), std::out_of_range);
}

TEST_CASE("blocks of a row") {
    const JointRun run = counting_without_d();
    CHECK(TableView(run).blocks_of_row(5).empty());

    const JointRun two = two_target_run();
    TableView v(two);
    for (Value r = 0; r < 11; ++r) CHECK(v.blocks_of_row(r).empty());
    for (Value r = 11; r < 16; ++r) {
        const auto blocks = v.blocks_of_row(r);
        REQUIRE(blocks.size() == 1);
        CHECK(blocks[0].left == 9);
        CHECK(blocks[0].right == 18);
        CHECK(blocks[0].load == fixtures::naive_count(two.a(), 9, 17, r + 1));
    }
    CHECK(v.blocks_of_row(15)[0].load == 8);

    const auto table = all_blocks(v);
    for (Value r = 0; r < table.rows.size(); ++r) CHECK(table.rows[r] == v.blocks_of_row(r));
}

TEST_CASE("blocks of row r+1 refine those of row r") {
    const JointRun run = compress_gainless(
        generate_trace(GeneratorKind::Burst, GeneratorParams{200, 400, 6, 1}, 5)).run;
    TableView v(run);
    for (Value r = 0; r + 1 < v.universe(); ++r) {
        const auto upper = v.blocks_of_row(r);
        const auto lower = v.blocks_of_row(r + 1);
        // Every cut stage of row r is also a cut stage of row r+1.
        std::set<Stage> cuts;
        for (const auto& b : lower) { cuts.insert(b.left); cuts.insert(b.right); }
        for (const auto& b : upper) {
            CHECK(cuts.count(b.left) == 1);
            CHECK(cuts.count(b.right) == 1);
        }
    }
}

TEST_CASE("labels follow the split rule") {
    const JointRun two = two_target_run();
    const auto labeled = label_blocks(TableView(two));
    CHECK(labeled.rows[0].empty());
    REQUIRE(labeled.rows[15].size() == 1);
    CHECK(labeled.rows[15][0].label == BlockLabel::Type1);
    CHECK(labeled.rows[15][0].load >= kTargetLoad);

    CHECK_THROWS_AS(label_blocks(TableView(fixtures::fig1_run())), LabelError);
}

TEST_CASE("the first block of every row is 4-loaded on gainless runs") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const JointRun run = compress_gainless(
            generate_trace(GeneratorKind::Random, GeneratorParams{150, 300, 8, 0}, seed)).run;
        const auto table = label_blocks(TableView(run));
        for (const auto& row : table.rows) {
            if (!row.empty()) CHECK(row.front().load >= kTargetLoad);
        }
    }
}

TEST_CASE("render_table draws bars") {
    const JointRun empty(EnumerationTrace({}, 3), EnumerationTrace({}, 3));
    CHECK(render_table(TableView(empty)) == "  |0123\n0 |....\n");

    const JointRun fig1 = fixtures::fig1_run();
    const std::string grid = render_table(TableView(fig1));
    CHECK(grid == render_table(TableView(fig1)));
    // Rows 0..5, columns 0..10 after the row label "r |".
    auto cell = [&](Value row, Stage col) {
        std::size_t line_start = 0;
        for (Value i = 0; i <= row; ++i) line_start = grid.find('\n', line_start) + 1;
        return grid[line_start + 3 + col];
    };
    CHECK(cell(3, 2) == 'a');
    CHECK(cell(2, 2) == '.');
    CHECK(cell(5, 4) == 'a');
    CHECK(cell(0, 7) == 'a');
    CHECK(cell(1, 3) == 'd');
    CHECK(cell(0, 3) == '.');
    CHECK(cell(5, 6) == 'd');
    CHECK(cell(3, 9) == 'd');
    CHECK_THROWS_AS(render_table(TableView(fig1), RenderOptions{5, 200}), std::out_of_range);
}

TEST_CASE("blocks_csv lists labeled blocks") {
    const JointRun two = two_target_run();
    const std::string csv = blocks_csv(TableView(two));
    CHECK(csv.rfind("row,left,right,load,label\n", 0) == 0);
    CHECK(csv.find("15,9,18,8,type1\n") != std::string::npos);

    const JointRun empty(EnumerationTrace({}, 4), EnumerationTrace({}, 4));
    CHECK(blocks_csv(TableView(empty)) == "row,left,right,load,label\n");
}
