#include <doctest.h>

#include <set>

#include "enumcomp/gainless.hpp"
#include "enumcomp/table.hpp"
#include "fixtures.hpp"

using namespace enumcomp;

namespace {

// a_row at the end of stage s: A-entries <= row after the last D-change at or below row.
std::size_t load_after(const JointRun& run, Value row, Stage s) {
    Stage last = 0;
    for (const auto& e : run.d().events()) {
        if (e.value <= row && e.stage <= s) last = std::max(last, e.stage);
    }
    return fixtures::naive_count(run.a(), last, s, row + 1);
}

}  // namespace

TEST_CASE("gainless compression of the empty trace") {
    const auto r = compress_gainless(EnumerationTrace({}, 4));
    CHECK(r.run.d().empty());
    CHECK(r.targets.empty());
    CHECK(r.run.length() == 4);
}

TEST_CASE("two-burst fixture") {
    const auto r = compress_gainless(fixtures::two_burst());
    CHECK(r.run.d().events() == (std::vector<Event>{{9, 3}, {18, 11}}));
    REQUIRE(r.targets.size() == 2);
    CHECK(r.targets[0] == TargetRecord{9, 3, 7, 3});
    CHECK(r.targets[1] == TargetRecord{18, 11, 15, 11});
    CHECK(r.run.origin() == RunOrigin::Gainless);
    CHECK(r.run.kind_at(9) == StageKind::DStage);
    CHECK(r.run.kind_at(10) == StageKind::AStage);
    // The idle input stage 9 is kept; the D-stage does not delay anything here.
    CHECK(r.stage_map.back() == StageMapEntry{17, 17, 15});
}

TEST_CASE("stepping through the first burst") {
    GainlessCompressor c;
    for (Value v = 0; v < 8; ++v) {
        const auto out = c.step(v);
        CHECK(out.a_event == Event{v + 1, v});
        CHECK_FALSE(out.d_event);
    }
    CHECK(c.load(7) == 8);
    CHECK(c.load(2) == 3);
    const auto out = c.step(std::nullopt);
    CHECK(out.kind == StageKind::DStage);
    CHECK(out.d_event == Event{9, 3});
    CHECK(out.target == TargetRecord{9, 3, 7, 3});
    CHECK(c.settled());

    const auto idle = c.step(std::nullopt);
    CHECK(idle.kind == StageKind::Idle);
    CHECK_FALSE(idle.a_event);
    CHECK_FALSE(idle.d_event);
    CHECK(idle.stage == 10);
}

TEST_CASE("a D-stage pushes queued input back by one stage") {
    // 0..7 then 8 arriving right after the eighth value.
    std::vector<Event> ev;
    for (Value i = 0; i < 9; ++i) ev.push_back({i + 1, i});
    const auto r = compress_gainless(EnumerationTrace(ev, 9));
    CHECK(r.run.d().events() == std::vector<Event>{{9, 3}});
    CHECK(r.stage_map.back() == StageMapEntry{9, 10, 8});
    CHECK(r.run.length() == 10);
}

TEST_CASE("streaming and batch runs agree") {
    const auto a = generate_trace(GeneratorKind::Burst, GeneratorParams{300, 600, 8, 1}, 3);
    const auto batch = compress_gainless(a);
    GainlessCompressor c;
    auto it = a.events().begin();
    for (Stage s = 1; s <= a.length(); ++s) {
        if (it != a.events().end() && it->stage == s) {
            c.step((it++)->value);
        } else {
            c.step(std::nullopt);
        }
    }
    while (!c.settled()) c.step(std::nullopt);
    CHECK(c.run() == batch.run);
    CHECK(c.targets() == batch.targets);
    CHECK(c.stage_map() == batch.stage_map);
}

TEST_CASE("incremental loads match the tail-load definition and targets are least") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto kind = seed % 2 ? GeneratorKind::Burst : GeneratorKind::Random;
        const auto a = generate_trace(kind, GeneratorParams{120, 160, 6, 0}, seed);
        GainlessCompressor c;
        auto it = a.events().begin();
        std::size_t seen_targets = 0;
        for (Stage s = 1; s <= a.length() || !c.settled(); ++s) {
            std::optional<Value> next;
            if (it != a.events().end() && it->stage == s) next = (it++)->value;
            // Loads just before this step decide any target emitted by it.
            const JointRun before = c.run();
            const Stage prev = c.stage();
            const auto out = c.step(next);
            const JointRun after = c.run();
            for (Value r = 0; r < c.loads().size(); ++r) {
                REQUIRE(c.load(r) == load_after(after, r, s));
            }
            if (out.target) {
                ++seen_targets;
                const auto& t = *out.target;
                CHECK(load_after(before, t.m, prev) >= kClearLoad);
                for (Value r = 0; r < t.m; ++r) CHECK(load_after(before, r, prev) < kClearLoad);
                for (Value r = t.n; r <= t.m; ++r) CHECK(load_after(before, r, prev) >= kTargetLoad);
                if (t.n > 0) CHECK(load_after(before, t.n - 1, prev) < kTargetLoad);
            }
            if (c.settled()) {
                for (Value r = 0; r < c.loads().size(); ++r) CHECK(c.load(r) <= kClearLoad);
            }
        }
        CHECK(seen_targets == c.targets().size());
        // The table's own tail_load agrees on the final run.
        const JointRun run = c.run();
        TableView v(run);
        for (Value r = 0; r < v.universe(); r += 7) {
            CHECK(v.tail_load(r, run.length()) == fixtures::naive_tail_load(run, r, run.length()));
        }
    }
}

TEST_CASE("D is a subset of A without repeats") {
    const auto a = generate_trace(GeneratorKind::Adversarial, GeneratorParams{500, 1000, 16, 0}, 1);
    const auto r = compress_gainless(a);
    const auto a_members = r.run.a().members();
    const std::set<Value> a_set(a_members.begin(), a_members.end());
    std::set<Value> d_set;
    for (const auto& e : r.run.d().events()) {
        CHECK(a_set.count(e.value) == 1);
        CHECK(d_set.insert(e.value).second);
    }
    CHECK(a_set.size() == 500);
}

TEST_CASE("gainless compression rejects raw traces") {
    CHECK_THROWS_AS(compress_gainless(EnumerationTrace({{1, 4}}, 1)), std::invalid_argument);
}
