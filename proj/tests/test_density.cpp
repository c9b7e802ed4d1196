#include <doctest.h>

#include "enumcomp/density.hpp"
#include "fixtures.hpp"

using namespace enumcomp;
using namespace enumcomp::density;
using nlohmann::json;

namespace {

std::vector<Value> d_values(const DensityResult& r) {
    std::vector<Value> out;
    for (const auto& e : r.d.events()) out.push_back(e.value);
    return out;
}

Scenario base(std::size_t cap, Stage horizon) {
    Scenario s;
    s.name = "unit";
    s.length_cap = cap;
    s.horizon = horizon;
    return s;
}

}  // namespace

TEST_CASE("shipped scenarios") {
    const auto empty = load_scenario_file(fixtures::source_path("scenarios/empty-family.json"));
    CHECK(empty.requirement_count() == 0);
    CHECK(run_construction(empty).d.empty());

    const auto p0 = load_scenario_file(fixtures::source_path("scenarios/p0-dominant.json"));
    const auto rp = run_construction(p0);
    CHECK(rp.d.events() == p0.a_star.events());
    for (const auto& act : rp.log) {
        CHECK(act.requirement == 'P');
        CHECK(act.e == std::size_t{0});
        CHECK(act.guard == -1);
        CHECK(act.enumerated);
    }

    const auto n0 = load_scenario_file(fixtures::source_path("scenarios/n0-dominant.json"));
    const auto rn = run_construction(n0);
    CHECK(rn.d.empty());
    REQUIRE_FALSE(rn.log.empty());
    for (const auto& act : rn.log) {
        CHECK(act.requirement == 'N');
        CHECK_FALSE(act.enumerated);
    }
}

TEST_CASE("agreement lengths") {
    Scenario s = base(8, 3);
    s.functionals.push_back({FunctionalKind::Empty, 1, {}});
    s.b = EnumerationTrace({{1, 3}}, 1);
    s.validate();
    const auto r = run_construction(s);
    for (auto p : r.p[0]) CHECK(p == 0);

    // Identity: B = {0,3} against B* (+) D = {0} agree on exactly 3 bits.
    Scenario id = base(8, 2);
    id.functionals.push_back({FunctionalKind::Identity, 1, {}});
    id.b = EnumerationTrace({{1, 0}, {1, 3}}, 1);
    id.b_star = EnumerationTrace({{1, 0}}, 1);
    CHECK(match_p(id, EnumerationTrace(), 0, 1) == 3);
    // Every set is empty at stage 0, so the running maximum starts at the cap.
    CHECK(run_construction(id).p[0].front() == 8);
}

TEST_CASE("a three-stage toy table grows the match 0, 2, 5") {
    Scenario s = base(8, 2);
    s.b = EnumerationTrace({{1, 1}}, 1);
    FunctionalApprox f{FunctionalKind::Table, 1, {}};
    f.entries = {{1, "0", "0"}, {1, "01", "00"}, {2, "010", "000"}, {2, "0100", "0000"}, {2, "01000", "00000"}};
    s.functionals.push_back(f);
    const auto r = run_construction(s);
    CHECK(r.p[0] == std::vector<std::size_t>{0, 2, 5});
}

TEST_CASE("scenario validation lists every problem") {
    const json bad = json::parse(R"({
      "name": "bad", "mode": "K", "caps": {"length": 4, "horizon": 5},
      "traces": {"Astar": [[1, 9], [1, 2]]},
      "requirements": 1,
      "complexity_tables": {"K": {"entries": [
        {"string": "01", "stage": 1, "value": 2},
        {"string": "01", "stage": 3, "value": 5}]}}
    })");
    try {
        load_scenario(bad);
        FAIL("invalid scenario accepted");
    } catch (const ScenarioError& e) {
        CHECK(e.problems().size() >= 3);
        const std::string all = e.what();
        CHECK(all.find("'01' increases at stage 3") != std::string::npos);
        CHECK(all.find("one value per stage") != std::string::npos);
        CHECK(all.find("Astar value 9") != std::string::npos);
    }

    const json missing = json::parse(R"({"mode": "C", "caps": {"length": 4, "horizon": 4}, "requirements": 1})");
    CHECK_THROWS_AS(load_scenario(missing), ScenarioError);

    const json minimal = json::parse(R"({"caps": {"length": 2, "horizon": 2}})");
    CHECK(load_scenario(minimal).requirement_count() == 0);

    const json over_bound = json::parse(R"({"caps": {"length": 2, "horizon": 2},
      "functionals": [{"kind": "table", "bound": 1, "entries": [
        {"stage": 1, "input": "0", "output": "0"}, {"stage": 1, "input": "0", "output": "1"}]}]})");
    CHECK_THROWS_AS(load_scenario(over_bound), ScenarioError);
}

TEST_CASE("complexity approximations") {
    ComplexityApprox k;
    k.entries = {{"01", 1, 5}, {"01", 4, 3}};
    CHECK(k.at("01", 2) == 5);
    CHECK(k.at("01", 4) == 3);
    CHECK_THROWS_AS(k.at("1", 4), UndefinedError);
    k.fallback = ComplexityApprox::Default{2, 1};
    CHECK(k.at("111", 0) == 5);
}

TEST_CASE("p and q never decrease on random scenarios") {
    std::size_t modes[3] = {0, 0, 0};
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const Scenario s = make_random_scenario(seed);
        ++modes[static_cast<int>(s.mode)];
        const auto r = run_construction(s);
        for (std::size_t e = 0; e < r.p.size(); ++e) {
            REQUIRE(r.p[e].size() == s.horizon + 1);
            for (std::size_t t = 1; t < r.p[e].size(); ++t) {
                CHECK(r.p[e][t - 1] <= r.p[e][t]);
                CHECK(r.q[e][t - 1] <= r.q[e][t]);
            }
        }
        // D only takes A* values, each from a P-requirement above its guard.
        const auto star = s.a_star.members();
        for (const auto& act : r.log) {
            if (!act.enumerated) continue;
            CHECK(act.requirement == 'P');
            CHECK(static_cast<std::int64_t>(act.a) > act.guard);
            CHECK(std::find(star.begin(), star.end(), act.a) != star.end());
        }
        CHECK(d_values(r).size() <= star.size());
    }
    CHECK(modes[0] > 0);
    CHECK(modes[1] + modes[2] > 0);
}

TEST_CASE("scenarios round-trip through JSON") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Scenario s = make_random_scenario(seed);
        const Scenario back = load_scenario(scenario_to_json(s));
        CHECK(back.a_star.events() == s.a_star.events());
        CHECK(back.mode == s.mode);
        CHECK(scenario_to_json(back) == scenario_to_json(s));
    }
}

TEST_CASE("result JSON names its frame of reference") {
    const auto p0 = load_scenario_file(fixtures::source_path("scenarios/p0-dominant.json"));
    const json j = to_json(run_construction(p0), p0);
    CHECK(j.at("relative_to") == "supplied family");
    CHECK(j.at("D").size() == p0.a_star.size());
}
