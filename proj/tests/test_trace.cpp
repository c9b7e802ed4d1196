#include <doctest.h>

#include <random>
#include <set>

#include "enumcomp/trace.hpp"
#include "fixtures.hpp"

using namespace enumcomp;

namespace {
std::vector<Event> ev(std::initializer_list<std::pair<Stage, Value>> list) {
    std::vector<Event> out;
    for (auto [s, v] : list) out.push_back({s, v});
    return out;
}
}  // namespace

TEST_CASE("parse_trace reads the dot format") {
    auto t = parse_trace(".,3,.,5,.,.,0,.,.");
    CHECK(t.events() == ev({{2, 3}, {4, 5}, {7, 0}}));
    CHECK(t.length() == 9);

    auto single = parse_trace(".");
    CHECK(single.empty());
    CHECK(single.length() == 1);

    auto second = parse_trace(".,.,1,.,.,5,.,.,3");
    CHECK(second.events() == ev({{3, 1}, {6, 5}, {9, 3}}));
    CHECK(second.length() == 9);
}

TEST_CASE("parse_trace reports the failing token") {
    try {
        parse_trace(".,3,x,5");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 3);
    }
    CHECK_THROWS_AS(parse_trace(".,3,3"), ParseError);
}

TEST_CASE("render_trace inverts parse_trace") {
    const std::string text = ".,.,1,.,.,5,.,.,3";
    CHECK(render_trace(parse_trace(text)) == text);
}

TEST_CASE("normalize_trace delays events to the least admissible stage") {
    const auto n = fixtures::counting(12);
    CHECK(normalize_trace(n) == n);

    auto late = normalize_trace(EnumerationTrace(ev({{1, 5}}), 1));
    CHECK(late.events() == ev({{5, 5}}));

    auto pair = normalize_trace(EnumerationTrace(ev({{2, 3}, {2, 7}}), 2));
    CHECK(pair.events() == ev({{3, 3}, {7, 7}}));
    CHECK(pair.is_normalized());
}

TEST_CASE("restrict_card counts members below a bound") {
    const auto a = fixtures::fig1_a();
    CHECK(restrict_card(a, 9, 6) == 3);
    CHECK(restrict_card(a, 9, 0) == 0);
    CHECK(restrict_card(fixtures::counting(16), 16, 16) == 16);
    for (Value b = 0; b < 8; ++b) {
        for (Stage s = 0; s <= 10; ++s) {
            CHECK(restrict_card(a, s, b) == fixtures::naive_count(a, 0, s, b));
        }
    }
}

TEST_CASE("window_diff counts entries in a stage window") {
    const auto a = fixtures::fig1_a();
    CHECK(window_diff(a, 3, 9, 6) == 2);
    CHECK(window_diff(a, 5, 5, 6) == 0);
    CHECK(window_diff(a, 0, 9, 1) == 1);
    for (Stage s = 0; s <= 10; ++s) {
        for (Stage t = s; t <= 10; ++t) {
            CHECK(window_diff(a, s, t, 6) == fixtures::naive_count(a, s, t, 6));
        }
    }
}

TEST_CASE("oplus_k interleaves two sets") {
    auto members = [](const EnumerationTrace& t) {
        auto m = t.members();
        return std::set<Value>(m.begin(), m.end());
    };
    auto left01 = EnumerationTrace(ev({{1, 0}, {2, 1}}), 2);
    CHECK(members(oplus_k(left01, EnumerationTrace(), 2)) == std::set<Value>{0, 2});
    CHECK(members(oplus_k(EnumerationTrace(), EnumerationTrace(ev({{1, 0}}), 1), 2)) ==
          std::set<Value>{1});
    auto l1 = EnumerationTrace(ev({{1, 1}}), 1);
    auto r0 = EnumerationTrace(ev({{1, 0}}), 1);
    CHECK(members(oplus_k(l1, r0, 3)) == std::set<Value>{1, 2, 3});
    CHECK(oplus_k(l1, r0, 3).is_normalized());
    CHECK_THROWS(oplus_k(l1, r0, 1));
}

TEST_CASE("oplus_member agrees with the residue formula on random sets") {
    std::mt19937_64 rng(7);
    for (unsigned k = 2; k <= 4; ++k) {
        std::vector<bool> l(100), r(100);
        SetSnapshot ls, rs;
        for (Value i = 0; i < 100; ++i) {
            if (rng() % 3 == 0) { l[i] = true; ls.members.insert(i); }
            if (rng() % 2 == 0) { r[i] = true; rs.members.insert(i); }
        }
        for (Value m = 0; m < 256; ++m) {
            CHECK(oplus_member(ls, rs, k, m) == fixtures::naive_oplus(l, r, k, m));
        }
        const auto prefix = oplus_prefix(ls, rs, k, 20);
        CHECK(prefix.size() == 20);
        CHECK((prefix[0] == '1') == l[0]);
    }
}

TEST_CASE("generate_trace honours its contract") {
    GeneratorParams none{0, 10, 8, 0};
    CHECK(generate_trace(GeneratorKind::Random, none, 3).empty());

    GeneratorParams p{8, 8, 8, 0};
    auto burst = generate_trace(GeneratorKind::Burst, p, 11);
    auto values = burst.members();
    CHECK(values.size() == 8);
    for (Value v : values) CHECK(v < 8);

    for (auto kind : {GeneratorKind::Random, GeneratorKind::Burst, GeneratorKind::Adversarial}) {
        GeneratorParams q{300, 1000, 6, 2};
        auto x = generate_trace(kind, q, 99);
        CHECK(x == generate_trace(kind, q, 99));
        CHECK(x.is_normalized());
        CHECK(x.size() == 300);
    }
    CHECK_THROWS(generate_trace(GeneratorKind::Random, GeneratorParams{5, 4, 1, 0}, 1));
    CHECK_THROWS(parse_generator_kind("gauss"));
}

TEST_CASE("snapshot exposes prefixes") {
    auto s = snapshot(fixtures::fig1_a(), 4);
    CHECK(s.members == std::set<Value>{3, 5});
    CHECK(s.prefix(6) == "000101");
    CHECK(s.card_below(5) == 1);
}
