#pragma once

// Shared fixtures and brute-force oracles. The oracles scan definitions
// directly and share no code with the library beyond the data types.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "enumcomp/joint_run.hpp"
#include "enumcomp/trace.hpp"

namespace fixtures {

using enumcomp::Event;
using enumcomp::EnumerationTrace;
using enumcomp::JointRun;
using enumcomp::Stage;
using enumcomp::Value;

inline std::string source_path(const std::string& rel) {
    return std::string(ENUMCOMP_SOURCE_DIR) + "/" + rel;
}

/// Value i at stage i+1 for i < count.
inline EnumerationTrace counting(Value count) {
    std::vector<Event> ev;
    for (Value i = 0; i < count; ++i) ev.push_back({static_cast<Stage>(i + 1), i});
    return EnumerationTrace(ev, static_cast<Stage>(count));
}

/// 0..7 at stages 1..8, then 8..15 at stages 10..17.
inline EnumerationTrace two_burst() {
    std::vector<Event> ev;
    for (Value i = 0; i < 8; ++i) ev.push_back({static_cast<Stage>(i + 1), i});
    for (Value i = 8; i < 16; ++i) ev.push_back({static_cast<Stage>(i + 2), i});
    return EnumerationTrace(ev, 17);
}

inline EnumerationTrace fig1_a() { return enumcomp::parse_trace(".,3,.,5,.,.,0,.,.").extended(10); }
inline EnumerationTrace fig1_d() { return enumcomp::parse_trace(".,.,1,.,.,5,.,.,3").extended(10); }
inline JointRun fig1_run() { return JointRun(fig1_a(), fig1_d()); }

inline std::size_t naive_count(const EnumerationTrace& t, Stage from, Stage to, Value bound) {
    std::size_t n = 0;
    for (const auto& e : t.events()) {
        if (e.stage > from && e.stage <= to && e.value < bound) ++n;
    }
    return n;
}

/// Largest t < stage with a D-event <= row at t, else 0.
inline Stage naive_last_change(const EnumerationTrace& d, Value row, Stage stage) {
    Stage best = 0;
    for (const auto& e : d.events()) {
        if (e.value <= row && e.stage < stage) best = std::max(best, e.stage);
    }
    return best;
}

inline std::size_t naive_tail_load(const JointRun& run, Value row, Stage stage) {
    return naive_count(run.a(), naive_last_change(run.d(), row, stage), stage, row + 1);
}

struct Witness {
    Stage s;
    Stage t;
    Value n;
};

/// Every n and every window (s, t]: more than c covered entries below n
/// force a cover entry below f(n).
template <class F>
std::optional<Witness> naive_covering(const EnumerationTrace& covered, const EnumerationTrace& cover,
                                      std::size_t c, F f, Stage horizon) {
    Value top = 1;
    for (const auto& e : covered.events()) top = std::max(top, e.value + 2);
    for (Value n = 0; n <= top; ++n) {
        for (Stage s = 0; s < horizon; ++s) {
            for (Stage t = s + 1; t <= horizon; ++t) {
                if (naive_count(covered, s, t, n) > c && naive_count(cover, s, t, f(n)) == 0) {
                    return Witness{s, t, n};
                }
            }
        }
    }
    return std::nullopt;
}

inline bool naive_oplus(const std::vector<bool>& left, const std::vector<bool>& right, unsigned k,
                        Value m) {
    const Value q = m / k;
    const auto in = [](const std::vector<bool>& s, Value v) { return v < s.size() && s[v]; };
    return m % k == 0 ? in(left, q) : in(right, q);
}

}  // namespace fixtures
