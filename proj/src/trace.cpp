#include "enumcomp/trace.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

namespace enumcomp {

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("position " + std::to_string(position) + ": " + message),
      position_(position) {}

EnumerationTrace::EnumerationTrace(std::vector<Event> events, Stage length)
    : events_(std::move(events)), length_(length) {
    std::unordered_set<Value> seen;
    Stage prev = 0;
    for (const auto& e : events_) {
        if (e.stage == 0) {
            throw std::invalid_argument("trace event at stage 0");
        }
        if (e.stage < prev) {
            throw std::invalid_argument("trace stages must be nondecreasing");
        }
        if (e.stage > length_) {
            throw std::invalid_argument("trace event at stage " + std::to_string(e.stage) +
                                        " beyond length " + std::to_string(length_));
        }
        if (!seen.insert(e.value).second) {
            throw std::invalid_argument("value " + std::to_string(e.value) +
                                        " enumerated twice");
        }
        prev = e.stage;
    }
}

bool EnumerationTrace::one_event_per_stage() const noexcept {
    for (std::size_t i = 1; i < events_.size(); ++i) {
        if (events_[i].stage == events_[i - 1].stage) return false;
    }
    return true;
}

bool EnumerationTrace::is_normalized() const noexcept {
    if (!one_event_per_stage()) return false;
    return std::all_of(events_.begin(), events_.end(),
                       [](const Event& e) { return e.value <= e.stage; });
}

std::optional<Value> EnumerationTrace::max_value() const noexcept {
    if (events_.empty()) return std::nullopt;
    Value best = 0;
    for (const auto& e : events_) best = std::max(best, e.value);
    return best;
}

std::optional<Stage> EnumerationTrace::entry_stage(Value value) const noexcept {
    for (const auto& e : events_) {
        if (e.value == value) return e.stage;
    }
    return std::nullopt;
}

std::vector<Value> EnumerationTrace::members_at(Stage stage) const {
    std::vector<Value> out;
    for (const auto& e : events_) {
        if (e.stage > stage) break;
        out.push_back(e.value);
    }
    std::sort(out.begin(), out.end());
    return out;
}

EnumerationTrace EnumerationTrace::extended(Stage length) const {
    EnumerationTrace copy = *this;
    copy.length_ = std::max(length_, length);
    return copy;
}

std::size_t SetSnapshot::card_below(Value bound) const {
    return static_cast<std::size_t>(
        std::distance(members.begin(), members.lower_bound(bound)));
}

std::string SetSnapshot::prefix(std::size_t length) const {
    std::string out(length, '0');
    for (Value v : members) {
        if (v >= length) break;
        out[v] = '1';
    }
    return out;
}

SetSnapshot snapshot(const EnumerationTrace& trace, Stage stage) {
    SetSnapshot snap;
    snap.stage = stage;
    for (const auto& e : trace.events()) {
        if (e.stage > stage) break;
        snap.members.insert(e.value);
    }
    return snap;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

}  // namespace

EnumerationTrace parse_trace(std::string_view text) {
    text = trim(text);
    if (text.empty()) return EnumerationTrace{};

    std::vector<Event> events;
    std::unordered_set<Value> seen;
    Stage position = 0;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        const auto token =
            trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
        ++position;
        if (token == ".") {
            // idle stage
        } else {
            Value v = 0;
            const auto* first = token.data();
            const auto* last = token.data() + token.size();
            const auto [ptr, ec] = std::from_chars(first, last, v);
            if (token.empty() || ec != std::errc{} || ptr != last) {
                throw ParseError(position, "malformed token '" + std::string(token) + "'");
            }
            if (!seen.insert(v).second) {
                throw ParseError(position, "value " + std::to_string(v) + " repeated");
            }
            events.push_back({position, v});
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return EnumerationTrace(std::move(events), position);
}

std::string render_trace(const EnumerationTrace& trace) {
    if (!trace.one_event_per_stage()) {
        throw std::invalid_argument("render_trace: more than one event on a stage");
    }
    std::ostringstream out;
    auto it = trace.events().begin();
    for (Stage s = 1; s <= trace.length(); ++s) {
        if (s > 1) out << ',';
        if (it != trace.events().end() && it->stage == s) {
            out << it->value;
            ++it;
        } else {
            out << '.';
        }
    }
    return out.str();
}

EnumerationTrace normalize_trace(const EnumerationTrace& trace) {
    std::vector<Event> out;
    out.reserve(trace.size());
    Stage prev = 0;
    for (const auto& e : trace.events()) {
        const Stage stage = std::max({e.stage, prev + 1, e.value, Stage{1}});
        out.push_back({stage, e.value});
        prev = stage;
    }
    return EnumerationTrace(std::move(out), std::max(trace.length(), prev));
}

std::size_t restrict_card(const EnumerationTrace& trace, Stage stage, Value bound) {
    if (stage > trace.length()) {
        throw std::out_of_range("restrict_card: stage " + std::to_string(stage) +
                                " beyond trace length " + std::to_string(trace.length()));
    }
    return window_diff(trace, 0, stage, bound);
}

std::size_t window_diff(const EnumerationTrace& trace, Stage from_stage, Stage to_stage,
                        Value bound) {
    if (from_stage > to_stage || to_stage > trace.length()) {
        throw std::out_of_range("window_diff: invalid window (" + std::to_string(from_stage) +
                                ", " + std::to_string(to_stage) + "] for length " +
                                std::to_string(trace.length()));
    }
    std::size_t count = 0;
    for (const auto& e : trace.events()) {
        if (e.stage > to_stage) break;
        if (e.stage > from_stage && e.value < bound) ++count;
    }
    return count;
}

EnumerationTrace oplus_k(const EnumerationTrace& left, const EnumerationTrace& right,
                         unsigned k) {
    if (k < 2) throw std::invalid_argument("oplus_k requires k >= 2");
    std::vector<Event> raw;
    auto l = left.events().begin();
    auto r = right.events().begin();
    // Merge by stage; left first on ties.
    while (l != left.events().end() || r != right.events().end()) {
        const bool take_left =
            r == right.events().end() || (l != left.events().end() && l->stage <= r->stage);
        if (take_left) {
            raw.push_back({l->stage, Value{k} * l->value});
            ++l;
        } else {
            for (unsigned t = 1; t < k; ++t) {
                raw.push_back({r->stage, Value{k} * r->value + t});
            }
            ++r;
        }
    }
    const Stage length = std::max(left.length(), right.length());
    return normalize_trace(EnumerationTrace(std::move(raw), length));
}

bool oplus_member(const SetSnapshot& left, const SetSnapshot& right, unsigned k, Value m) {
    if (m % k == 0) return left.contains(m / k);
    return right.contains(m / k);
}

std::string oplus_prefix(const SetSnapshot& left, const SetSnapshot& right, unsigned k,
                         std::size_t length) {
    std::string out(length, '0');
    for (std::size_t m = 0; m < length; ++m) {
        if (oplus_member(left, right, k, m)) out[m] = '1';
    }
    return out;
}

GeneratorKind parse_generator_kind(std::string_view name) {
    if (name == "random") return GeneratorKind::Random;
    if (name == "burst") return GeneratorKind::Burst;
    if (name == "adversarial") return GeneratorKind::Adversarial;
    throw std::invalid_argument("unknown generator kind '" + std::string(name) + "'");
}

namespace {

std::vector<Value> random_values(const GeneratorParams& p, std::mt19937_64& rng) {
    std::vector<Value> pool(p.universe);
    std::iota(pool.begin(), pool.end(), Value{0});
    for (std::size_t i = 0; i < p.count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(p.count);
    return pool;
}

// Runs of consecutive unused values, each run ascending or descending.
std::vector<Value> burst_values(const GeneratorParams& p, std::mt19937_64& rng) {
    std::vector<bool> used(p.universe, false);
    std::vector<Value> out;
    std::uniform_int_distribution<Value> start_dist(0, p.universe - 1);
    std::bernoulli_distribution descending(0.5);
    const std::size_t run = std::max<std::size_t>(1, p.run_length);
    while (out.size() < p.count) {
        Value v = start_dist(rng);
        while (used[v]) v = (v + 1) % p.universe;
        std::vector<Value> burst;
        for (Value u = v; u < p.universe && burst.size() < run && !used[u]; ++u) {
            used[u] = true;
            burst.push_back(u);
        }
        if (descending(rng)) std::reverse(burst.begin(), burst.end());
        for (Value u : burst) {
            if (out.size() == p.count) break;
            out.push_back(u);
        }
    }
    return out;
}

// Strided descending sweeps: pass j emits universe-1-j, universe-1-j-stride, ...
// Small values arrive late, which keeps forcing D-changes in low rows.
std::vector<Value> adversarial_values(const GeneratorParams& p) {
    std::vector<Value> out;
    const std::size_t stride = std::max<std::size_t>(1, p.run_length);
    for (std::size_t pass = 0; pass < stride && out.size() < p.count; ++pass) {
        if (pass >= p.universe) break;
        for (Value v = p.universe - 1 - pass;; v -= stride) {
            out.push_back(v);
            if (out.size() == p.count || v < stride) break;
        }
    }
    return out;
}

}  // namespace

EnumerationTrace generate_trace(GeneratorKind kind, const GeneratorParams& params,
                                std::uint64_t seed) {
    if (params.count > params.universe) {
        throw std::invalid_argument("generator: count " + std::to_string(params.count) +
                                    " exceeds universe " + std::to_string(params.universe));
    }
    if (params.count == 0) return EnumerationTrace{};

    std::mt19937_64 rng(seed);
    std::vector<Value> values;
    switch (kind) {
        case GeneratorKind::Random: values = random_values(params, rng); break;
        case GeneratorKind::Burst: values = burst_values(params, rng); break;
        case GeneratorKind::Adversarial: values = adversarial_values(params); break;
    }

    std::vector<Event> raw;
    raw.reserve(values.size());
    std::uniform_int_distribution<Stage> gap(0, params.max_gap);
    Stage stage = 0;
    for (Value v : values) {
        stage += 1 + (params.max_gap > 0 ? gap(rng) : 0);
        raw.push_back({stage, v});
    }
    return normalize_trace(EnumerationTrace(std::move(raw), stage));
}

}  // namespace enumcomp
