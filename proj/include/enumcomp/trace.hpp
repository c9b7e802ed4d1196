#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace enumcomp {

using Stage = std::uint64_t;
using Value = std::uint64_t;

struct Event {
    Stage stage = 0;
    Value value = 0;

    friend bool operator==(const Event&, const Event&) = default;
};

/// Error raised by the text and JSONL trace readers; position is the 1-based
/// token (or line) that failed.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& message);

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/**
 * Stage-indexed enumeration of a finite set of naturals.
 *
 * Events are kept in enumeration order. Stages start at 1 and are
 * nondecreasing; a raw trace may carry several events on one stage, which
 * normalize_trace() serializes. Values are pairwise distinct.
 */
class EnumerationTrace {
public:
    EnumerationTrace() = default;
    EnumerationTrace(std::vector<Event> events, Stage length);

    const std::vector<Event>& events() const noexcept { return events_; }
    Stage length() const noexcept { return length_; }
    bool empty() const noexcept { return events_.empty(); }
    std::size_t size() const noexcept { return events_.size(); }

    /// At most one event per stage and value <= stage for every event.
    bool is_normalized() const noexcept;
    bool one_event_per_stage() const noexcept;

    std::optional<Value> max_value() const noexcept;
    std::optional<Stage> entry_stage(Value value) const noexcept;

    /// Members enumerated at or before `stage`, ascending.
    std::vector<Value> members_at(Stage stage) const;
    std::vector<Value> members() const { return members_at(length_); }

    /// Same events, clock padded with idle stages up to `length`.
    EnumerationTrace extended(Stage length) const;

    friend bool operator==(const EnumerationTrace&, const EnumerationTrace&) = default;

private:
    std::vector<Event> events_;
    Stage length_ = 0;
};

/// A_s: the members of a trace at one stage.
struct SetSnapshot {
    std::set<Value> members;
    Stage stage = 0;

    bool contains(Value v) const { return members.count(v) != 0; }
    std::size_t card_below(Value bound) const;
    /// Characteristic string of the first `length` bits, '0'/'1'.
    std::string prefix(std::size_t length) const;
};

SetSnapshot snapshot(const EnumerationTrace& trace, Stage stage);

/// Parses the comma-separated dot format, e.g. ".,3,.,5,.,.,0,.,.".
EnumerationTrace parse_trace(std::string_view text);
/// Inverse of parse_trace; requires at most one event per stage.
std::string render_trace(const EnumerationTrace& trace);

/// Delays every event to the least admissible stage so that stages are
/// strictly increasing and value <= stage. Enumeration order is kept.
EnumerationTrace normalize_trace(const EnumerationTrace& trace);

/// |X_stage restricted to [0, bound)|.
std::size_t restrict_card(const EnumerationTrace& trace, Stage stage, Value bound);

/// Number of values below `bound` entering in the stage window (from, to].
std::size_t window_diff(const EnumerationTrace& trace, Stage from_stage, Stage to_stage,
                        Value bound);

/// k-fold join: left value i becomes k*i, right value j becomes k*j+t for
/// t = 1..k-1 (emitted consecutively). The result is normalized.
EnumerationTrace oplus_k(const EnumerationTrace& left, const EnumerationTrace& right,
                         unsigned k);

bool oplus_member(const SetSnapshot& left, const SetSnapshot& right, unsigned k, Value m);
/// First `length` bits of left (+)_k right as a '0'/'1' string.
std::string oplus_prefix(const SetSnapshot& left, const SetSnapshot& right, unsigned k,
                         std::size_t length);

enum class GeneratorKind { Random, Burst, Adversarial };

struct GeneratorParams {
    std::size_t count = 0;      // number of values to enumerate
    Value universe = 0;         // values are drawn from [0, universe)
    std::size_t run_length = 8; // burst / adversarial stride
    Stage max_gap = 0;          // random idle stages inserted between events
};

GeneratorKind parse_generator_kind(std::string_view name);

/// Deterministic for a fixed (kind, params, seed); the output is normalized.
EnumerationTrace generate_trace(GeneratorKind kind, const GeneratorParams& params,
                                std::uint64_t seed);

}  // namespace enumcomp
