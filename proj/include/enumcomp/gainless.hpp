#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "enumcomp/joint_run.hpp"

namespace enumcomp {

/// The row interval [n, m] certifying one D-enumeration: m was the least
/// 8-loaded row and n the least row such that every row in [n, m] was
/// 4-loaded. `enumerated` is always n.
struct TargetRecord {
    Stage stage = 0;
    Value n = 0;
    Value m = 0;
    Value enumerated = 0;

    friend bool operator==(const TargetRecord&, const TargetRecord&) = default;
};

/// Where an input A-event landed on the output clock.
struct StageMapEntry {
    Stage input_stage = 0;
    Stage output_stage = 0;
    Value value = 0;

    friend bool operator==(const StageMapEntry&, const StageMapEntry&) = default;
};

class GainlessInvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline constexpr std::uint32_t kClearLoad = 8;
inline constexpr std::uint32_t kTargetLoad = 4;

/**
 * Streaming form of the gainless construction.
 *
 * Each call to step() is one output stage. A value passed in is queued and
 * released at the next A-stage; a stage that ends with an 8-loaded row turns
 * the following stage into a D-stage, which pushes queued A-values back by
 * one stage. Tail loads of all rows up to the largest value seen are kept
 * incrementally.
 */
class GainlessCompressor {
public:
    struct StepOutput {
        Stage stage = 0;
        StageKind kind = StageKind::Idle;
        std::optional<Event> a_event;
        std::optional<Event> d_event;
        std::optional<TargetRecord> target;
    };

    StepOutput step(std::optional<Value> next_a_value);

    /// No queued A-values and no pending D-stage.
    bool settled() const noexcept { return queue_.empty() && !pending_; }
    Stage stage() const noexcept { return stage_; }

    /// Current tail load a_row(stage) for rows [0, max value seen].
    const std::vector<std::uint32_t>& loads() const noexcept { return loads_; }
    std::uint32_t load(Value row) const noexcept;

    const std::vector<Event>& a_events() const noexcept { return a_events_; }
    const std::vector<Event>& d_events() const noexcept { return d_events_; }
    const std::vector<TargetRecord>& targets() const noexcept { return targets_; }
    const std::vector<StageMapEntry>& stage_map() const noexcept { return stage_map_; }

    JointRun run() const;

private:
    struct Queued {
        Value value;
        Stage input_stage;
    };
    struct Request {
        Value n;
        Value m;
    };

    void apply_a(Value v);
    void apply_d(Value n);
    std::optional<Request> find_target() const;

    Stage stage_ = 0;
    Stage inputs_seen_ = 0;
    std::deque<Queued> queue_;
    std::optional<Request> pending_;
    std::vector<std::uint32_t> loads_;
    std::vector<bool> in_a_;
    std::vector<bool> in_d_;
    std::vector<Event> a_events_;
    std::vector<Event> d_events_;
    std::vector<TargetRecord> targets_;
    std::vector<StageMapEntry> stage_map_;
};

struct GainlessResult {
    JointRun run;
    std::vector<TargetRecord> targets;
    std::vector<StageMapEntry> stage_map;
};

/// Feeds the input one stage per step (idle stages included), then keeps
/// stepping until the queue is empty and no D-stage is pending.
GainlessResult compress_gainless(const EnumerationTrace& a);

}  // namespace enumcomp
