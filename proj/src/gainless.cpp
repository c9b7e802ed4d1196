#include "enumcomp/gainless.hpp"

#include <algorithm>

namespace enumcomp {

std::uint32_t GainlessCompressor::load(Value row) const noexcept {
    if (loads_.empty()) return 0;
    return row < loads_.size() ? loads_[row] : loads_.back();
}

void GainlessCompressor::apply_a(Value v) {
    if (v >= loads_.size()) {
        // Rows above the largest value seen share the load of that row.
        const std::uint32_t fill = loads_.empty() ? 0 : loads_.back();
        loads_.resize(v + 1, fill);
        in_a_.resize(v + 1, false);
        in_d_.resize(v + 1, false);
    }
    if (in_a_[v]) {
        throw GainlessInvariantError("value " + std::to_string(v) + " enumerated into A twice");
    }
    in_a_[v] = true;
    for (Value r = v; r < loads_.size(); ++r) ++loads_[r];
    a_events_.push_back({stage_, v});
}

void GainlessCompressor::apply_d(Value n) {
    if (n >= in_d_.size() || !in_a_[n]) {
        throw GainlessInvariantError("D-request " + std::to_string(n) + " is not in A");
    }
    if (in_d_[n]) {
        throw GainlessInvariantError("value " + std::to_string(n) + " requested into D twice");
    }
    in_d_[n] = true;
    std::fill(loads_.begin() + static_cast<std::ptrdiff_t>(n), loads_.end(), 0u);
    d_events_.push_back({stage_, n});
}

std::optional<GainlessCompressor::Request> GainlessCompressor::find_target() const {
    const auto hit = std::find_if(loads_.begin(), loads_.end(),
                                  [](std::uint32_t l) { return l >= kClearLoad; });
    if (hit == loads_.end()) return std::nullopt;
    const Value m = static_cast<Value>(hit - loads_.begin());
    Value n = m;
    while (n > 0 && loads_[n - 1] >= kTargetLoad) --n;
    return Request{n, m};
}

GainlessCompressor::StepOutput GainlessCompressor::step(std::optional<Value> next_a_value) {
    ++stage_;
    ++inputs_seen_;
    if (next_a_value) queue_.push_back({*next_a_value, inputs_seen_});

    StepOutput out;
    out.stage = stage_;
    if (pending_) {
        const Request req = *pending_;
        pending_.reset();
        apply_d(req.n);
        const TargetRecord target{stage_, req.n, req.m, req.n};
        targets_.push_back(target);
        out.kind = StageKind::DStage;
        out.d_event = Event{stage_, req.n};
        out.target = target;
        if (auto left = find_target()) {
            throw GainlessInvariantError("row " + std::to_string(left->m) +
                                         " still 8-loaded after D-stage " +
                                         std::to_string(stage_));
        }
        return out;
    }
    if (!queue_.empty()) {
        const Queued q = queue_.front();
        queue_.pop_front();
        apply_a(q.value);
        stage_map_.push_back({q.input_stage, stage_, q.value});
        out.kind = StageKind::AStage;
        out.a_event = Event{stage_, q.value};
        pending_ = find_target();
    }
    return out;
}

JointRun GainlessCompressor::run() const {
    return JointRun(EnumerationTrace(a_events_, stage_), EnumerationTrace(d_events_, stage_),
                    RunOrigin::Gainless);
}

GainlessResult compress_gainless(const EnumerationTrace& a) {
    if (!a.is_normalized()) {
        throw std::invalid_argument("compress_gainless: input trace must be normalized");
    }
    GainlessCompressor c;
    auto next = a.events().begin();
    for (Stage s = 1; s <= a.length(); ++s) {
        if (next != a.events().end() && next->stage == s) {
            c.step(next->value);
            ++next;
        } else {
            c.step(std::nullopt);
        }
    }
    while (!c.settled()) c.step(std::nullopt);
    return {c.run(), c.targets(), c.stage_map()};
}

}  // namespace enumcomp
