#include "enumcomp/joint_run.hpp"

#include <algorithm>
#include <stdexcept>

namespace enumcomp {

std::string_view to_string(StageKind kind) {
    switch (kind) {
        case StageKind::Idle: return "idle";
        case StageKind::AStage: return "A";
        case StageKind::DStage: return "D";
        case StageKind::Both: return "AD";
    }
    return "idle";
}

std::string_view to_string(RunOrigin origin) {
    switch (origin) {
        case RunOrigin::Manual: return "manual";
        case RunOrigin::Strong: return "strong";
        case RunOrigin::Gainless: return "gainless";
    }
    return "manual";
}

RunOrigin parse_run_origin(std::string_view name) {
    if (name == "manual") return RunOrigin::Manual;
    if (name == "strong") return RunOrigin::Strong;
    if (name == "gainless") return RunOrigin::Gainless;
    throw std::invalid_argument("unknown run origin '" + std::string(name) + "'");
}

JointRun::JointRun(EnumerationTrace a, EnumerationTrace d, RunOrigin origin)
    : origin_(origin) {
    const Stage length = std::max(a.length(), d.length());
    a_ = a.extended(length);
    d_ = d.extended(length);
    if (!a_.one_event_per_stage() || !d_.one_event_per_stage()) {
        throw std::invalid_argument("joint run: each set enumerates at most once per stage");
    }
    kinds_.assign(length + 1, StageKind::Idle);
    for (const auto& e : a_.events()) kinds_[e.stage] = StageKind::AStage;
    for (const auto& e : d_.events()) {
        if (kinds_[e.stage] == StageKind::AStage) {
            if (origin_ != RunOrigin::Strong) {
                throw std::invalid_argument("joint run: A and D both enumerate at stage " +
                                            std::to_string(e.stage));
            }
            kinds_[e.stage] = StageKind::Both;
        } else {
            kinds_[e.stage] = StageKind::DStage;
        }
    }
}

StageKind JointRun::kind_at(Stage stage) const {
    if (stage >= kinds_.size()) throw std::out_of_range("stage beyond run length");
    return kinds_[stage];
}

JointRun JointRun::extended(Stage length) const {
    return JointRun(a_.extended(length), d_.extended(length), origin_);
}

}  // namespace enumcomp
