#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "enumcomp/trace.hpp"

namespace enumcomp {

enum class StageKind { Idle, AStage, DStage, Both };

/// Which construction produced a run. Block labels are only defined for
/// gainless runs; strong runs may enumerate into A and D on the same stage.
enum class RunOrigin { Manual, Strong, Gainless };

std::string_view to_string(StageKind kind);
std::string_view to_string(RunOrigin origin);
RunOrigin parse_run_origin(std::string_view name);

/// Two synchronized enumerations (A, D) on a common clock.
class JointRun {
public:
    JointRun() = default;
    JointRun(EnumerationTrace a, EnumerationTrace d, RunOrigin origin = RunOrigin::Manual);

    const EnumerationTrace& a() const noexcept { return a_; }
    const EnumerationTrace& d() const noexcept { return d_; }
    RunOrigin origin() const noexcept { return origin_; }
    Stage length() const noexcept { return a_.length(); }

    /// Index 0 is always Idle; size is length()+1.
    const std::vector<StageKind>& stage_kinds() const noexcept { return kinds_; }
    StageKind kind_at(Stage stage) const;

    JointRun extended(Stage length) const;

    friend bool operator==(const JointRun& x, const JointRun& y) {
        return x.a_ == y.a_ && x.d_ == y.d_ && x.origin_ == y.origin_;
    }

private:
    EnumerationTrace a_;
    EnumerationTrace d_;
    RunOrigin origin_ = RunOrigin::Manual;
    std::vector<StageKind> kinds_{StageKind::Idle};
};

}  // namespace enumcomp
