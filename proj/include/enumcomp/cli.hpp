#pragma once

#include <iosfwd>

namespace enumcomp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the enumcomp tool. Subcommands: compress, verify, table,
/// game {solve, play, replay}, density run, serve, report.
/// Returns 0 on success, 1 when an asserted check fails, 2 on usage or input errors.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                 std::istream& in);
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace enumcomp
