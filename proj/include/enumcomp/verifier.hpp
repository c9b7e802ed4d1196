#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "enumcomp/joint_run.hpp"

namespace enumcomp {

/// A violating witness. Checks over stage windows fill (s, t]; checks at a
/// single stage set s == t; row-only checks leave stages at 0.
struct Counterexample {
    Stage s = 0;
    Stage t = 0;
    Value n = 0;

    friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct CheckReport {
    std::string name;
    bool passed = true;
    /// Report-only checks never affect the overall verdict.
    bool asserted = true;
    std::optional<Counterexample> counterexample;
    std::string detail;
    std::map<std::string, double> metrics;
};

/// Monotone prefix map n -> floor(n / 2^shift).
struct PrefixMap {
    unsigned shift = 0;

    Value operator()(Value n) const noexcept { return shift >= 64 ? 0 : n >> shift; }
    std::string name() const;

    static PrefixMap identity() { return {0}; }
    static PrefixMap half() { return {1}; }
    static PrefixMap shifted(unsigned d) { return {d}; }
    /// "id", "half" or "shift:<d>".
    static PrefixMap parse(std::string_view text);
};

/**
 * Checks, for every n and every window (s, t] up to the horizon, that more
 * than c entries of `covered` below n force an entry of `cover` below f(n).
 * Window scan per n is linear: entries of `cover` below f(n) split the clock
 * into gaps, and only the heaviest gap matters.
 */
CheckReport check_covering(const EnumerationTrace& covered, const EnumerationTrace& cover,
                           std::size_t c, PrefixMap f, Stage horizon);

/// A covered by D with constant c and prefix map f.
CheckReport check_covering(const JointRun& run, std::size_t c, PrefixMap f);
/// D covered by A with c = 1 and f = identity.
CheckReport check_gain(const JointRun& run);
/// |D below 2n| <= n for every n; also reports max(|D below n| - |A below n|/2).
CheckReport check_density(const JointRun& run);
/// Every tail load a_n(s) stays <= bound.
CheckReport check_loads(const JointRun& run, std::size_t bound = 8);
/// Per row: 4-loaded closed blocks are at least as many as the others, and
/// the labels agree (type-1/type-2 loaded, type-1 count >= type-3 count).
CheckReport check_block_majority(const JointRun& run);
CheckReport check_subset(const JointRun& run);
/// Each D-value entered A after the last earlier D-change at or below it.
CheckReport check_witness(const JointRun& run);
/// |D in [2^(n-3), 2^(n-2))| <= |A below 2^n| / 16 for every n >= 3.
CheckReport check_strong_intervals(const JointRun& run);

struct VerifyOptions {
    std::optional<std::size_t> c;  // default: 9 for gainless runs, 16 otherwise
    std::optional<PrefixMap> f;    // default: identity for gainless runs, half otherwise
};

/// Names accepted by run_checks().
const std::vector<std::string>& known_checks();
/// Default check list for a run's origin.
std::vector<std::string> default_checks(RunOrigin origin);

/// Runs the named checks concurrently; reports come back sorted by name.
std::vector<CheckReport> run_checks(const JointRun& run, const std::vector<std::string>& names,
                                    const VerifyOptions& options = {});

bool all_asserted_pass(const std::vector<CheckReport>& reports);

}  // namespace enumcomp
