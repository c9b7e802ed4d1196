#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "enumcomp/trace.hpp"

namespace enumcomp::density {

enum class Mode { RK, K, C };
std::string_view to_string(Mode m);
Mode parse_mode(std::string_view name);

/// Every invariant violation found while loading a scenario, one per line.
class ScenarioError : public std::invalid_argument {
public:
    explicit ScenarioError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

/// A value or string beyond the declared length cap was needed.
class CapError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// An approximation table has no value at a point the construction needs.
class UndefinedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class FunctionalKind { Table, Identity, Total, Empty, Zeros };

struct FunctionalEntry {
    Stage stage = 0;
    std::string input;
    std::string output;
};

/**
 * Stage-approximated operator on binary strings. A table entry puts
 * `output` into Phi_t(input) for every t >= stage. Identity, total, empty and
 * zeros are closed forms: {s}, all strings of length |s|, nothing, {0^|s|}.
 */
struct FunctionalApprox {
    FunctionalKind kind = FunctionalKind::Empty;
    std::size_t bound = 1;
    std::vector<FunctionalEntry> entries;

    bool contains(const std::string& input, const std::string& candidate, Stage t) const;
};

/// K_t(s): the latest entry for s with stage <= t, else base + per_bit*|s|
/// when a default is declared. Nonincreasing in t.
struct ComplexityApprox {
    struct Entry {
        std::string string;
        Stage stage = 0;
        std::uint64_t value = 0;
    };
    struct Default {
        std::uint64_t base = 0;
        std::uint64_t per_bit = 1;
    };
    std::vector<Entry> entries;
    std::optional<Default> fallback;

    std::uint64_t at(const std::string& s, Stage t) const;
};

struct Scenario {
    std::string name;
    Mode mode = Mode::RK;
    std::size_t length_cap = 16;
    Stage horizon = 16;
    EnumerationTrace a;
    EnumerationTrace a_star;
    EnumerationTrace b;
    EnumerationTrace b_star;
    std::vector<FunctionalApprox> functionals;  // rK mode: requirement e uses functional e
    std::size_t requirements = 0;                // K and C modes: e = 0..requirements-1
    std::map<std::string, ComplexityApprox> complexity;  // keys "K" and/or "C"

    /// Number of requirement pairs (P_e, N_e).
    std::size_t requirement_count() const;
    /// Throws ScenarioError listing every violated invariant.
    void validate() const;
};

Scenario load_scenario(const nlohmann::json& j);
Scenario load_scenario_file(const std::filesystem::path& path);
nlohmann::json scenario_to_json(const Scenario& s);

struct Action {
    Stage stage = 0;
    Value a = 0;
    /// Least e whose P_e or N_e required attention, if any.
    std::optional<std::size_t> e;
    char requirement = '-';  // 'P', 'N' or '-'
    /// max over i < e of q_s(i); -1 for the empty maximum.
    std::int64_t guard = -1;
    bool enumerated = false;
};

struct DensityResult {
    EnumerationTrace d;
    /// p[e][s] and q[e][s] for s = 0..horizon.
    std::vector<std::vector<std::size_t>> p;
    std::vector<std::vector<std::size_t>> q;
    std::vector<Action> log;
};

/// Lengths of agreement at one stage t, before taking running maxima.
std::size_t match_p(const Scenario& s, const EnumerationTrace& d, std::size_t e, Stage t);
std::size_t match_q(const Scenario& s, const EnumerationTrace& d, std::size_t e, Stage t);

/// Runs the filtering construction to the horizon. Results are relative to
/// the supplied finite family of functionals or tables.
DensityResult run_construction(const Scenario& s);

nlohmann::json to_json(const DensityResult& r, const Scenario& s);

/// A valid scenario with random traces, table functionals (or complexity
/// tables), deterministic in the seed.
Scenario make_random_scenario(std::uint64_t seed);

}  // namespace enumcomp::density
