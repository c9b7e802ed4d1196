#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "enumcomp/density.hpp"
#include "enumcomp/gainless.hpp"
#include "enumcomp/joint_run.hpp"
#include "enumcomp/verifier.hpp"

namespace enumcomp {

/// JSONL trace: a {"length": L} header line, then {"stage": s, "value": n} per event.
EnumerationTrace parse_trace_jsonl(std::istream& in);
void write_trace_jsonl(std::ostream& out, const EnumerationTrace& trace);

/// Dot text, or JSONL when the file ends in .jsonl or starts with '{'.
EnumerationTrace read_trace_file(const std::filesystem::path& path);

struct RunFile {
    JointRun run;
    std::vector<StageMapEntry> stage_map;
};

/// Header {"type":"run","origin":...,"length":L}; one line per event
/// {"set":"A"|"D","stage":s,"value":n}; optional {"type":"map",...} lines.
void write_run_jsonl(std::ostream& out, const JointRun& run,
                     const std::vector<StageMapEntry>& stage_map = {});
RunFile parse_run_jsonl(std::istream& in);
RunFile read_run_file(const std::filesystem::path& path);

std::string targets_csv(const std::vector<TargetRecord>& targets);
std::string stage_map_csv(const std::vector<StageMapEntry>& map);

nlohmann::json to_json(const CheckReport& report);
nlohmann::json verify_report_json(const JointRun& run, const std::vector<CheckReport>& reports);

/// n, |D below n|, |A below n|, |A below n| / 2 for n = 0..universe.
std::string density_curve_csv(const JointRun& run);
/// row, closed blocks, 4-loaded blocks, tail left end, tail load.
std::string row_summary_csv(const JointRun& run);
/// e, stage, p, q.
std::string agreement_csv(const density::DensityResult& result);

enum class ReportFormat { Csv, Json };
ReportFormat parse_report_format(std::string_view name);

/// Writes blocks, row summary and density curve for a run into `dir`;
/// returns the paths written. Output is byte-identical for equal input.
std::vector<std::filesystem::path> emit_run_report(const JointRun& run,
                                                   const std::filesystem::path& dir,
                                                   ReportFormat format);
std::vector<std::filesystem::path> emit_density_report(const density::DensityResult& result,
                                                       const std::filesystem::path& dir,
                                                       ReportFormat format);

/// Writes text to a file, creating parent directories; throws on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace enumcomp
