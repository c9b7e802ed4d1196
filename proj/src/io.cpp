#include "enumcomp/io.hpp"

#include <fstream>
#include <sstream>

#include "enumcomp/table.hpp"

namespace enumcomp {

using nlohmann::json;

namespace {

template <typename F>
void for_each_line(std::istream& in, F&& handle) {
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(no, std::string("malformed JSON: ") + e.what());
        }
        try {
            handle(no, j);
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(no, e.what());
        }
    }
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

EnumerationTrace parse_trace_jsonl(std::istream& in) {
    std::optional<Stage> length;
    std::vector<Event> events;
    for_each_line(in, [&](std::size_t, const json& j) {
        if (j.contains("length")) {
            if (length) throw std::invalid_argument("duplicate length header");
            length = j.at("length").get<Stage>();
            return;
        }
        events.push_back({j.at("stage").get<Stage>(), j.at("value").get<Value>()});
    });
    Stage len = length.value_or(0);
    if (!length)
        for (const auto& e : events) len = std::max(len, e.stage);
    return EnumerationTrace(std::move(events), len);
}

void write_trace_jsonl(std::ostream& out, const EnumerationTrace& trace) {
    out << json{{"length", trace.length()}}.dump() << '\n';
    for (const auto& e : trace.events())
        out << json{{"stage", e.stage}, {"value", e.value}}.dump() << '\n';
}

EnumerationTrace read_trace_file(const std::filesystem::path& path) {
    const std::string text = slurp(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (path.extension() == ".jsonl" || (first != std::string::npos && text[first] == '{')) {
        std::istringstream in(text);
        return parse_trace_jsonl(in);
    }
    return parse_trace(text);
}

void write_run_jsonl(std::ostream& out, const JointRun& run,
                     const std::vector<StageMapEntry>& stage_map) {
    out << json{{"type", "run"}, {"origin", to_string(run.origin())}, {"length", run.length()}}.dump()
        << '\n';
    // Events in stage order; on a shared stage the A-event comes first.
    const auto& as = run.a().events();
    const auto& ds = run.d().events();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < as.size() || j < ds.size()) {
        const bool take_a = j >= ds.size() || (i < as.size() && as[i].stage <= ds[j].stage);
        const Event& e = take_a ? as[i++] : ds[j++];
        out << json{{"set", take_a ? "A" : "D"}, {"stage", e.stage}, {"value", e.value}}.dump()
            << '\n';
    }
    for (const auto& m : stage_map) {
        out << json{{"type", "map"},
                    {"input_stage", m.input_stage},
                    {"output_stage", m.output_stage},
                    {"value", m.value}}
                   .dump()
            << '\n';
    }
}

RunFile parse_run_jsonl(std::istream& in) {
    bool header = false;
    RunOrigin origin = RunOrigin::Manual;
    Stage length = 0;
    std::vector<Event> a;
    std::vector<Event> d;
    RunFile out;
    for_each_line(in, [&](std::size_t, const json& j) {
        if (j.value("type", std::string()) == "run") {
            if (header) throw std::invalid_argument("duplicate run header");
            header = true;
            origin = parse_run_origin(j.value("origin", std::string("manual")));
            length = j.at("length").get<Stage>();
            return;
        }
        if (j.value("type", std::string()) == "map") {
            out.stage_map.push_back({j.at("input_stage").get<Stage>(),
                                     j.at("output_stage").get<Stage>(), j.at("value").get<Value>()});
            return;
        }
        const std::string set = j.at("set").get<std::string>();
        const Event e{j.at("stage").get<Stage>(), j.at("value").get<Value>()};
        if (set == "A") a.push_back(e);
        else if (set == "D") d.push_back(e);
        else throw std::invalid_argument("unknown set '" + set + "'");
    });
    if (!header) throw ParseError(1, "missing run header");
    out.run = JointRun(EnumerationTrace(std::move(a), length), EnumerationTrace(std::move(d), length),
                       origin);
    return out;
}

RunFile read_run_file(const std::filesystem::path& path) {
    std::istringstream in(slurp(path));
    return parse_run_jsonl(in);
}

std::string targets_csv(const std::vector<TargetRecord>& targets) {
    std::ostringstream out;
    out << "stage,n,m,enumerated\n";
    for (const auto& t : targets) out << t.stage << ',' << t.n << ',' << t.m << ',' << t.enumerated << '\n';
    return out.str();
}

std::string stage_map_csv(const std::vector<StageMapEntry>& map) {
    std::ostringstream out;
    out << "input_stage,output_stage,value\n";
    for (const auto& m : map) out << m.input_stage << ',' << m.output_stage << ',' << m.value << '\n';
    return out.str();
}

json to_json(const CheckReport& r) {
    json j = {{"name", r.name},
              {"passed", r.passed},
              {"asserted", r.asserted},
              {"detail", r.detail},
              {"metrics", r.metrics}};
    if (r.counterexample) {
        j["counterexample"] = {{"s", r.counterexample->s},
                               {"t", r.counterexample->t},
                               {"n", r.counterexample->n}};
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

json verify_report_json(const JointRun& run, const std::vector<CheckReport>& reports) {
    json checks = json::array();
    for (const auto& r : reports) checks.push_back(to_json(r));
    return {{"origin", to_string(run.origin())},
            {"length", run.length()},
            {"a_size", run.a().size()},
            {"d_size", run.d().size()},
            {"passed", all_asserted_pass(reports)},
            {"checks", checks}};
}

std::string density_curve_csv(const JointRun& run) {
    std::ostringstream out;
    out << "n,d_below,a_below,half_a_below\n";
    std::vector<std::size_t> a_hist;
    std::vector<std::size_t> d_hist;
    Value universe = 0;
    if (auto m = run.a().max_value()) universe = std::max(universe, *m + 1);
    if (auto m = run.d().max_value()) universe = std::max(universe, *m + 1);
    if (run.a().empty() && run.d().empty()) return out.str();
    a_hist.assign(universe + 1, 0);
    d_hist.assign(universe + 1, 0);
    for (const auto& e : run.a().events()) ++a_hist[e.value + 1];
    for (const auto& e : run.d().events()) ++d_hist[e.value + 1];
    std::size_t a = 0;
    std::size_t d = 0;
    for (Value n = 0; n <= universe; ++n) {
        a += a_hist[n];
        d += d_hist[n];
        out << n << ',' << d << ',' << a << ',' << (a / 2) << (a % 2 ? ".5" : "") << '\n';
    }
    return out.str();
}

std::string row_summary_csv(const JointRun& run) {
    std::ostringstream out;
    out << "row,blocks,loaded_blocks,tail_left,tail_load\n";
    if (run.a().empty() && run.d().empty()) return out.str();
    const TableView view(run);
    const BlockTable table = all_blocks(view);
    for (Value row = 0; row < table.rows.size(); ++row) {
        std::size_t loaded = 0;
        for (const auto& b : table.rows[row]) loaded += b.load >= kTargetLoad ? 1 : 0;
        const TailBlock tail = view.tail_block(row);
        out << row << ',' << table.rows[row].size() << ',' << loaded << ',' << tail.left << ','
            << tail.load << '\n';
    }
    return out.str();
}

std::string agreement_csv(const density::DensityResult& result) {
    std::ostringstream out;
    out << "e,stage,p,q\n";
    for (std::size_t e = 0; e < result.p.size(); ++e) {
        for (std::size_t s = 0; s < result.p[e].size(); ++s)
            out << e << ',' << s << ',' << result.p[e][s] << ',' << result.q[e][s] << '\n';
    }
    return out.str();
}

ReportFormat parse_report_format(std::string_view name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw std::invalid_argument("unknown report format '" + std::string(name) + "'");
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

namespace {

// Turns a CSV document into a JSON array of row objects, all values as text
// except integers.
json csv_to_json(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::vector<std::string> header;
    json rows = json::array();
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) out.push_back(cell);
        return out;
    };
    if (std::getline(in, line)) header = split(line);
    while (std::getline(in, line)) {
        const auto cells = split(line);
        json row = json::object();
        for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) {
            const std::string& c = cells[i];
            const std::size_t digits_from = (!c.empty() && c[0] == '-') ? 1 : 0;
            const bool integral = c.size() > digits_from &&
                                  c.find_first_not_of("0123456789", digits_from) == std::string::npos;
            if (!integral) row[header[i]] = c;
            else if (digits_from) row[header[i]] = std::stoll(c);
            else row[header[i]] = std::stoull(c);
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<std::filesystem::path> emit(const std::filesystem::path& dir, ReportFormat format,
                                        const std::vector<std::pair<std::string, std::string>>& docs) {
    std::vector<std::filesystem::path> written;
    if (format == ReportFormat::Csv) {
        for (const auto& [name, csv] : docs) {
            const auto path = dir / (name + ".csv");
            write_text_file(path, csv);
            written.push_back(path);
        }
        return written;
    }
    json all = json::object();
    for (const auto& [name, csv] : docs) all[name] = csv_to_json(csv);
    const auto path = dir / "report.json";
    write_text_file(path, all.dump(2) + "\n");
    written.push_back(path);
    return written;
}

}  // namespace

std::vector<std::filesystem::path> emit_run_report(const JointRun& run,
                                                   const std::filesystem::path& dir,
                                                   ReportFormat format) {
    std::string blocks = "row,left,right,load,label\n";
    if (!(run.a().empty() && run.d().empty())) blocks = blocks_csv(TableView(run));
    return emit(dir, format,
                {{"blocks", blocks}, {"rows", row_summary_csv(run)}, {"density", density_curve_csv(run)}});
}

std::vector<std::filesystem::path> emit_density_report(const density::DensityResult& result,
                                                       const std::filesystem::path& dir,
                                                       ReportFormat format) {
    std::ostringstream log;
    log << "stage,a,e,requirement,guard,enumerated\n";
    for (const auto& a : result.log) {
        log << a.stage << ',' << a.a << ',' << (a.e ? std::to_string(*a.e) : "") << ','
            << a.requirement << ',' << a.guard << ',' << (a.enumerated ? 1 : 0) << '\n';
    }
    return emit(dir, format, {{"agreement", agreement_csv(result)}, {"actions", log.str()}});
}

}  // namespace enumcomp
