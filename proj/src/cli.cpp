#include "enumcomp/cli.hpp"

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "enumcomp/density.hpp"
#include "enumcomp/gainless.hpp"
#include "enumcomp/game.hpp"
#include "enumcomp/io.hpp"
#include "enumcomp/server.hpp"
#include "enumcomp/session.hpp"
#include "enumcomp/solver.hpp"
#include "enumcomp/strong.hpp"
#include "enumcomp/table.hpp"
#include "enumcomp/verifier.hpp"

namespace enumcomp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path default_report_dir() {
    if (const char* env = std::getenv("ENUMCOMP_REPORT_DIR"); env && *env) return env;
    return "reports";
}

// run.jsonl -> run.L2.jsonl
fs::path level_path(const fs::path& out, unsigned level) {
    fs::path p = out;
    p.replace_filename(out.stem().string() + ".L" + std::to_string(level) + out.extension().string());
    return p;
}

void write_run(const fs::path& path, const JointRun& run, const std::vector<StageMapEntry>& map = {}) {
    std::ostringstream ss;
    write_run_jsonl(ss, run, map);
    write_text_file(path, ss.str());
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::set<game::Number> parse_numbers(const std::string& text) {
    std::set<game::Number> out;
    for (const auto& tok : split_list(text)) out.insert(std::stoll(tok));
    return out;
}

std::string join_numbers(const std::vector<game::Number>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + "}";
}

// ---- compress ----

struct CompressArgs {
    std::string algo = "gainless";
    std::string in;
    std::string out = "run.jsonl";
    std::string targets;
    std::string stage_map;
    unsigned iterate = 1;
    std::string gen;
    std::size_t count = 0;
    Value universe = 0;
    std::size_t run_length = 8;
    Stage max_gap = 0;
    std::uint64_t seed = 1;
};

int cmd_compress(const CompressArgs& a, std::ostream& out, std::ostream& err) {
    EnumerationTrace input;
    if (!a.gen.empty()) {
        GeneratorParams p{a.count, a.universe, a.run_length, a.max_gap};
        input = generate_trace(parse_generator_kind(a.gen), p, a.seed);
    } else if (!a.in.empty()) {
        input = read_trace_file(a.in);
    } else {
        err << "compress: give --in FILE or --gen KIND\n";
        return kExitUsage;
    }
    if (!input.is_normalized()) {
        err << "note: input normalized before compression\n";
        input = normalize_trace(input);
    }

    if (a.algo == "strong") {
        const auto chain = compress_iterated(input, a.iterate);
        write_run(a.out, chain.front());
        out << "level 1: A " << chain.front().a().size() << " events, D "
            << chain.front().d().size() << " events -> " << a.out << '\n';
        for (unsigned i = 1; i < chain.size(); ++i) {
            const fs::path p = level_path(a.out, i + 1);
            write_run(p, chain[i]);
            out << "level " << i + 1 << ": D " << chain[i].d().size() << " events -> "
                << p.string() << '\n';
        }
        return kExitOk;
    }
    if (a.algo == "gainless") {
        if (a.iterate != 1) {
            err << "compress: --iterate applies to --algo strong only\n";
            return kExitUsage;
        }
        const GainlessResult r = compress_gainless(input);
        write_run(a.out, r.run, r.stage_map);
        out << "gainless: A " << r.run.a().size() << " events, D " << r.run.d().size()
            << " events, " << r.run.length() << " stages -> " << a.out << '\n';
        if (!a.targets.empty()) {
            write_text_file(a.targets, targets_csv(r.targets));
            out << "targets -> " << a.targets << '\n';
        }
        if (!a.stage_map.empty()) {
            write_text_file(a.stage_map, stage_map_csv(r.stage_map));
            out << "stage map -> " << a.stage_map << '\n';
        }
        return kExitOk;
    }
    err << "compress: unknown --algo '" << a.algo << "' (strong or gainless)\n";
    return kExitUsage;
}

// ---- verify ----

struct VerifyArgs {
    std::string run;
    std::string checks;
    std::optional<std::size_t> c;
    std::string f;
    std::string report;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const RunFile rf = read_run_file(a.run);
    std::vector<std::string> names =
        a.checks.empty() ? default_checks(rf.run.origin()) : split_list(a.checks);
    VerifyOptions opts;
    opts.c = a.c;
    if (!a.f.empty()) opts.f = PrefixMap::parse(a.f);
    const auto reports = run_checks(rf.run, names, opts);
    for (const auto& r : reports) {
        const char* tag = !r.asserted ? "INFO" : (r.passed ? "PASS" : "FAIL");
        out << tag << ' ' << r.name << ": " << r.detail << '\n';
    }
    const bool ok = all_asserted_pass(reports);
    out << "verdict: " << (ok ? "pass" : "fail") << '\n';

    fs::path report_path = a.report;
    if (report_path.empty() && std::getenv("ENUMCOMP_REPORT_DIR")) {
        report_path = default_report_dir() / "verify-report.json";
    }
    if (!report_path.empty()) {
        write_text_file(report_path, verify_report_json(rf.run, reports).dump(2) + "\n");
        out << "report -> " << report_path.string() << '\n';
    }
    return ok ? kExitOk : kExitCheckFailed;
}

// ---- table ----

struct TableArgs {
    std::string run;
    std::string a;
    std::string d;
    std::optional<Stage> horizon;
    bool csv = false;
    Stage max_columns = 200;
    Value max_rows = 200;
};

int cmd_table(const TableArgs& t, std::ostream& out, std::ostream& err) {
    JointRun run;
    if (!t.run.empty()) {
        run = read_run_file(t.run).run;
    } else if (!t.a.empty() || !t.d.empty()) {
        run = JointRun(parse_trace(t.a), parse_trace(t.d));
    } else {
        err << "table: give --run FILE or --a/--d traces\n";
        return kExitUsage;
    }
    const TableView view = t.horizon ? TableView(run, *t.horizon) : TableView(run);
    if (t.csv) {
        out << blocks_csv(view);
    } else {
        out << render_table(view, RenderOptions{t.max_columns, t.max_rows});
    }
    return kExitOk;
}

// ---- game ----

struct GameArgs {
    unsigned k = 3;
    std::string variant = "reduced";
    unsigned rounds = 8;
    game::Number universe = 24;
    std::string both;
    std::string p1_only;
    std::uint64_t budget = 20'000'000;
    bool allow_unknown = false;
    std::string human = "p2";
    std::string policy = "first";
    std::uint64_t seed = 1;
    std::string log;
    std::string replay_file;
};

int cmd_game_solve(const GameArgs& g, std::ostream& out) {
    game::GameConfig config{g.k, game::parse_variant(g.variant), g.rounds, g.universe};
    const game::GameState start = game::GameState::from_position(parse_numbers(g.both),
                                                                 parse_numbers(g.p1_only));
    game::SolveOptions opts{g.budget, !g.allow_unknown};
    const game::SolveResult r = game::solve(config, start, opts);
    json j = {{"k", g.k},
              {"variant", g.variant},
              {"universe", g.universe},
              {"rounds", g.rounds},
              {"verdict", game::to_string(r.verdict)},
              {"depth", r.depth},
              {"move", r.move},
              {"nodes", r.nodes},
              {"note", r.note}};
    out << j.dump(2) << '\n';
    return kExitOk;
}

void print_board(const game::SessionSnapshot& s, std::ostream& out) {
    const auto& st = s.state;
    out << "round " << st.rounds_completed() + 1 << "/" << s.config.game.max_rounds
        << "  p1 " << join_numbers({st.p1_chosen.begin(), st.p1_chosen.end()}) << "  p2 "
        << join_numbers({st.p2_chosen.begin(), st.p2_chosen.end()}) << '\n';
    if (!st.history.empty()) {
        const auto& last = st.history.back();
        out << "last R = " << join_numbers(last.r);
        if (last.reply) out << ", reply " << *last.reply;
        out << '\n';
    }
    for (const auto& c : game::detect_configurations(st)) {
        out << "  " << c.pattern << " at " << join_numbers(c.positions)
            << (c.sufficient_space ? "" : " (cramped)") << '\n';
    }
}

int cmd_game_play(const GameArgs& g, std::ostream& out, std::istream& in) {
    game::SessionConfig config;
    config.game = {g.k, game::parse_variant(g.variant), g.rounds, std::nullopt};
    config.human = game::parse_player(g.human);
    config.policy = game::parse_policy(g.policy);
    config.seed = g.seed;
    std::unique_ptr<game::SessionRegistry> reg =
        g.log.empty() ? std::make_unique<game::SessionRegistry>()
                      : std::make_unique<game::SessionRegistry>(g.log);
    const std::string id = reg->create(config);
    out << "session " << id << ": " << g.k << "-" << g.variant << " game, you are " << g.human
        << ". Commands: numbers, 'hint', 'quit'.\n";
    std::string line;
    while (true) {
        const auto snap = reg->get(id);
        print_board(snap, out);
        if (snap.state.outcome != game::Outcome::Ongoing) {
            out << "outcome: " << game::to_string(snap.state.outcome);
            if (!snap.state.loss_reason.empty()) out << " (" << snap.state.loss_reason;
            if (!snap.state.losing_pair.empty()) out << " " << join_numbers(snap.state.losing_pair);
            if (!snap.state.loss_reason.empty()) out << ")";
            out << '\n';
            return kExitOk;
        }
        out << "> " << std::flush;
        if (!std::getline(in, line)) return kExitOk;
        if (line == "quit") return kExitOk;
        if (line == "hint") {
            const game::Hint h = reg->hint(id);
            out << (h.available ? "hint " + join_numbers(h.move) + " [" + h.tag + "] " : "")
                << h.rationale << '\n';
            continue;
        }
        try {
            const auto nums = parse_numbers(line);
            reg->submit(id, game::Move(nums.begin(), nums.end()));
        } catch (const game::IllegalMove& e) {
            out << "rejected (" << e.rule() << "): " << e.what() << '\n';
        } catch (const std::invalid_argument&) {
            out << "enter numbers separated by spaces or commas\n";
        }
    }
}

int cmd_game_replay(const GameArgs& g, std::ostream& out) {
    std::ifstream in(g.replay_file);
    if (!in) throw std::runtime_error("cannot open " + g.replay_file);
    const auto sessions = game::replay_log(in);
    for (const auto& s : sessions) {
        out << s.id << ": " << s.config.game.k << "-" << game::to_string(s.config.game.variant)
            << ", " << s.state.rounds_completed() << " round(s), "
            << game::to_string(s.state.outcome);
        if (!s.state.loss_reason.empty()) out << " (" << s.state.loss_reason << ")";
        out << '\n';
    }
    return kExitOk;
}

// ---- density ----

int cmd_density(const std::string& config, const std::string& out_path, std::ostream& out) {
    const density::Scenario s = density::load_scenario_file(config);
    const density::DensityResult r = density::run_construction(s);
    std::vector<game::Number> d;
    for (const auto& e : r.d.events()) d.push_back(static_cast<game::Number>(e.value));
    out << "scenario " << s.name << " (" << density::to_string(s.mode)
        << ", relative to supplied family): D = " << join_numbers(d) << '\n';
    for (std::size_t e = 0; e < r.p.size(); ++e) {
        out << "  e=" << e << " p=" << r.p[e].back() << " q=" << r.q[e].back() << '\n';
    }
    fs::path path = out_path;
    if (path.empty() && std::getenv("ENUMCOMP_REPORT_DIR")) {
        path = default_report_dir() / (s.name + "-run.json");
    }
    if (!path.empty()) {
        write_text_file(path, density::to_json(r, s).dump(2) + "\n");
        out << "report -> " << path.string() << '\n';
    }
    return kExitOk;
}

// ---- serve ----

std::atomic<game::ApiServer*> g_server{nullptr};

extern "C" void stop_server(int) {
    if (auto* s = g_server.load()) s->stop();
}

int cmd_serve(const std::string& host, int port, const std::string& static_dir,
              const std::string& log, std::ostream& out) {
    std::unique_ptr<game::SessionRegistry> reg =
        log.empty() ? std::make_unique<game::SessionRegistry>()
                    : std::make_unique<game::SessionRegistry>(log);
    std::optional<fs::path> dir;
    if (!static_dir.empty()) dir = static_dir;
    game::ApiServer server(*reg, dir);
    const int bound = server.bind(host, port);
    out << "listening on http://" << host << ":" << bound << std::endl;
    g_server = &server;
    std::signal(SIGINT, stop_server);
    std::signal(SIGTERM, stop_server);
    server.run();
    g_server = nullptr;
    return kExitOk;
}

// ---- report ----

int cmd_report(const std::string& run, const std::string& scenario, std::string dir,
               const std::string& format, std::ostream& out, std::ostream& err) {
    const ReportFormat fmt = parse_report_format(format);
    const fs::path target = dir.empty() ? default_report_dir() : fs::path(dir);
    std::vector<fs::path> written;
    if (!run.empty()) {
        written = emit_run_report(read_run_file(run).run, target, fmt);
    } else if (!scenario.empty()) {
        const auto s = density::load_scenario_file(scenario);
        written = emit_density_report(density::run_construction(s), target, fmt);
    } else {
        err << "report: give --run FILE or --scenario FILE\n";
        return kExitUsage;
    }
    for (const auto& p : written) out << "wrote " << p.string() << '\n';
    return kExitOk;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    return cli_dispatch(argc, argv, out, err, std::cin);
}

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                 std::istream& in) {
    CLI::App app{"enumcomp: compression of effective enumerations", "enumcomp"};
    app.require_subcommand(1);

    CompressArgs ca;
    auto* compress = app.add_subcommand("compress", "Compress an enumeration trace");
    compress->add_option("--algo", ca.algo, "strong or gainless")->capture_default_str();
    compress->add_option("--in", ca.in, "Input trace (dot text or JSONL)");
    compress->add_option("--out", ca.out, "Output run (JSONL)")->capture_default_str();
    compress->add_option("--targets", ca.targets, "Gainless targets CSV");
    compress->add_option("--stage-map", ca.stage_map, "Gainless stage map CSV");
    compress->add_option("--iterate", ca.iterate, "Strong compression depth")->check(CLI::PositiveNumber);
    compress->add_option("--gen", ca.gen, "Generate input: random, burst or adversarial");
    compress->add_option("--count", ca.count, "Generated values");
    compress->add_option("--universe", ca.universe, "Generated values lie below this");
    compress->add_option("--run-length", ca.run_length, "Burst run length");
    compress->add_option("--max-gap", ca.max_gap, "Random idle stages between events");
    compress->add_option("--seed", ca.seed, "Generator seed");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Check a run");
    verify->add_option("--run", va.run, "Run file (JSONL)")->required();
    verify->add_option("--checks", va.checks, "Comma-separated checks");
    verify->add_option("--c", va.c, "Covering constant");
    verify->add_option("--f", va.f, "Prefix map: id, half or shift:<d>");
    verify->add_option("--report", va.report, "Write a JSON report here");

    TableArgs ta;
    auto* table = app.add_subcommand("table", "Render the (A, D)-table");
    table->add_option("--run", ta.run, "Run file (JSONL)");
    table->add_option("--a", ta.a, "A trace in dot format");
    table->add_option("--d", ta.d, "D trace in dot format");
    table->add_option("--horizon", ta.horizon, "Last stage shown");
    table->add_flag("--csv", ta.csv, "Emit blocks as CSV");
    table->add_option("--max-columns", ta.max_columns, "Render cap on stages");
    table->add_option("--max-rows", ta.max_rows, "Render cap on rows");

    GameArgs ga;
    auto* gamecmd = app.add_subcommand("game", "Even and reduced games");
    gamecmd->require_subcommand(1);
    auto add_rules = [&ga](CLI::App* sub) {
        sub->add_option("--k", ga.k, "Numbers per player-1 move")->check(CLI::Range(2u, 64u));
        sub->add_option("--variant", ga.variant, "even or reduced")->capture_default_str();
        sub->add_option("--rounds", ga.rounds, "Round limit")->check(CLI::PositiveNumber);
    };
    auto* solve = gamecmd->add_subcommand("solve", "Bounded minimax search");
    add_rules(solve);
    solve->add_option("--universe", ga.universe, "Numbers lie below this (at most 64)");
    solve->add_option("--both", ga.both, "Start position: numbers chosen by both players");
    solve->add_option("--p1-only", ga.p1_only, "Start position: numbers chosen by player 1 only");
    solve->add_option("--budget", ga.budget, "Node budget");
    solve->add_flag("--allow-unknown", ga.allow_unknown, "Report unknown instead of failing on budget");
    auto* play = gamecmd->add_subcommand("play", "Play in the terminal");
    add_rules(play);
    play->add_option("--human", ga.human, "p1 or p2")->capture_default_str();
    play->add_option("--policy", ga.policy, "Engine player-2 policy: first, random, solver");
    play->add_option("--seed", ga.seed, "Seed for the random policy");
    play->add_option("--log", ga.log, "Append the session to this JSONL log");
    auto* replay = gamecmd->add_subcommand("replay", "Replay a session log");
    replay->add_option("log", ga.replay_file, "Session log (JSONL)")->required();

    std::string density_config;
    std::string density_out;
    auto* densitycmd = app.add_subcommand("density", "Density construction scenarios");
    densitycmd->require_subcommand(1);
    auto* drun = densitycmd->add_subcommand("run", "Run a scenario");
    drun->add_option("--config", density_config, "Scenario JSON")->required();
    drun->add_option("--out", density_out, "Write the run report here");

    std::string host = "127.0.0.1";
    int port = 8080;
    std::string static_dir;
    std::string serve_log;
    auto* serve = app.add_subcommand("serve", "Serve the game API");
    serve->add_option("--host", host, "Bind address")->capture_default_str();
    serve->add_option("--port", port, "Port, 0 for any")->capture_default_str();
    serve->add_option("--static", static_dir, "Directory served at /");
    serve->add_option("--log", serve_log, "Append sessions to this JSONL log");

    std::string report_run;
    std::string report_scenario;
    std::string report_dir;
    std::string report_format = "csv";
    auto* report = app.add_subcommand("report", "Emit CSV or JSON reports");
    report->add_option("--run", report_run, "Run file (JSONL)");
    report->add_option("--scenario", report_scenario, "Density scenario JSON");
    report->add_option("--out", report_dir, "Output directory (default $ENUMCOMP_REPORT_DIR or ./reports)");
    report->add_option("--format", report_format, "csv or json")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (compress->parsed()) return cmd_compress(ca, out, err);
        if (verify->parsed()) return cmd_verify(va, out);
        if (table->parsed()) return cmd_table(ta, out, err);
        if (solve->parsed()) return cmd_game_solve(ga, out);
        if (play->parsed()) return cmd_game_play(ga, out, in);
        if (replay->parsed()) return cmd_game_replay(ga, out);
        if (drun->parsed()) return cmd_density(density_config, density_out, out);
        if (serve->parsed()) return cmd_serve(host, port, static_dir, serve_log, out);
        if (report->parsed()) {
            return cmd_report(report_run, report_scenario, report_dir, report_format, out, err);
        }
    } catch (const ParseError& e) {
        err << "input error (position " << e.position() << "): " << e.what() << '\n';
        return kExitUsage;
    } catch (const game::BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    err << app.help();
    return kExitUsage;
}

}  // namespace enumcomp
