#include "enumcomp/density.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

namespace enumcomp::density {

using nlohmann::json;

std::string_view to_string(Mode m) {
    switch (m) {
        case Mode::RK: return "rK";
        case Mode::K: return "K";
        case Mode::C: return "C";
    }
    return "rK";
}

Mode parse_mode(std::string_view name) {
    if (name == "rK" || name == "rk") return Mode::RK;
    if (name == "K") return Mode::K;
    if (name == "C") return Mode::C;
    throw std::invalid_argument("unknown mode '" + std::string(name) + "' (expected rK, K or C)");
}

namespace {

std::string join_lines(const std::vector<std::string>& v) {
    std::string out = "invalid scenario:";
    for (const auto& s : v) out += "\n  - " + s;
    return out;
}

std::string_view kind_name(FunctionalKind k) {
    switch (k) {
        case FunctionalKind::Table: return "table";
        case FunctionalKind::Identity: return "identity";
        case FunctionalKind::Total: return "total";
        case FunctionalKind::Empty: return "empty";
        case FunctionalKind::Zeros: return "zeros";
    }
    return "empty";
}

FunctionalKind parse_kind(std::string_view name) {
    for (auto k : {FunctionalKind::Table, FunctionalKind::Identity, FunctionalKind::Total,
                   FunctionalKind::Empty, FunctionalKind::Zeros}) {
        if (kind_name(k) == name) return k;
    }
    throw std::invalid_argument("unknown functional kind '" + std::string(name) + "'");
}

bool is_binary(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

const char* table_key(Mode m) { return m == Mode::C ? "C" : "K"; }

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> problems)
    : std::invalid_argument(join_lines(problems)), problems_(std::move(problems)) {}

bool FunctionalApprox::contains(const std::string& input, const std::string& candidate,
                                Stage t) const {
    if (candidate.size() != input.size()) return false;
    switch (kind) {
        case FunctionalKind::Identity: return candidate == input;
        case FunctionalKind::Total: return true;
        case FunctionalKind::Empty: return false;
        case FunctionalKind::Zeros: return candidate.find('1') == std::string::npos;
        case FunctionalKind::Table:
            return std::any_of(entries.begin(), entries.end(), [&](const FunctionalEntry& e) {
                return e.stage <= t && e.input == input && e.output == candidate;
            });
    }
    return false;
}

std::uint64_t ComplexityApprox::at(const std::string& s, Stage t) const {
    const Entry* best = nullptr;
    for (const auto& e : entries) {
        if (e.string == s && e.stage <= t && (!best || e.stage >= best->stage)) best = &e;
    }
    if (best) return best->value;
    if (fallback) return fallback->base + fallback->per_bit * s.size();
    throw UndefinedError("complexity table undefined at string '" + s + "', stage " +
                         std::to_string(t));
}

std::size_t Scenario::requirement_count() const {
    return mode == Mode::RK ? functionals.size() : requirements;
}

void Scenario::validate() const {
    std::vector<std::string> bad;
    if (length_cap == 0) bad.push_back("length cap must be positive");
    if (horizon == 0) bad.push_back("horizon must be positive");

    const std::pair<const char*, const EnumerationTrace*> traces[] = {
        {"A", &a}, {"Astar", &a_star}, {"B", &b}, {"Bstar", &b_star}};
    for (const auto& [label, tr] : traces) {
        if (tr->length() > horizon) {
            bad.push_back(std::string("trace ") + label + " has stage " +
                          std::to_string(tr->length()) + " beyond the horizon " +
                          std::to_string(horizon));
        }
    }
    if (!a_star.one_event_per_stage()) bad.push_back("trace Astar must enumerate one value per stage");
    for (const auto& ev : a_star.events()) {
        if (ev.value >= length_cap) {
            bad.push_back("Astar value " + std::to_string(ev.value) + " at stage " +
                          std::to_string(ev.stage) + " is not below the length cap " +
                          std::to_string(length_cap));
        }
    }

    if (mode == Mode::RK) {
        for (std::size_t e = 0; e < functionals.size(); ++e) {
            const auto& f = functionals[e];
            const std::string who = "functional " + std::to_string(e);
            if (f.kind != FunctionalKind::Table) {
                if (!f.entries.empty()) bad.push_back(who + ": only table functionals take entries");
                continue;
            }
            if (f.bound == 0) bad.push_back(who + ": bound must be positive");
            std::map<std::string, std::set<std::string>> outputs;
            for (const auto& en : f.entries) {
                const std::string at = who + " entry (" + en.input + " -> " + en.output +
                                       " at stage " + std::to_string(en.stage) + ")";
                if (!is_binary(en.input) || !is_binary(en.output))
                    bad.push_back(at + ": strings must be binary");
                if (en.input.size() != en.output.size())
                    bad.push_back(at + ": input and output lengths differ");
                if (en.input.size() > length_cap) bad.push_back(at + ": longer than the length cap");
                if (en.stage > horizon) bad.push_back(at + ": stage beyond the horizon");
                outputs[en.input].insert(en.output);
            }
            for (const auto& [input, outs] : outputs) {
                if (outs.size() > f.bound) {
                    bad.push_back(who + ": input '" + input + "' has " +
                                  std::to_string(outs.size()) + " outputs, bound " +
                                  std::to_string(f.bound));
                }
            }
            // Outputs of a prefix only ever grow, so checking at the stage
            // each longer output appears is enough.
            for (const auto& en : f.entries) {
                for (std::size_t j = 1; j < en.input.size() && j < en.output.size(); ++j) {
                    const std::string sigma = en.input.substr(0, j);
                    if (!f.contains(sigma, en.output.substr(0, j), en.stage)) {
                        bad.push_back(who + ": output '" + en.output + "' of '" + en.input +
                                      "' has no prefix in the image of '" + sigma +
                                      "' at stage " + std::to_string(en.stage));
                    }
                }
            }
        }
    } else {
        const auto it = complexity.find(table_key(mode));
        if (it == complexity.end()) {
            bad.push_back(std::string("mode ") + std::string(to_string(mode)) +
                          " needs a complexity table '" + table_key(mode) + "'");
        }
    }
    for (const auto& [key, table] : complexity) {
        std::map<std::string, std::vector<const ComplexityApprox::Entry*>> by_string;
        for (const auto& en : table.entries) {
            if (!is_binary(en.string)) bad.push_back("table " + key + ": '" + en.string + "' is not binary");
            if (en.string.size() > length_cap)
                bad.push_back("table " + key + ": '" + en.string + "' is longer than the length cap");
            by_string[en.string].push_back(&en);
        }
        for (auto& [sigma, list] : by_string) {
            std::stable_sort(list.begin(), list.end(),
                             [](auto* x, auto* y) { return x->stage < y->stage; });
            std::optional<std::uint64_t> prev;
            if (table.fallback) prev = table.fallback->base + table.fallback->per_bit * sigma.size();
            for (std::size_t i = 0; i < list.size(); ++i) {
                if (i > 0 && list[i]->stage == list[i - 1]->stage) {
                    bad.push_back("table " + key + ": '" + sigma + "' has two values at stage " +
                                  std::to_string(list[i]->stage));
                }
                if (prev && list[i]->value > *prev) {
                    bad.push_back("table " + key + ": value of '" + sigma + "' increases at stage " +
                                  std::to_string(list[i]->stage));
                }
                prev = list[i]->value;
            }
        }
    }
    if (!bad.empty()) throw ScenarioError(std::move(bad));
}

namespace {

EnumerationTrace trace_from_json(const json& j, const std::string& label) {
    if (j.is_string()) return parse_trace(j.get<std::string>());
    if (!j.is_array()) throw std::invalid_argument("trace " + label + " must be a string or an array");
    std::vector<Event> events;
    Stage length = 0;
    for (const auto& item : j) {
        const Event e{item.at(0).get<Stage>(), item.at(1).get<Value>()};
        length = std::max(length, e.stage);
        events.push_back(e);
    }
    return EnumerationTrace(std::move(events), length);
}

json trace_to_json(const EnumerationTrace& t) {
    json arr = json::array();
    for (const auto& e : t.events()) arr.push_back({e.stage, e.value});
    return arr;
}

}  // namespace

Scenario load_scenario(const json& j) {
    Scenario s;
    s.name = j.value("name", std::string());
    s.mode = parse_mode(j.value("mode", std::string("rK")));
    const json& caps = j.at("caps");
    s.length_cap = caps.at("length").get<std::size_t>();
    s.horizon = caps.at("horizon").get<Stage>();
    const json traces = j.value("traces", json::object());
    auto read = [&](const char* key) {
        return traces.contains(key) ? trace_from_json(traces.at(key), key) : EnumerationTrace();
    };
    s.a = read("A");
    s.a_star = read("Astar");
    s.b = read("B");
    s.b_star = read("Bstar");
    for (const auto& f : j.value("functionals", json::array())) {
        FunctionalApprox fa;
        fa.kind = parse_kind(f.at("kind").get<std::string>());
        fa.bound = f.value("bound", std::size_t{1});
        for (const auto& en : f.value("entries", json::array())) {
            fa.entries.push_back({en.at("stage").get<Stage>(), en.at("input").get<std::string>(),
                                  en.at("output").get<std::string>()});
        }
        s.functionals.push_back(std::move(fa));
    }
    s.requirements = j.value("requirements", std::size_t{0});
    const json tables = j.value("complexity_tables", json::object());
    for (const auto& [key, t] : tables.items()) {
        ComplexityApprox ca;
        if (t.contains("default")) {
            ca.fallback = ComplexityApprox::Default{t.at("default").value("base", std::uint64_t{0}),
                                                    t.at("default").value("per_bit", std::uint64_t{1})};
        }
        for (const auto& en : t.value("entries", json::array())) {
            ca.entries.push_back({en.at("string").get<std::string>(), en.at("stage").get<Stage>(),
                                  en.at("value").get<std::uint64_t>()});
        }
        s.complexity[key] = std::move(ca);
    }
    s.validate();
    return s;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario " + path.string());
    Scenario s = load_scenario(json::parse(in));
    if (s.name.empty()) s.name = path.stem().string();
    return s;
}

json scenario_to_json(const Scenario& s) {
    json functionals = json::array();
    for (const auto& f : s.functionals) {
        json entries = json::array();
        for (const auto& e : f.entries)
            entries.push_back({{"stage", e.stage}, {"input", e.input}, {"output", e.output}});
        functionals.push_back({{"kind", kind_name(f.kind)}, {"bound", f.bound}, {"entries", entries}});
    }
    json tables = json::object();
    for (const auto& [key, t] : s.complexity) {
        json entries = json::array();
        for (const auto& e : t.entries)
            entries.push_back({{"string", e.string}, {"stage", e.stage}, {"value", e.value}});
        json jt = {{"entries", entries}};
        if (t.fallback) jt["default"] = {{"base", t.fallback->base}, {"per_bit", t.fallback->per_bit}};
        tables[key] = jt;
    }
    return {{"name", s.name},
            {"mode", to_string(s.mode)},
            {"caps", {{"length", s.length_cap}, {"horizon", s.horizon}}},
            {"traces",
             {{"A", trace_to_json(s.a)},
              {"Astar", trace_to_json(s.a_star)},
              {"B", trace_to_json(s.b)},
              {"Bstar", trace_to_json(s.b_star)}}},
            {"functionals", functionals},
            {"requirements", s.requirements},
            {"complexity_tables", tables}};
}

namespace {

// Stage-t prefixes of length cap for every set the agreement lengths compare.
struct Prefixes {
    std::string a;
    std::string b;
    std::string joined;  // B* (+) D
};

Prefixes prefixes_at(const Scenario& s, const EnumerationTrace& d, Stage t) {
    const std::size_t n = s.length_cap;
    return {snapshot(s.a, t).prefix(n), snapshot(s.b, t).prefix(n),
            oplus_prefix(snapshot(s.b_star, t), snapshot(d, t), 2, n)};
}

// Largest l <= cap such that holds(l), 0 if none.
template <typename Pred>
std::size_t longest(std::size_t cap, Pred holds) {
    for (std::size_t l = cap + 1; l-- > 0;) {
        if (holds(l)) return l;
    }
    return 0;
}

std::size_t agreement(const Scenario& s, const Prefixes& px, std::size_t e, Stage t, bool p_side) {
    const std::size_t cap = s.length_cap;
    // p compares B* (+) D against B; q compares A against B* (+) D.
    const std::string& target = p_side ? px.joined : px.a;
    const std::string& source = p_side ? px.b : px.joined;
    if (s.mode == Mode::RK) {
        const FunctionalApprox& f = s.functionals.at(e);
        return longest(cap, [&](std::size_t l) {
            return f.contains(source.substr(0, l), target.substr(0, l), t);
        });
    }
    const ComplexityApprox& table = s.complexity.at(table_key(s.mode));
    return longest(cap, [&](std::size_t l) {
        return table.at(target.substr(0, l), t) <= table.at(source.substr(0, l), t) + e;
    });
}

}  // namespace

std::size_t match_p(const Scenario& s, const EnumerationTrace& d, std::size_t e, Stage t) {
    return agreement(s, prefixes_at(s, d, t), e, t, true);
}

std::size_t match_q(const Scenario& s, const EnumerationTrace& d, std::size_t e, Stage t) {
    return agreement(s, prefixes_at(s, d, t), e, t, false);
}

DensityResult run_construction(const Scenario& s) {
    s.validate();
    const std::size_t reqs = s.requirement_count();
    DensityResult r;
    r.p.assign(reqs, {});
    r.q.assign(reqs, {});
    std::vector<Event> d_events;

    std::vector<std::size_t> p(reqs, 0);
    std::vector<std::size_t> q(reqs, 0);
    auto refresh = [&](Stage t) {
        const EnumerationTrace d(d_events, std::max<Stage>(t, d_events.empty() ? 0 : d_events.back().stage));
        const Prefixes px = prefixes_at(s, d, t);
        for (std::size_t e = 0; e < reqs; ++e) {
            p[e] = std::max(p[e], agreement(s, px, e, t, true));
            q[e] = std::max(q[e], agreement(s, px, e, t, false));
            r.p[e].push_back(p[e]);
            r.q[e].push_back(q[e]);
        }
    };
    refresh(0);

    auto next = s.a_star.events().begin();
    for (Stage stage = 1; stage <= s.horizon; ++stage) {
        if (next != s.a_star.events().end() && next->stage == stage) {
            const Value a = next->value;
            ++next;
            if (a >= s.length_cap) {
                throw CapError("A* value " + std::to_string(a) + " at stage " +
                               std::to_string(stage) + " exceeds the length cap");
            }
            Action act;
            act.stage = stage;
            act.a = a;
            std::int64_t guard = -1;
            for (std::size_t e = 0; e < reqs; ++e) {
                const bool wants_p = a < p[e];
                const bool wants_n = a < q[e];
                if (wants_p || wants_n) {
                    act.e = e;
                    act.requirement = wants_p ? 'P' : 'N';
                    act.guard = guard;
                    act.enumerated = wants_p && static_cast<std::int64_t>(a) > guard;
                    break;
                }
                guard = std::max(guard, static_cast<std::int64_t>(q[e]));
            }
            if (!act.e) act.guard = guard;
            if (act.enumerated) d_events.push_back({stage, a});
            r.log.push_back(act);
        }
        refresh(stage);
    }
    r.d = EnumerationTrace(std::move(d_events), s.horizon);
    return r;
}

json to_json(const DensityResult& r, const Scenario& s) {
    json log = json::array();
    for (const auto& a : r.log) {
        log.push_back({{"stage", a.stage},
                       {"a", a.a},
                       {"e", a.e ? json(*a.e) : json(nullptr)},
                       {"requirement", std::string(1, a.requirement)},
                       {"guard", a.guard},
                       {"enumerated", a.enumerated}});
    }
    json d = json::array();
    for (const auto& e : r.d.events()) d.push_back({e.stage, e.value});
    return {{"scenario", s.name},
            {"mode", to_string(s.mode)},
            {"relative_to", "supplied family"},
            {"horizon", s.horizon},
            {"length_cap", s.length_cap},
            {"D", d},
            {"p", r.p},
            {"q", r.q},
            {"log", log}};
}

namespace {

EnumerationTrace random_set_trace(std::mt19937_64& rng, std::size_t cap, Stage horizon,
                                  bool one_per_stage) {
    std::vector<Value> values(cap);
    for (std::size_t i = 0; i < cap; ++i) values[i] = i;
    std::shuffle(values.begin(), values.end(), rng);
    std::uniform_int_distribution<std::size_t> count_dist(0, std::min<std::size_t>(cap, horizon));
    values.resize(count_dist(rng));
    std::vector<Stage> stages;
    std::uniform_int_distribution<Stage> stage_dist(1, horizon);
    if (one_per_stage) {
        std::vector<Stage> all(horizon);
        for (Stage i = 0; i < horizon; ++i) all[i] = i + 1;
        std::shuffle(all.begin(), all.end(), rng);
        stages.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(values.size()));
    } else {
        for (std::size_t i = 0; i < values.size(); ++i) stages.push_back(stage_dist(rng));
    }
    std::sort(stages.begin(), stages.end());
    std::vector<Event> events;
    for (std::size_t i = 0; i < values.size(); ++i) events.push_back({stages[i], values[i]});
    return EnumerationTrace(std::move(events), horizon);
}

std::string random_bits(std::mt19937_64& rng, std::size_t n) {
    std::string s(n, '0');
    for (auto& c : s) c = (rng() & 1) ? '1' : '0';
    return s;
}

}  // namespace

Scenario make_random_scenario(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
    };
    Scenario s;
    s.name = "random-" + std::to_string(seed);
    s.length_cap = uniform(6, 16);
    s.horizon = s.length_cap + uniform(0, 12);
    s.a_star = random_set_trace(rng, s.length_cap, s.horizon, true);
    s.a = random_set_trace(rng, s.length_cap, s.horizon, false);
    s.b = random_set_trace(rng, s.length_cap, s.horizon, false);
    s.b_star = random_set_trace(rng, s.length_cap, s.horizon, false);

    const auto mode_pick = uniform(0, 2);
    if (mode_pick == 0 || mode_pick == 1) {
        s.mode = Mode::RK;
        const auto count = uniform(0, 4);
        for (std::uint64_t e = 0; e < count; ++e) {
            FunctionalApprox f;
            const auto kind = uniform(0, 5);
            if (kind >= 4) {
                // Chains of prefix-closed entries keep the table consistent.
                f.kind = FunctionalKind::Table;
                const auto chains = uniform(1, 3);
                f.bound = chains;
                const std::string b_final = snapshot(s.b, s.horizon).prefix(s.length_cap);
                const std::string joined0 =
                    oplus_prefix(snapshot(s.b_star, s.horizon), SetSnapshot{}, 2, s.length_cap);
                for (std::uint64_t c = 0; c < chains; ++c) {
                    const std::string in = (rng() & 1) ? b_final : random_bits(rng, s.length_cap);
                    const std::string out = (rng() & 1) ? joined0 : random_bits(rng, s.length_cap);
                    const std::size_t len = uniform(1, s.length_cap);
                    Stage st = uniform(0, s.horizon / 2);
                    for (std::size_t j = 1; j <= len; ++j) {
                        f.entries.push_back({st, in.substr(0, j), out.substr(0, j)});
                        st = std::min<Stage>(s.horizon, st + uniform(0, 2));
                    }
                }
            } else {
                f.kind = static_cast<FunctionalKind>(kind + 1);
            }
            s.functionals.push_back(std::move(f));
        }
    } else {
        s.mode = uniform(0, 1) ? Mode::K : Mode::C;
        s.requirements = uniform(1, 4);
        for (const char* key : {"K", "C"}) {
            ComplexityApprox t;
            t.fallback = ComplexityApprox::Default{uniform(0, 3), 1};
            const auto strings = uniform(0, 6);
            for (std::uint64_t i = 0; i < strings; ++i) {
                const std::string sigma = random_bits(rng, uniform(0, s.length_cap));
                std::uint64_t v = t.fallback->base + sigma.size();
                Stage st = uniform(0, s.horizon);
                bool duplicate = false;
                for (const auto& e : t.entries) duplicate = duplicate || e.string == sigma;
                if (duplicate) continue;
                while (st <= s.horizon && v > 0) {
                    v -= uniform(0, std::min<std::uint64_t>(v, 3));
                    t.entries.push_back({sigma, st, v});
                    st += uniform(1, 4);
                }
            }
            s.complexity[key] = std::move(t);
        }
    }
    s.validate();
    return s;
}

}  // namespace enumcomp::density
