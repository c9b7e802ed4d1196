#include "enumcomp/verifier.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <future>
#include <stdexcept>

#include "enumcomp/gainless.hpp"
#include "enumcomp/table.hpp"

namespace enumcomp {

std::string PrefixMap::name() const {
    if (shift == 0) return "id";
    if (shift == 1) return "half";
    return "shift:" + std::to_string(shift);
}

PrefixMap PrefixMap::parse(std::string_view text) {
    if (text == "id" || text == "identity") return identity();
    if (text == "half") return half();
    constexpr std::string_view prefix = "shift:";
    if (text.substr(0, prefix.size()) == prefix) {
        const auto digits = text.substr(prefix.size());
        unsigned d = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
        if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty() &&
            d < 64) {
            return shifted(d);
        }
    }
    throw std::invalid_argument("unknown prefix map '" + std::string(text) +
                                "' (expected id, half or shift:<d>)");
}

namespace {

std::vector<Value> sorted_values(const EnumerationTrace& t) {
    std::vector<Value> v;
    v.reserve(t.size());
    for (const auto& e : t.events()) v.push_back(e.value);
    std::sort(v.begin(), v.end());
    return v;
}

std::size_t count_below(const std::vector<Value>& sorted, Value bound) {
    return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), bound) -
                                    sorted.begin());
}

Value universe_of(const JointRun& run) {
    Value u = 0;
    if (auto m = run.a().max_value()) u = std::max(u, *m + 1);
    if (auto m = run.d().max_value()) u = std::max(u, *m + 1);
    return u;
}

// Heaviest gap scan for one n. Returns the first window (s, t] in which the
// covered set gains more than c values below n with no cover entry below fn.
std::optional<Counterexample> scan_gaps(const EnumerationTrace& covered,
                                        const EnumerationTrace& cover, Value n, Value fn,
                                        std::size_t c, std::size_t& heaviest) {
    const auto& xs = covered.events();
    const auto& ys = cover.events();
    std::size_t i = 0;
    std::size_t j = 0;
    Stage gap_start = 0;
    std::size_t count = 0;
    while (i < xs.size()) {
        const Stage s = xs[i].stage;
        bool barrier = false;
        while (j < ys.size() && ys[j].stage <= s) {
            if (ys[j].value < fn) {
                barrier = true;
                gap_start = ys[j].stage;
                count = 0;
            }
            ++j;
        }
        // Entries on a barrier stage never lie in a cover-free window.
        const bool on_barrier = barrier && gap_start == s;
        for (; i < xs.size() && xs[i].stage == s; ++i) {
            if (on_barrier || xs[i].value >= n) continue;
            ++count;
            heaviest = std::max(heaviest, count);
            if (count > c) return Counterexample{gap_start, s, n};
        }
    }
    return std::nullopt;
}

std::string describe(const Counterexample& ce) {
    return "s=" + std::to_string(ce.s) + " t=" + std::to_string(ce.t) +
           " n=" + std::to_string(ce.n);
}

CheckReport fail(CheckReport r, Counterexample ce, const std::string& why) {
    r.passed = false;
    r.counterexample = ce;
    r.detail = why + " (" + describe(ce) + ")";
    return r;
}

}  // namespace

CheckReport check_covering(const EnumerationTrace& covered, const EnumerationTrace& cover,
                           std::size_t c, PrefixMap f, Stage horizon) {
    CheckReport r;
    r.name = "covering";
    r.metrics["c"] = static_cast<double>(c);
    r.metrics["f_shift"] = f.shift;
    r.metrics["horizon"] = static_cast<double>(horizon);

    // Below-n sets of the covered trace only change at n = x + 1, and f is
    // monotone, so the least n of each plateau is the hardest one to cover.
    std::vector<Value> thresholds = sorted_values(covered);
    for (auto& v : thresholds) ++v;

    std::size_t heaviest = 0;
    for (const Value n : thresholds) {
        if (auto ce = scan_gaps(covered, cover, n, f(n), c, heaviest)) {
            r.metrics["max_window_count"] = static_cast<double>(heaviest);
            return fail(std::move(r), *ce,
                        "more than " + std::to_string(c) + " entries below n with no cover below " +
                            std::to_string(f(n)));
        }
    }
    r.metrics["max_window_count"] = static_cast<double>(heaviest);
    r.detail = "condition (c=" + std::to_string(c) + ", f=" + f.name() + ") holds on every window";
    return r;
}

CheckReport check_covering(const JointRun& run, std::size_t c, PrefixMap f) {
    return check_covering(run.a(), run.d(), c, f, run.length());
}

CheckReport check_gain(const JointRun& run) {
    CheckReport r = check_covering(run.d(), run.a(), 1, PrefixMap::identity(), run.length());
    r.name = "gain";
    return r;
}

CheckReport check_density(const JointRun& run) {
    CheckReport r;
    r.name = "density";
    const auto a = sorted_values(run.a());
    const auto d = sorted_values(run.d());

    double slack = 0.0;
    const Value universe = universe_of(run);
    for (Value n = 0; n <= universe; ++n) {
        const double diff = static_cast<double>(count_below(d, n)) -
                            static_cast<double>(count_below(a, n)) / 2.0;
        slack = std::max(slack, diff);
    }
    r.metrics["max_half_ratio_slack"] = slack;

    const Value cap = d.empty() ? 0 : d.back() + 1;
    for (Value n = 0; n <= cap; ++n) {
        const std::size_t got = count_below(d, 2 * n);
        if (got > n) {
            return fail(std::move(r), Counterexample{0, 0, n},
                        "|D below " + std::to_string(2 * n) + "| = " + std::to_string(got) +
                            " exceeds " + std::to_string(n));
        }
    }
    r.detail = "|D below 2n| <= n for every n";
    return r;
}

CheckReport check_loads(const JointRun& run, std::size_t bound) {
    CheckReport r;
    r.name = "loads";
    r.metrics["bound"] = static_cast<double>(bound);
    const Value universe = universe_of(run);
    std::vector<std::size_t> load(universe, 0);
    std::size_t max_load = 0;

    const auto& as = run.a().events();
    const auto& ds = run.d().events();
    std::size_t i = 0;
    std::size_t j = 0;
    std::optional<Counterexample> first;
    while (i < as.size() || j < ds.size()) {
        const Stage s = std::min(i < as.size() ? as[i].stage : run.length() + 1,
                                 j < ds.size() ? ds[j].stage : run.length() + 1);
        for (; i < as.size() && as[i].stage == s; ++i) {
            const Value v = as[i].value;
            for (Value row = v; row < universe; ++row) {
                ++load[row];
                if (load[row] > max_load) max_load = load[row];
                if (!first && load[row] > bound) first = Counterexample{s, s, row};
            }
        }
        // A D-change on stage s only resets tails from stage s + 1 on.
        for (; j < ds.size() && ds[j].stage == s; ++j) {
            std::fill(load.begin() + static_cast<std::ptrdiff_t>(ds[j].value), load.end(), 0);
        }
    }
    r.metrics["max_load"] = static_cast<double>(max_load);
    if (first) {
        return fail(std::move(r), *first, "tail load exceeds " + std::to_string(bound));
    }
    r.detail = "every tail load stays <= " + std::to_string(bound);
    return r;
}

CheckReport check_block_majority(const JointRun& run) {
    CheckReport r;
    r.name = "blocks";
    const TableView view(run);
    const BlockTable table = label_blocks(view);  // throws LabelError off gainless runs

    std::size_t rows_with_blocks = 0;
    std::size_t total = 0;
    std::size_t loaded_total = 0;
    std::size_t widest = 0;
    std::size_t type_counts[4] = {0, 0, 0, 0};
    std::optional<Counterexample> first;
    std::string why;

    for (const auto& row : table.rows) {
        if (row.empty()) continue;
        ++rows_with_blocks;
        widest = std::max(widest, row.size());
        std::size_t loaded = 0;
        std::size_t t1 = 0;
        std::size_t t3 = 0;
        for (const Block& b : row) {
            ++total;
            ++type_counts[static_cast<int>(b.label)];
            const bool is_loaded = b.load >= kTargetLoad;
            if (is_loaded) {
                ++loaded;
                ++loaded_total;
            }
            if (b.label == BlockLabel::Type1) ++t1;
            if (b.label == BlockLabel::Type3) ++t3;
            if (!first && !is_loaded &&
                (b.label == BlockLabel::Type1 || b.label == BlockLabel::Type2)) {
                first = Counterexample{b.left, b.right, b.row};
                why = std::string(to_string(b.label)) + " block with load " +
                      std::to_string(b.load);
            }
        }
        const Value row_no = row.front().row;
        if (!first && loaded < row.size() - loaded) {
            first = Counterexample{row.front().left, row.back().right, row_no};
            why = std::to_string(loaded) + " loaded blocks against " +
                  std::to_string(row.size() - loaded) + " others";
        }
        if (!first && t1 < t3) {
            first = Counterexample{row.front().left, row.back().right, row_no};
            why = std::to_string(t1) + " type1 blocks against " + std::to_string(t3) + " type3";
        }
    }
    r.metrics["rows_with_blocks"] = static_cast<double>(rows_with_blocks);
    r.metrics["blocks"] = static_cast<double>(total);
    r.metrics["loaded_blocks"] = static_cast<double>(loaded_total);
    r.metrics["max_blocks_per_row"] = static_cast<double>(widest);
    r.metrics["type1"] = static_cast<double>(type_counts[1]);
    r.metrics["type2"] = static_cast<double>(type_counts[2]);
    r.metrics["type3"] = static_cast<double>(type_counts[3]);
    if (first) return fail(std::move(r), *first, why);
    r.detail = "loaded blocks form a majority on every row";
    return r;
}

CheckReport check_subset(const JointRun& run) {
    CheckReport r;
    r.name = "subset";
    const auto a = sorted_values(run.a());
    for (const auto& e : run.d().events()) {
        if (!std::binary_search(a.begin(), a.end(), e.value)) {
            return fail(std::move(r), Counterexample{e.stage, e.stage, e.value},
                        "D-value never enumerated into A");
        }
    }
    r.detail = "D is contained in A";
    return r;
}

CheckReport check_witness(const JointRun& run) {
    CheckReport r;
    r.name = "witness";
    const auto& ds = run.d().events();
    for (const auto& e : ds) {
        const auto entry = run.a().entry_stage(e.value);
        if (!entry || *entry >= e.stage) {
            return fail(std::move(r), Counterexample{0, e.stage, e.value},
                        "D-value not in A before its D-stage");
        }
        for (const auto& other : ds) {
            if (other.stage >= e.stage) break;
            if (other.stage >= *entry && other.value <= e.value) {
                return fail(std::move(r), Counterexample{*entry, e.stage, e.value},
                            "D changed at or below the value after it entered A (stage " +
                                std::to_string(other.stage) + ")");
            }
        }
    }
    r.detail = "every D-value entered A after the last D-change at or below it";
    return r;
}

CheckReport check_strong_intervals(const JointRun& run) {
    CheckReport r;
    r.name = "intervals";
    const auto a = sorted_values(run.a());
    const auto d = sorted_values(run.d());
    if (!d.empty() && d.front() == 0) {
        return fail(std::move(r), Counterexample{0, 0, 0}, "D contains 0, outside every interval");
    }
    double tightest = 0.0;
    for (unsigned n = 3; n < 64; ++n) {
        const Value lo = Value{1} << (n - 3);
        const Value hi = Value{1} << (n - 2);
        const std::size_t used = count_below(d, hi) - count_below(d, lo);
        const std::size_t budget = count_below(a, Value{1} << n);
        if (budget > 0) tightest = std::max(tightest, 16.0 * static_cast<double>(used) / budget);
        if (16 * used > budget) {
            return fail(std::move(r), Counterexample{0, 0, n},
                        std::to_string(used) + " D-values in [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + ") against |A below 2^n| = " +
                            std::to_string(budget));
        }
        if (lo > (d.empty() ? 0 : d.back()) && (Value{1} << n) > (a.empty() ? 0 : a.back()))
            break;
    }
    r.metrics["max_fill_ratio"] = tightest;
    r.detail = "|D in [2^(n-3), 2^(n-2))| <= |A below 2^n| / 16 for every n >= 3";
    return r;
}

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names = {
        "blocks", "covering", "covering_literal", "density", "gain",
        "intervals", "loads", "subset", "witness"};
    return names;
}

std::vector<std::string> default_checks(RunOrigin origin) {
    switch (origin) {
        case RunOrigin::Gainless:
            return {"blocks", "covering", "covering_literal", "density", "gain", "loads",
                    "subset", "witness"};
        case RunOrigin::Strong:
            return {"covering", "gain", "intervals", "subset"};
        case RunOrigin::Manual:
            break;
    }
    return {"covering", "density", "gain", "loads", "subset"};
}

namespace {

bool is_asserted(const std::string& name, RunOrigin origin) {
    if (name == "covering_literal") return false;
    if (origin == RunOrigin::Strong) return name == "covering" || name == "intervals";
    return true;
}

}  // namespace

std::vector<CheckReport> run_checks(const JointRun& run, const std::vector<std::string>& names,
                                    const VerifyOptions& options) {
    const bool gainless = run.origin() == RunOrigin::Gainless;
    const std::size_t c = options.c.value_or(gainless ? 9 : 16);
    const PrefixMap f =
        options.f.value_or(gainless ? PrefixMap::identity() : PrefixMap::half());

    std::vector<std::string> unique = names;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

    std::vector<std::function<CheckReport()>> jobs;
    for (const auto& name : unique) {
        std::function<CheckReport()> job;
        if (name == "covering") {
            job = [&run, c, f] { return check_covering(run, c, f); };
        } else if (name == "covering_literal") {
            job = [&run, f] {
                CheckReport r = check_covering(run, 7, f);
                r.name = "covering_literal";
                return r;
            };
        } else if (name == "gain") {
            job = [&run] { return check_gain(run); };
        } else if (name == "density") {
            job = [&run] { return check_density(run); };
        } else if (name == "loads") {
            job = [&run] { return check_loads(run); };
        } else if (name == "blocks") {
            job = [&run] { return check_block_majority(run); };
        } else if (name == "subset") {
            job = [&run] { return check_subset(run); };
        } else if (name == "witness") {
            job = [&run] { return check_witness(run); };
        } else if (name == "intervals") {
            job = [&run] { return check_strong_intervals(run); };
        } else {
            throw std::invalid_argument("unknown check '" + name + "'");
        }
        jobs.push_back([job, name] {
            try {
                return job();
            } catch (const std::exception& ex) {
                CheckReport r;
                r.name = name;
                r.passed = false;
                r.detail = std::string("check could not run: ") + ex.what();
                return r;
            }
        });
    }

    std::vector<std::future<CheckReport>> futures;
    futures.reserve(jobs.size());
    for (auto& job : jobs) futures.push_back(std::async(std::launch::async, job));

    std::vector<CheckReport> reports;
    reports.reserve(futures.size());
    for (auto& fut : futures) {
        CheckReport rep = fut.get();
        rep.asserted = is_asserted(rep.name, run.origin());
        reports.push_back(std::move(rep));
    }
    std::sort(reports.begin(), reports.end(),
              [](const CheckReport& x, const CheckReport& y) { return x.name < y.name; });
    return reports;
}

bool all_asserted_pass(const std::vector<CheckReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const CheckReport& r) { return !r.asserted || r.passed; });
}

}  // namespace enumcomp
