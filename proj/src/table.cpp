#include "enumcomp/table.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

namespace enumcomp {

std::string_view to_string(BlockLabel label) {
    switch (label) {
        case BlockLabel::Unlabeled: return "unlabeled";
        case BlockLabel::Type1: return "type1";
        case BlockLabel::Type2: return "type2";
        case BlockLabel::Type3: return "type3";
    }
    return "unlabeled";
}

TableView::TableView(const JointRun& run) : TableView(run, run.length()) {}

TableView::TableView(const JointRun& run, Stage horizon) : run_(&run), horizon_(horizon) {
    if (horizon > run.length()) {
        throw std::out_of_range("table horizon " + std::to_string(horizon) +
                                " exceeds run length " + std::to_string(run.length()));
    }
    Value top = 0;
    if (auto m = run.a().max_value()) top = std::max(top, *m);
    if (auto m = run.d().max_value()) top = std::max(top, *m);
    universe_ = top + 1;
}

Value TableView::row_limit() const noexcept { return std::max(universe_, horizon_ + 1); }

void TableView::check_row(Value row) const {
    if (row >= row_limit()) {
        throw std::out_of_range("row " + std::to_string(row) + " outside table");
    }
}

void TableView::check_stage(Stage stage) const {
    if (stage > horizon_) {
        throw std::out_of_range("stage " + std::to_string(stage) + " beyond horizon " +
                                std::to_string(horizon_));
    }
}

Stage TableView::last_change(Value row, Stage stage) const {
    check_row(row);
    check_stage(stage);
    Stage best = 0;
    for (const auto& e : run_->d().events()) {
        if (e.stage >= stage) break;
        if (e.value <= row) best = e.stage;
    }
    return best;
}

std::size_t TableView::tail_load(Value row, Stage stage) const {
    const Stage from = last_change(row, stage);
    return window_diff(run_->a(), from, stage, row + 1);
}

bool TableView::is_loaded(Value row, Stage stage, std::size_t p) const {
    return tail_load(row, stage) >= p;
}

std::vector<Block> TableView::blocks_of_row(Value row) const {
    check_row(row);
    std::vector<Stage> cuts;
    for (const auto& e : run_->d().events()) {
        if (e.stage > horizon_) break;
        if (e.value <= row) cuts.push_back(e.stage);
    }
    std::vector<Block> out;
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        const Stage left = cuts[i - 1];
        const Stage right = cuts[i];
        out.push_back({row, left, right, window_diff(run_->a(), left, right - 1, row + 1),
                       BlockLabel::Unlabeled});
    }
    return out;
}

TailBlock TableView::tail_block(Value row) const {
    check_row(row);
    Stage left = 0;
    for (const auto& e : run_->d().events()) {
        if (e.stage > horizon_) break;
        if (e.value <= row) left = e.stage;
    }
    return {row, left, horizon_, window_diff(run_->a(), left, horizon_, row + 1)};
}

namespace {

// Sweeps rows upward keeping the sorted cut stages and the sorted stages of
// A-entries <= row, so each block load is two binary searches.
class RowSweep {
public:
    explicit RowSweep(const TableView& view) {
        const Stage h = view.horizon();
        for (const auto& e : view.run().a().events()) {
            if (e.stage <= h) a_entries_[e.value] = e.stage;
        }
        for (const auto& e : view.run().d().events()) {
            if (e.stage <= h) d_entries_[e.value] = e.stage;
        }
    }

    /// Advances to `row` (rows must be visited in increasing order starting at 0).
    /// Returns the stage at which `row` itself entered D, if it did.
    std::optional<Stage> advance(Value row) {
        if (auto it = a_entries_.find(row); it != a_entries_.end()) {
            a_stages_.insert(std::upper_bound(a_stages_.begin(), a_stages_.end(), it->second),
                             it->second);
        }
        if (auto it = d_entries_.find(row); it != d_entries_.end()) {
            cuts_.insert(std::upper_bound(cuts_.begin(), cuts_.end(), it->second), it->second);
            return it->second;
        }
        return std::nullopt;
    }

    const std::vector<Stage>& cuts() const { return cuts_; }

    /// A-entries at or below the current row in the open interval (left, right).
    std::size_t load(Stage left, Stage right) const {
        const auto lo = std::upper_bound(a_stages_.begin(), a_stages_.end(), left);
        const auto hi = std::lower_bound(a_stages_.begin(), a_stages_.end(), right);
        return hi > lo ? static_cast<std::size_t>(hi - lo) : 0;
    }

private:
    std::map<Value, Stage> a_entries_;
    std::map<Value, Stage> d_entries_;
    std::vector<Stage> a_stages_;
    std::vector<Stage> cuts_;
};

}  // namespace

BlockTable all_blocks(const TableView& view) {
    BlockTable table;
    table.rows.resize(view.universe());
    RowSweep sweep(view);
    for (Value row = 0; row < view.universe(); ++row) {
        sweep.advance(row);
        const auto& cuts = sweep.cuts();
        auto& blocks = table.rows[row];
        for (std::size_t i = 1; i < cuts.size(); ++i) {
            blocks.push_back({row, cuts[i - 1], cuts[i], sweep.load(cuts[i - 1], cuts[i]),
                              BlockLabel::Unlabeled});
        }
    }
    return table;
}

BlockTable label_blocks(const TableView& view) {
    if (view.run().origin() != RunOrigin::Gainless) {
        throw LabelError("block labels are defined only for runs of the gainless construction");
    }
    BlockTable table;
    table.rows.resize(view.universe());
    RowSweep sweep(view);
    // Labels of the current row keyed by left end; they carry over to the next row.
    std::map<Stage, BlockLabel> labels;
    std::vector<Stage> prev_cuts;
    for (Value row = 0; row < view.universe(); ++row) {
        const auto split = sweep.advance(row);
        if (split) {
            const Stage e = *split;
            const auto succ = std::upper_bound(prev_cuts.begin(), prev_cuts.end(), e);
            const bool has_pred = succ != prev_cuts.begin();
            const bool has_succ = succ != prev_cuts.end();
            if (has_pred) {
                const Stage pred = *std::prev(succ);
                const BlockLabel parent = has_succ ? labels.at(pred) : BlockLabel::Unlabeled;
                labels[pred] = BlockLabel::Type1;
                if (has_succ) {
                    labels[e] =
                        parent == BlockLabel::Type1 ? BlockLabel::Type2 : BlockLabel::Type3;
                }
            } else if (has_succ) {
                // The uncut initial segment behaves as a type-1 parent.
                labels[e] = BlockLabel::Type2;
            }
        }
        const auto& cuts = sweep.cuts();
        auto& blocks = table.rows[row];
        for (std::size_t i = 1; i < cuts.size(); ++i) {
            blocks.push_back({row, cuts[i - 1], cuts[i], sweep.load(cuts[i - 1], cuts[i]),
                              labels.at(cuts[i - 1])});
        }
        prev_cuts = cuts;
    }
    return table;
}

std::string render_table(const TableView& view, const RenderOptions& options) {
    const Stage h = view.horizon();
    const Value rows = view.universe();
    if (h + 1 > options.max_columns) {
        throw std::out_of_range("render: horizon " + std::to_string(h) +
                                " exceeds render cap of " +
                                std::to_string(options.max_columns) + " columns");
    }
    if (rows > options.max_rows) {
        throw std::out_of_range("render: " + std::to_string(rows) +
                                " rows exceed render cap of " + std::to_string(options.max_rows));
    }
    // Per stage: smallest value entering A / D there (a bar covers rows >= value).
    std::vector<std::optional<Value>> a_bar(h + 1), d_bar(h + 1);
    for (const auto& e : view.run().a().events()) {
        if (e.stage <= h) a_bar[e.stage] = e.value;
    }
    for (const auto& e : view.run().d().events()) {
        if (e.stage <= h) d_bar[e.stage] = e.value;
    }
    const int width = static_cast<int>(std::to_string(rows - 1).size());
    std::ostringstream out;
    out << std::string(width, ' ') << " |";
    for (Stage s = 0; s <= h; ++s) out << static_cast<char>('0' + s % 10);
    out << '\n';
    for (Value r = 0; r < rows; ++r) {
        out << std::setw(width) << r << " |";
        for (Stage s = 0; s <= h; ++s) {
            const bool a = a_bar[s] && *a_bar[s] <= r;
            const bool d = d_bar[s] && *d_bar[s] <= r;
            out << (a && d ? '#' : a ? 'a' : d ? 'd' : '.');
        }
        out << '\n';
    }
    return out.str();
}

std::string blocks_csv(const TableView& view) {
    const BlockTable table = view.run().origin() == RunOrigin::Gainless ? label_blocks(view)
                                                                         : all_blocks(view);
    std::ostringstream out;
    out << "row,left,right,load,label\n";
    for (const auto& row : table.rows) {
        for (const auto& b : row) {
            out << b.row << ',' << b.left << ',' << b.right << ',' << b.load << ','
                << to_string(b.label) << '\n';
        }
    }
    return out.str();
}

}  // namespace enumcomp
