#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "enumcomp/joint_run.hpp"

namespace enumcomp {

enum class BlockLabel { Unlabeled, Type1, Type2, Type3 };

std::string_view to_string(BlockLabel label);

/// Cells of one row strictly between two consecutive D-changes at or below
/// that row. The load counts A-entries <= row in the open stage interval.
struct Block {
    Value row = 0;
    Stage left = 0;
    Stage right = 0;
    std::size_t load = 0;
    BlockLabel label = BlockLabel::Unlabeled;

    friend bool operator==(const Block&, const Block&) = default;
};

/// The open interval from the last D-change at or below the row to the horizon.
struct TailBlock {
    Value row = 0;
    Stage left = 0;
    Stage right = 0;
    std::size_t load = 0;
};

class LabelError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Read-only derived quantities of the (A, D)-table up to a horizon.
class TableView {
public:
    explicit TableView(const JointRun& run);
    TableView(const JointRun& run, Stage horizon);

    const JointRun& run() const noexcept { return *run_; }
    Stage horizon() const noexcept { return horizon_; }
    /// One past the largest value enumerated by either set (at least 1).
    Value universe() const noexcept { return universe_; }
    /// Rows accepted by the queries: [0, max(universe, horizon + 1)).
    Value row_limit() const noexcept;

    /// Largest t < stage at which D enumerated a value <= row; 0 if none.
    Stage last_change(Value row, Stage stage) const;
    /// A-entries <= row in (last_change(row, stage), stage].
    std::size_t tail_load(Value row, Stage stage) const;
    bool is_loaded(Value row, Stage stage, std::size_t p) const;

    /// Closed blocks of a row in stage order; the tail is not included.
    std::vector<Block> blocks_of_row(Value row) const;
    TailBlock tail_block(Value row) const;

private:
    void check_row(Value row) const;
    void check_stage(Stage stage) const;

    const JointRun* run_;
    Stage horizon_;
    Value universe_ = 1;
};

/// Closed blocks of every row in [0, universe), rows indexed by number.
struct BlockTable {
    std::vector<std::vector<Block>> rows;
};

/// All closed blocks with loads, computed in one sweep over the rows.
BlockTable all_blocks(const TableView& view);

/**
 * Labels blocks row by row. Row r inherits the blocks and labels of row r-1
 * except where the D-enumeration of r itself splits a block: the left part
 * becomes type-1 and the right part type-2 when the split block was type-1,
 * type-3 otherwise. The segment before a row's first D-change is not a
 * closed block but splits like a type-1 block.
 *
 * Throws LabelError unless the run came from the gainless construction.
 */
BlockTable label_blocks(const TableView& view);

struct RenderOptions {
    Stage max_columns = 200;
    Value max_rows = 200;
};

/// ASCII (A, D)-table: '.' blank, 'a' A-bar, 'd' D-bar, '#' both on one stage.
std::string render_table(const TableView& view, const RenderOptions& options = {});

/// row,left,right,load,label per closed block (labels only for gainless runs).
std::string blocks_csv(const TableView& view);

}  // namespace enumcomp
