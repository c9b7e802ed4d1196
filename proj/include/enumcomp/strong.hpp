#pragma once

#include <stdexcept>
#include <vector>

#include "enumcomp/joint_run.hpp"

namespace enumcomp {

/// Raised when the strong compressor finds its target interval exhausted;
/// this cannot happen for a correct implementation.
class CompressionInvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/**
 * Strong compression of a normalized enumeration.
 *
 * At each stage s, take the least level n in [3, s] for which |A_s below 2^n|
 * just increased and is a multiple of 16; if there is one, enumerate the
 * least unused number of [2^(n-3), 2^(n-2)) into D on the same stage.
 * The resulting run may carry A- and D-events on one stage.
 */
JointRun compress_strong(const EnumerationTrace& a);

/// A -> D1 -> D2 -> ... -> D_depth, each step compressing the previous D.
/// Element i of the result is the run (D_i, D_{i+1}) with D_0 = A.
std::vector<JointRun> compress_iterated(const EnumerationTrace& a, unsigned depth);

}  // namespace enumcomp
