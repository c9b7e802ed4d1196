#include "enumcomp/strong.hpp"

#include <array>
#include <bit>

namespace enumcomp {

namespace {
constexpr unsigned kLevels = 64;
}

JointRun compress_strong(const EnumerationTrace& a) {
    if (!a.is_normalized()) {
        throw std::invalid_argument("compress_strong: input trace must be normalized");
    }
    // below[n] = |A_s restricted to [0, 2^n)|, used[n] = D-values taken from level n.
    std::array<std::uint64_t, kLevels> below{};
    std::array<std::uint64_t, kLevels> used{};
    std::vector<Event> d_events;

    for (const auto& e : a.events()) {
        const unsigned width = static_cast<unsigned>(std::bit_width(e.value));
        for (unsigned n = width; n < kLevels; ++n) ++below[n];

        // Levels below bit_width(v) did not change at this stage.
        const Stage s = e.stage;
        for (unsigned n = std::max(3u, width); n < kLevels && n <= s; ++n) {
            if (below[n] % 16 != 0) continue;
            const Value lo = Value{1} << (n - 3);
            const Value hi = Value{1} << (n - 2);
            const Value pick = lo + used[n];
            if (pick >= hi) {
                throw CompressionInvariantError("strong compressor: interval [" +
                                                std::to_string(lo) + ", " + std::to_string(hi) +
                                                ") exhausted at stage " + std::to_string(s));
            }
            ++used[n];
            d_events.push_back({s, pick});
            break;
        }
    }
    return JointRun(a, EnumerationTrace(std::move(d_events), a.length()), RunOrigin::Strong);
}

std::vector<JointRun> compress_iterated(const EnumerationTrace& a, unsigned depth) {
    if (depth == 0) throw std::invalid_argument("compress_iterated: depth must be positive");
    std::vector<JointRun> chain;
    EnumerationTrace source = a;
    for (unsigned i = 0; i < depth; ++i) {
        chain.push_back(compress_strong(source));
        source = normalize_trace(chain.back().d());
    }
    return chain;
}

}  // namespace enumcomp
