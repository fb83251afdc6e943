#pragma once

#include <span>

namespace fuzzyclf {

/// Index of the largest score; ties go to the lowest index.
inline int argmax_lowest(std::span<const double> scores) noexcept {
    int best = 0;
    for (std::size_t k = 1; k < scores.size(); ++k) {
        if (scores[k] > scores[static_cast<std::size_t>(best)]) best = static_cast<int>(k);
    }
    return best;
}

}  // namespace fuzzyclf
