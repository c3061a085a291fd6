#pragma once

#include "mca/instance.hpp"

#include <cstddef>
#include <cstdint>

namespace mca {

struct Stats
{
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t colors = 0;
    std::size_t nhs = 0;
    std::int64_t lc = 0;
    /// Min-fill width of U(H) after pruning unreachable vertices.
    int ht_upper = 0;
    /// Product of the color multiplicities; a double so it cannot overflow.
    double fully_colorful_count = 1.0;
    bool is_arb_hierarchy = false;
    /// Largest number of distinct out-neighbor colors of a vertex.
    std::size_t max_children = 0;
};

/// n, m, |C|, nhs and lc describe the instance as given; the hierarchy shape
/// and width describe it after pruning, which is what the solvers see.
[[nodiscard]] auto stats(const Instance & inst) -> Stats;

}
