#pragma once

#include "mca/instance.hpp"
#include "mca/oracle.hpp"
#include "mca/solution.hpp"

#include <algorithm>
#include <vector>

namespace mca::test {

/// Instance with the given vertex colors and arcs; the color count is one
/// more than the largest color used.
inline auto make(std::vector<ColorId> colors, std::vector<Arc> arcs, VertexId root = 0) -> Instance
{
    const auto count = static_cast<std::size_t>(*std::ranges::max_element(colors)) + 1;
    return Instance(std::move(colors), std::move(arcs), root, count);
}

/// Oracle optimum, double-checked by the independent solution verifier.
inline auto oracle_weight(const Instance & inst) -> double
{
    return verify_solution(inst, brute_force_solve(inst));
}

}
