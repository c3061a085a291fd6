#pragma once

// Internal helpers shared by the solvers; not installed.

#include "mca/instance.hpp"
#include "mca/solution.hpp"

#include <vector>

namespace mca::detail {

inline auto idx(std::int32_t v) -> std::size_t
{
    return static_cast<std::size_t>(v);
}

/// An instance restricted to the vertices reachable from r, together with
/// the original id of every kept vertex.
struct PrunedView
{
    Instance inst;
    std::vector<VertexId> original;

    explicit PrunedView(const Instance & full) :
        inst(prune_unreachable(full)),
        original(reachable_from_root(full))
    {
    }

    /// Translates a solution of the pruned instance back to original ids.
    [[nodiscard]] auto lift(std::vector<Arc> arcs) const -> Solution
    {
        for (auto & a : arcs) {
            a.src = original[idx(a.src)];
            a.dst = original[idx(a.dst)];
        }
        return make_solution(original[idx(inst.root())], std::move(arcs));
    }
};

}
