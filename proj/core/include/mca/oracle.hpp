#pragma once

#include "mca/instance.hpp"
#include "mca/options.hpp"
#include "mca/solution.hpp"

#include <optional>
#include <span>

namespace mca {

/// Best arborescence rooted at r spanning exactly the vertex set S.
///
/// In a DAG, picking one in-arc from inside S for every non-root vertex of S
/// never closes a cycle and every parent chain ends at r, so the optimum is
/// the sum of the heaviest in-arcs. Returns nullopt when some vertex of
/// S \ {r} has no in-neighbor in S. Colorfulness is not checked here.
/// Throws PreconditionError if r is not in S.
[[nodiscard]] auto best_arborescence_on_set(const Instance & inst, std::span<const VertexId> subset)
    -> std::optional<double>;

/// Exhaustive solver: maximum of best_arborescence_on_set over every colorful
/// vertex set containing r. O(2^n * m); refuses instances with more than
/// `limits.brute_max_vertices` vertices.
[[nodiscard]] auto brute_force_solve(const Instance & inst, const SolveOptions & options = {}) -> Solution;

}
