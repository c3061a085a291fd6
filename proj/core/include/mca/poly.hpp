#pragma once

#include "mca/hierarchy.hpp"
#include "mca/instance.hpp"
#include "mca/options.hpp"
#include "mca/solution.hpp"

#include <optional>
#include <vector>

namespace mca {

/// Root color of H when the present colors of H form an arborescence (one
/// color of indegree 0, all others indegree exactly 1), nullopt otherwise.
[[nodiscard]] auto is_arb_hierarchy(const ColorHierarchy & h) -> std::optional<ColorId>;

/// Colors c such that H+(c) is an arborescence and no arc of H enters
/// H+(c) \ {c} from a color outside H+(c). Arcs into c itself are allowed.
[[nodiscard]] auto autonomous_colors(const Instance & inst, const ColorHierarchy & h) -> std::vector<ColorId>;

/// Maximum colorful arborescence rooted at `sub_root`, computed bottom-up in
/// polynomial time. Requires H+(col(sub_root)) to be an arborescence that no
/// arc of H enters below col(sub_root); throws PreconditionError otherwise.
///
/// Counter keys: "poly.arc_visits".
[[nodiscard]] auto solve_arb_hierarchy(const Instance & inst, VertexId sub_root,
                                       const SolveOptions & options = {}) -> Solution;

/// Whole-instance entry point: prunes unreachable vertices, checks that the
/// hierarchy is an arborescence (GuardExceeded otherwise) and solves from r.
[[nodiscard]] auto solve_arb_instance(const Instance & inst, const SolveOptions & options = {}) -> Solution;

}
