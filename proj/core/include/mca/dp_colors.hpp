#pragma once

#include "mca/instance.hpp"
#include "mca/options.hpp"
#include "mca/solution.hpp"

namespace mca {

/// Baseline O*(3^|C|) dynamic program over color subsets.
///
/// W[v, S] is the best colorful arborescence rooted at v using only colors of
/// S (plus col(v)), never below 0. A table entry either extends v by one
/// arc, w(v, u) + W[u, S \ {col(v)}], or merges two forests on complementary
/// color sets, W[v, S'] + W[v, S'']. Only colors reachable from col(v) in
/// H can appear below v, so each vertex indexes its table by subsets of those
/// colors.
///
/// Refuses instances with more than `limits.colors_max` colors.
/// Counter keys: "colors.split_visits", "colors.table_entries".
[[nodiscard]] auto solve_colors_dp(const Instance & inst, const SolveOptions & options = {}) -> Solution;

}
