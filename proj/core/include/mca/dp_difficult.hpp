#pragma once

#include "mca/instance.hpp"
#include "mca/options.hpp"
#include "mca/solution.hpp"

namespace mca {

/// O*(3^nhs)-time, O*(2^nhs)-space dynamic program parameterized by the
/// number of difficult colors.
///
/// For every vertex v (last to first in a topological order of G), every
/// subset X' of the difficult colors and every prefix i of the child color
/// order of v:
///
///   B[v, X', i] = 0                                        if c_i in X \ X'
///               = max(0, max_{col(u) = c_i} w(v,u) + A[u, X' - c_i, k_u])  otherwise
///   A[v, X', 0] = 0
///   A[v, X', i] = max_{X'' subset of X'} A[v, X'', i-1] + B[v, X' \ X'', i]
///
/// where c_i is the i-th child color of v and k_u the number of child colors
/// of u. Branches through different child colors with disjoint difficult
/// budgets never share a color, which is what makes the merge colorful.
///
/// Refuses instances with more than `limits.difficult_max` difficult colors.
/// Counter keys: "difficult.nhs", "difficult.max_children",
/// "difficult.split_visits", "difficult.live_entries".
[[nodiscard]] auto solve_difficult_dp(const Instance & inst, const SolveOptions & options = {}) -> Solution;

}
