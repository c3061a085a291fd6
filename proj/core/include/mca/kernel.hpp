#pragma once

#include "mca/instance.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mca {

/// One rule application, recorded against the vertex ids of the instance it
/// was applied to. apply_entry() replays it.
struct ReductionEntry
{
    int rule = 0;
    /// Rule 1: {c}. Rule 2: {c1, c2, c3}. Rule 3: {col(v)}.
    std::vector<ColorId> colors;
    /// Rule 1: (v, w(T_v)) for every v of color c; the weight is added to
    /// each in-arc of v.
    std::vector<std::pair<VertexId, double>> subtree_weights;
    /// Rule 2: color of the fresh vertex, which receives id vertex_count().
    std::optional<ColorId> new_vertex_color;
    /// Rule 2: shortcut arcs (v1, v3, pi(v1, v3)) and arcs (v1, v*, w).
    std::vector<Arc> arcs_added;
    /// Rule 3: deleted in-arcs (src, dst).
    std::vector<std::pair<VertexId, VertexId>> arcs_removed;
    std::vector<VertexId> vertices_removed;
    /// 1 when the application may add one vertex outside every solution
    /// (Rule 2 with a single vertex of color c2), 0 otherwise.
    int budget_increase = 0;
};

using ReductionLog = std::vector<ReductionEntry>;

/// Promise that some optimal solution leaves at most `ell` vertices out.
struct KernelBudget
{
    int ell = 0;
};

struct RuleApplication
{
    Instance instance;
    ReductionEntry entry;
};

struct KernelResult
{
    Instance instance;
    ReductionLog log;
    /// ell plus every budget_increase of the log; the promise the kernel
    /// satisfies and the value its bounds are checked against.
    int effective_ell = 0;
};

/// Maximum total weight of a directed path from v1 to v3, 0 when v1 == v3,
/// nullopt when v3 is unreachable from v1.
[[nodiscard]] auto max_weight_path(const Instance & inst, VertexId v1, VertexId v3) -> std::optional<double>;

/// Applies the edits of `entry` and deletes its vertices with their arcs.
/// Survivors are renumbered in ascending order, then vertices no longer
/// reachable from r are pruned. Color ids are kept.
[[nodiscard]] auto apply_entry(const Instance & inst, const ReductionEntry & entry) -> Instance;

/// Rule 1 on the autonomous color c != col(r) with |H+(c)| >= 2 and the
/// largest H+(c) (smallest id among ties). `inst` must be pruned.
[[nodiscard]] auto apply_rule_autonomous(const Instance & inst) -> std::optional<RuleApplication>;

/// Rule 2 on the triple (c1, c2, c3) with the smallest c2, where c1 is the
/// only in-neighbor of c2, c2 the only in-neighbor of c3 and c3 the only
/// out-neighbor of c2. Neither c2 nor c3 may be col(r).
[[nodiscard]] auto apply_rule_chain(const Instance & inst) -> std::optional<RuleApplication>;

/// Rule 3 on the first vertex v with more than ell + 1 in-neighbors of
/// unique color: keeps the ell + 1 heaviest such in-arcs.
[[nodiscard]] auto apply_rule_unique_inarcs(const Instance & inst, KernelBudget budget)
    -> std::optional<RuleApplication>;

/// Prunes, then runs rounds of (Rule 1, Rule 2, Rule 3), each applied at most
/// once per round, until a round changes nothing. Rule 3 uses the effective
/// budget. The returned instance has compacted colors.
[[nodiscard]] auto kernelize(const Instance & inst, KernelBudget budget) -> KernelResult;

/// Replays a log on the instance it was produced from; equals
/// kernelize(inst, ...).instance exactly.
[[nodiscard]] auto replay(const Instance & inst, const ReductionLog & log) -> Instance;

struct BoundCheck
{
    std::string name;
    bool passed = false;
    std::string detail;
};

struct BoundReport
{
    std::vector<BoundCheck> checks;

    [[nodiscard]] auto all_passed() const -> bool;
    /// Result of the named check; throws PreconditionError for unknown names.
    [[nodiscard]] auto passed(const std::string & name) const -> bool;
};

/// Checks "irreducible", "indegree" ((ell+1)^2 + ell), "multiplicity"
/// (ell + 1) and "size" (K * nhs * (ell+1)^2 + ell, counting vertices other
/// than r) on a kernel.
[[nodiscard]] auto check_kernel_bounds(const Instance & kernel, KernelBudget budget, double size_constant = 4.0)
    -> BoundReport;

}
