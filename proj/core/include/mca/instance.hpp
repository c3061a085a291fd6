#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mca {

using VertexId = std::int32_t;
using ColorId = std::int32_t;
using ArcIndex = std::int32_t;

inline constexpr VertexId no_vertex = -1;

struct Arc
{
    VertexId src = 0;
    VertexId dst = 0;
    double weight = 0.0;

    friend auto operator==(const Arc &, const Arc &) -> bool = default;
};

/// A rooted, vertex-colored, arc-weighted directed graph: the input of the
/// Maximum Colorful Arborescence problem.
///
/// Construction checks the structural invariants (ids in range, no self-loops,
/// no duplicate arcs, finite weights) and throws InstanceError otherwise.
/// Acyclicity of G and of its color hierarchy is a semantic property reported
/// by validate(); solvers that need it check it themselves.
///
/// Arcs are stored sorted by (src, dst), so out-arcs of a vertex form a
/// contiguous range. The object is immutable after construction.
class Instance
{
public:
    Instance(std::vector<ColorId> vertex_colors, std::vector<Arc> arcs, VertexId root,
             std::size_t color_count, bool pruned = false);

    [[nodiscard]] auto vertex_count() const noexcept -> std::size_t { return _colors.size(); }
    [[nodiscard]] auto arc_count() const noexcept -> std::size_t { return _arcs.size(); }
    [[nodiscard]] auto color_count() const noexcept -> std::size_t { return _color_count; }
    [[nodiscard]] auto root() const noexcept -> VertexId { return _root; }
    [[nodiscard]] auto color(VertexId v) const -> ColorId { return _colors[static_cast<std::size_t>(v)]; }
    [[nodiscard]] auto colors() const noexcept -> std::span<const ColorId> { return _colors; }

    /// True for working instances produced by prune_unreachable() and the
    /// kernelizer: color ids are kept, so some colors may have no vertex.
    [[nodiscard]] auto is_pruned() const noexcept -> bool { return _pruned; }

    [[nodiscard]] auto arcs() const noexcept -> std::span<const Arc> { return _arcs; }
    [[nodiscard]] auto arc(ArcIndex a) const -> const Arc & { return _arcs[static_cast<std::size_t>(a)]; }

    /// Out-arcs of v, sorted by destination.
    [[nodiscard]] auto out_arcs(VertexId v) const -> std::span<const Arc>;
    /// Indices of the in-arcs of v, sorted by source.
    [[nodiscard]] auto in_arcs(VertexId v) const -> std::span<const ArcIndex>;

    [[nodiscard]] auto find_arc(VertexId src, VertexId dst) const -> std::optional<ArcIndex>;

    [[nodiscard]] auto vertices_of_color(ColorId c) const -> std::span<const VertexId>;
    [[nodiscard]] auto color_used(ColorId c) const -> bool { return ! vertices_of_color(c).empty(); }

    friend auto operator==(const Instance &, const Instance &) -> bool;

private:
    std::vector<ColorId> _colors;
    std::vector<Arc> _arcs;
    VertexId _root;
    std::size_t _color_count;
    bool _pruned;

    std::vector<std::size_t> _out_begin;
    std::vector<std::size_t> _in_begin;
    std::vector<ArcIndex> _in_arcs;
    std::vector<std::size_t> _color_begin;
    std::vector<VertexId> _by_color;
};

/// Sum of the weights of the given arcs, in order.
[[nodiscard]] auto total_weight(std::span<const Arc> arcs) -> double;

enum class ValidationIssueKind
{
    GraphCyclic,
    HierarchyCyclic,
    UnusedColor,
};

struct ValidationIssue
{
    ValidationIssueKind kind;
    std::string message;
};

struct ValidationReport
{
    std::vector<ValidationIssue> issues;

    [[nodiscard]] auto valid() const noexcept -> bool { return issues.empty(); }
    [[nodiscard]] auto has(ValidationIssueKind kind) const -> bool;
};

/// Semantic checks on a structurally valid instance: G acyclic, H(G) acyclic,
/// every color used (skipped for pruned working instances).
[[nodiscard]] auto validate(const Instance & inst) -> ValidationReport;

/// Throws InstanceError carrying the first issue when validate() reports any.
void require_valid(const Instance & inst);

/// Kahn's algorithm over an adjacency list, ties broken by ascending id.
/// Throws InstanceError if the graph has a cycle.
[[nodiscard]] auto topological_order(std::span<const std::vector<std::int32_t>> successors)
    -> std::vector<std::int32_t>;

[[nodiscard]] auto topological_order(const Instance & inst) -> std::vector<VertexId>;

/// Vertices reachable from the root (root included), ascending.
[[nodiscard]] auto reachable_from_root(const Instance & inst) -> std::vector<VertexId>;

/// Restriction of the instance to the vertices reachable from r. Vertices are
/// renumbered densely in ascending original order (so reachable_from_root(inst)[i]
/// is the original id of vertex i); color ids are kept and the result is
/// flagged as pruned.
[[nodiscard]] auto prune_unreachable(const Instance & inst) -> Instance;

/// Renumbers colors densely (ascending old id) dropping unused ones. The
/// result is a regular, non-pruned instance.
[[nodiscard]] auto compact_colors(const Instance & inst) -> Instance;

}
