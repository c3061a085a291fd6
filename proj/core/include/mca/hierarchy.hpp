#pragma once

#include "mca/instance.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mca {

/// The color hierarchy graph H(G): one node per color, an arc (c, c') whenever
/// G has an arc from a c-colored vertex to a c'-colored vertex.
///
/// Also carries the difficult colors X (indegree >= 2) and, for every vertex v
/// of the instance, the fixed ordering of the distinct colors of its
/// out-neighbors (ascending color id).
class ColorHierarchy
{
public:
    /// Throws InstanceError if H(G) has a cycle.
    explicit ColorHierarchy(const Instance & inst);

    [[nodiscard]] auto color_count() const noexcept -> std::size_t { return _out.size(); }

    /// A color is present when at least one vertex carries it. Absent colors
    /// only occur in pruned working instances and are ignored by every query.
    [[nodiscard]] auto present(ColorId c) const -> bool { return _present[static_cast<std::size_t>(c)]; }
    [[nodiscard]] auto present_colors() const -> std::vector<ColorId>;

    [[nodiscard]] auto successors(ColorId c) const -> std::span<const ColorId> { return _out[static_cast<std::size_t>(c)]; }
    [[nodiscard]] auto predecessors(ColorId c) const -> std::span<const ColorId> { return _in[static_cast<std::size_t>(c)]; }
    [[nodiscard]] auto indegree(ColorId c) const -> std::size_t { return predecessors(c).size(); }
    [[nodiscard]] auto outdegree(ColorId c) const -> std::size_t { return successors(c).size(); }
    [[nodiscard]] auto has_arc(ColorId from, ColorId to) const -> bool;
    [[nodiscard]] auto arc_count() const -> std::size_t;

    /// Colors of indegree at least two, ascending.
    [[nodiscard]] auto difficult() const noexcept -> std::span<const ColorId> { return _difficult; }
    [[nodiscard]] auto is_difficult(ColorId c) const -> bool { return indegree(c) >= 2; }

    /// Distinct out-neighbor colors of v, ascending.
    [[nodiscard]] auto child_order(VertexId v) const -> std::span<const ColorId> { return _child_order[static_cast<std::size_t>(v)]; }

    /// Colors in topological order (ascending id among ties).
    [[nodiscard]] auto topological_order() const noexcept -> std::span<const ColorId> { return _topo; }

    /// Colors reachable from c in H, c included, ascending.
    [[nodiscard]] auto reachable_from(ColorId c) const -> std::vector<ColorId>;

private:
    std::vector<std::vector<ColorId>> _out;
    std::vector<std::vector<ColorId>> _in;
    std::vector<bool> _present;
    std::vector<ColorId> _difficult;
    std::vector<std::vector<ColorId>> _child_order;
    std::vector<ColorId> _topo;
};

[[nodiscard]] inline auto color_hierarchy(const Instance & inst) -> ColorHierarchy
{
    return ColorHierarchy{inst};
}

/// Difficult color set X of H: colors of indegree at least two.
[[nodiscard]] auto difficult_set(const ColorHierarchy & h) -> std::vector<ColorId>;

}
