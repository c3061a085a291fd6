#include "mca/stats.hpp"

#include "mca/hierarchy.hpp"
#include "mca/poly.hpp"
#include "mca/tree_decomposition.hpp"

#include <algorithm>

namespace mca {

auto stats(const Instance & inst) -> Stats
{
    Stats s;
    const ColorHierarchy h(inst);
    s.n = inst.vertex_count();
    s.m = inst.arc_count();
    s.colors = inst.color_count();
    s.nhs = h.difficult().size();
    s.lc = static_cast<std::int64_t>(s.n) - static_cast<std::int64_t>(s.colors);
    for (std::size_t c = 0; c < inst.color_count(); ++c)
        s.fully_colorful_count *= static_cast<double>(inst.vertices_of_color(static_cast<ColorId>(c)).size());
    for (std::size_t v = 0; v < inst.vertex_count(); ++v)
        s.max_children = std::max(s.max_children, h.child_order(static_cast<VertexId>(v)).size());

    const auto pruned = prune_unreachable(inst);
    const ColorHierarchy hp(pruned);
    s.is_arb_hierarchy = is_arb_hierarchy(hp).has_value();
    s.ht_upper = std::max(0, decompose(underlying_graph(hp)).width());
    return s;
}

}
