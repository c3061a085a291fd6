#pragma once

#include "mca/instance.hpp"
#include "mca/options.hpp"
#include "mca/solution.hpp"
#include "mca/tree_decomposition.hpp"

#include <cstdint>
#include <vector>

namespace mca {

/// One vertex per present color, with r standing for col(r). Colors whose
/// chosen vertex is not reachable from r inside the selection are marked
/// absent (no_vertex).
struct ColorfulSelection
{
    std::vector<VertexId> representative; ///< indexed by color
};

/// Mixed-radix enumeration of the fully-colorful selections of an instance:
/// prod over colors c != col(r) of n_c selections. Each selection is pruned
/// to the vertices reachable from r.
class FullyColorfulEnumerator
{
public:
    explicit FullyColorfulEnumerator(const Instance & inst);

    /// Number of selections, saturating at UINT64_MAX.
    [[nodiscard]] auto count() const noexcept -> std::uint64_t { return _count; }

    /// Writes the next selection into `out`; false once exhausted.
    auto next(ColorfulSelection & out) -> bool;

private:
    const Instance * _inst;
    std::vector<ColorId> _free_colors;
    std::vector<std::size_t> _digits;
    std::uint64_t _count;
    bool _done = false;
};

[[nodiscard]] auto enumerate_fully_colorful(const Instance & inst) -> std::vector<ColorfulSelection>;

struct SelectionResult
{
    double weight = 0.0;
    std::vector<Arc> arcs;
};

/// Bag-partition dynamic program on one selection. Bags of `nd` hold colors;
/// each color is read as its representative. For every node and every
/// tripartition (L1 roots, L2 vertices that already have their parent, L3
/// excluded) of the bag, T holds the best partial solution and D the best one
/// using bag vertices only.
///
/// Counter keys (maxima over nodes unless noted): "treewidth.tripartitions_per_bag",
/// "treewidth.introduce_terms_per_bag", "treewidth.join_terms_per_bag",
/// "treewidth.join_checks" and "treewidth.join_violations" (sums).
[[nodiscard]] auto solve_selection(const Instance & inst, const ColorfulSelection & sel,
                                   const NiceDecomposition & nd, Counters * counters = nullptr)
    -> SelectionResult;

/// O*(2^lc * 4^tw) solver: best solve_selection over every fully-colorful
/// selection of the pruned instance, on a nice decomposition of U(H).
///
/// Refuses lc > limits.treewidth_max_lc or width > limits.treewidth_max_width.
/// Additional counter keys: "treewidth.selections", "treewidth.width",
/// "treewidth.nice_nodes".
[[nodiscard]] auto solve_treewidth(const Instance & inst, const SolveOptions & options = {}) -> Solution;

}
