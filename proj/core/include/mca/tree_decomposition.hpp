#pragma once

#include "mca/hierarchy.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mca {

/// Simple undirected graph over ids 0..n-1. Only `active` vertices take part;
/// inactive ids (absent colors) have no edges and appear in no bag.
class UndirectedGraph
{
public:
    explicit UndirectedGraph(std::size_t n);

    void add_edge(std::int32_t u, std::int32_t v);
    void set_active(std::int32_t v, bool active) { _active[static_cast<std::size_t>(v)] = active; }

    [[nodiscard]] auto size() const noexcept -> std::size_t { return _adj.size(); }
    [[nodiscard]] auto active(std::int32_t v) const -> bool { return _active[static_cast<std::size_t>(v)]; }
    [[nodiscard]] auto active_vertices() const -> std::vector<std::int32_t>;
    [[nodiscard]] auto neighbors(std::int32_t v) const -> const std::vector<std::int32_t> & { return _adj[static_cast<std::size_t>(v)]; }
    [[nodiscard]] auto adjacent(std::int32_t u, std::int32_t v) const -> bool;
    [[nodiscard]] auto edges() const -> std::vector<std::pair<std::int32_t, std::int32_t>>;

private:
    std::vector<std::vector<std::int32_t>> _adj;
    std::vector<bool> _active;
};

/// U(H): the underlying undirected graph of the hierarchy over present colors.
[[nodiscard]] auto underlying_graph(const ColorHierarchy & h) -> UndirectedGraph;

struct TreeDecomposition
{
    std::vector<std::vector<std::int32_t>> bags; ///< sorted
    std::vector<std::pair<std::int32_t, std::int32_t>> tree_edges;

    [[nodiscard]] auto width() const -> int;
};

/// Returns every violated condition (coverage, edge, connectivity, tree
/// shape); empty means valid.
[[nodiscard]] auto check_tree_decomposition(const UndirectedGraph & g, const TreeDecomposition & td)
    -> std::vector<std::string>;

/// Builds the decomposition induced by an elimination ordering of the active
/// vertices. Components are chained through bags with empty intersection.
[[nodiscard]] auto decomposition_from_order(const UndirectedGraph & g, const std::vector<std::int32_t> & order)
    -> TreeDecomposition;

[[nodiscard]] auto min_fill_order(const UndirectedGraph & g) -> std::vector<std::int32_t>;

/// Elimination ordering of minimum width, by dynamic programming over vertex
/// subsets. Throws GuardExceeded beyond 16 active vertices.
[[nodiscard]] auto exact_elimination_order(const UndirectedGraph & g) -> std::vector<std::int32_t>;

/// Min-fill (or exact, on request) tree decomposition, validated before return.
[[nodiscard]] auto decompose(const UndirectedGraph & g, bool exact = false) -> TreeDecomposition;

enum class NiceNodeType
{
    Leaf,
    Introduce,
    Forget,
    Join,
};

struct NiceNode
{
    NiceNodeType type = NiceNodeType::Leaf;
    std::vector<std::int32_t> bag; ///< sorted
    std::int32_t vertex = -1;      ///< introduced or forgotten vertex
    std::vector<std::int32_t> children;
};

struct NiceDecomposition
{
    std::vector<NiceNode> nodes;
    std::int32_t root = -1;

    [[nodiscard]] auto width() const -> int;
    /// Node ids with every child before its parent.
    [[nodiscard]] auto post_order() const -> std::vector<std::int32_t>;
};

/// Standard transformation into a nice decomposition whose root bag is
/// exactly {root_vertex}. Throws PreconditionError if no bag contains it.
[[nodiscard]] auto make_nice(const TreeDecomposition & td, std::int32_t root_vertex) -> NiceDecomposition;

/// Tree-decomposition conditions plus the leaf/introduce/forget/join shape
/// rules and the root bag; empty means valid.
[[nodiscard]] auto check_nice_decomposition(const UndirectedGraph & g, const NiceDecomposition & nd,
                                            std::int32_t root_vertex) -> std::vector<std::string>;

}
