#pragma once

#include "mca/instance.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace mca {

enum class GenShape
{
    /// Arcs between any two vertices whose color ids increase.
    Dense,
    /// Color hierarchy is an arborescence plus `diamonds` extra parent arcs.
    Tree,
};

struct GenParams
{
    int vertices = 10;
    int colors = 5;
    double density = 0.3;
    int weight_min = -5;
    int weight_max = 5;
    std::uint64_t seed = 1;
    GenShape shape = GenShape::Dense;
    /// Tree shape only: number of colors given a second parent color, which
    /// is then exactly the number of difficult colors.
    int diamonds = 0;
};

/// Seeded random instance with integer weights. Color ids follow a ranking
/// of the colors and every arc goes from a lower to a higher color id, so
/// H(G) is acyclic by construction. Every color other than the root's gets a
/// vertex with an in-arc; vertex ids are shuffled. Throws PreconditionError
/// on infeasible parameters.
[[nodiscard]] auto gen_random(const GenParams & params) -> Instance;

/// Set Cover instance: universe {0..q-1}, p subsets, target k. For the
/// multicolored variant every set also carries a color.
struct SetCoverInstance
{
    int universe = 0;
    std::vector<std::vector<int>> sets;
    std::vector<int> set_colors; ///< empty, or one color per set
    int k = 0;

    [[nodiscard]] auto colored() const noexcept -> bool { return ! set_colors.empty(); }
};

/// Text format:
///
///     universe <q>
///     set [color <c>] <element> <element> ...
///     k <int>
///
/// Elements are 0-based. Throws ParseError.
[[nodiscard]] auto parse_set_cover(std::string_view text) -> SetCoverInstance;
void write_set_cover(std::ostream & out, const SetCoverInstance & sc);

/// Throws PreconditionError when a set is empty or names an element outside
/// the universe. A color list, if present, needs exactly one entry per set.
void validate_set_cover(const SetCoverInstance & sc);

/// Random family of p nonempty subsets of a q-element universe. With
/// `set_colors` > 0 every set gets a color in [0, set_colors).
[[nodiscard]] auto gen_set_cover(int p, int q, int k, std::uint64_t seed, int set_colors = 0) -> SetCoverInstance;

struct ReducedInstance
{
    Instance instance;
    double target = 0.0; ///< p * q - k
};

/// Three-level DAG: r (color 0), one vertex per set (colors 1..p), one vertex
/// per element (colors p+1..p+q). Arcs r -> set of weight -1, set -> element
/// of weight p when the element belongs to the set.
[[nodiscard]] auto reduce_set_cover(const SetCoverInstance & sc) -> ReducedInstance;

/// Same construction, but set vertices share a color exactly when their sets
/// do. Set colors are renumbered densely in ascending order.
[[nodiscard]] auto reduce_multicolored_set_cover(const SetCoverInstance & sc) -> ReducedInstance;

/// Disjoint union of instances over the same color count t. A new root of
/// color t reaches each component root through its own gateway vertex; all
/// gateways share color t + 1 and every added arc weighs 0. Component i's vertex v becomes
/// offset_i + v; the gateways and the new root follow all component vertices.
[[nodiscard]] auto or_compose(std::span<const Instance> components) -> Instance;

}
