#include "mca/oracle.hpp"

#include "mca/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

namespace mca {

namespace {

/// Heaviest in-arc of v whose source lies in `inside`; nullopt if none.
template<typename Inside>
auto heaviest_in_arc(const Instance & inst, VertexId v, Inside inside) -> std::optional<ArcIndex>
{
    std::optional<ArcIndex> best;
    for (auto a : inst.in_arcs(v)) {
        const auto & arc = inst.arc(a);
        if (! inside(arc.src))
            continue;
        if (! best || arc.weight > inst.arc(*best).weight)
            best = a;
    }
    return best;
}

}

auto best_arborescence_on_set(const Instance & inst, std::span<const VertexId> subset) -> std::optional<double>
{
    std::vector<bool> in_set(inst.vertex_count(), false);
    for (auto v : subset)
        in_set[static_cast<std::size_t>(v)] = true;
    if (! in_set[static_cast<std::size_t>(inst.root())])
        throw PreconditionError("vertex set must contain the root");

    double total = 0.0;
    for (std::size_t v = 0; v < in_set.size(); ++v) {
        if (! in_set[v] || static_cast<VertexId>(v) == inst.root())
            continue;
        const auto a = heaviest_in_arc(inst, static_cast<VertexId>(v),
                                       [&](VertexId u) { return in_set[static_cast<std::size_t>(u)]; });
        if (! a)
            return std::nullopt;
        total += inst.arc(*a).weight;
    }
    return total;
}

auto brute_force_solve(const Instance & inst, const SolveOptions & options) -> Solution
{
    const auto n = inst.vertex_count();
    if (n > static_cast<std::size_t>(options.limits.brute_max_vertices) || n > 30)
        throw GuardExceeded("brute force refuses " + std::to_string(n) + " vertices (limit "
                            + std::to_string(options.limits.brute_max_vertices) + ")");
    DeadlineGuard guard(options.deadline);

    const auto root = inst.root();
    std::vector<VertexId> others;
    for (std::size_t v = 0; v < n; ++v)
        if (static_cast<VertexId>(v) != root)
            others.push_back(static_cast<VertexId>(v));

    const std::uint64_t subsets = std::uint64_t{1} << others.size();
    double best_weight = 0.0;
    std::uint64_t best_mask = 0;
    std::vector<bool> color_used(inst.color_count(), false);
    std::vector<bool> in_set(n, false);

    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
        guard.poll();

        // Colorfulness first: it is far cheaper than the in-arc scan.
        std::fill(color_used.begin(), color_used.end(), false);
        color_used[static_cast<std::size_t>(inst.color(root))] = true;
        bool colorful = true;
        for (std::size_t i = 0; i < others.size() && colorful; ++i) {
            if (! (mask >> i & 1U))
                continue;
            auto c = static_cast<std::size_t>(inst.color(others[i]));
            colorful = ! color_used[c];
            color_used[c] = true;
        }
        if (! colorful)
            continue;

        std::fill(in_set.begin(), in_set.end(), false);
        in_set[static_cast<std::size_t>(root)] = true;
        for (std::size_t i = 0; i < others.size(); ++i)
            if (mask >> i & 1U)
                in_set[static_cast<std::size_t>(others[i])] = true;

        double total = 0.0;
        bool feasible = true;
        for (std::size_t i = 0; i < others.size() && feasible; ++i) {
            if (! (mask >> i & 1U))
                continue;
            const auto a = heaviest_in_arc(inst, others[i],
                                           [&](VertexId u) { return in_set[static_cast<std::size_t>(u)]; });
            feasible = a.has_value();
            if (feasible)
                total += inst.arc(*a).weight;
        }
        if (feasible && total > best_weight) {
            best_weight = total;
            best_mask = mask;
        }
    }

    std::fill(in_set.begin(), in_set.end(), false);
    in_set[static_cast<std::size_t>(root)] = true;
    for (std::size_t i = 0; i < others.size(); ++i)
        if (best_mask >> i & 1U)
            in_set[static_cast<std::size_t>(others[i])] = true;
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < others.size(); ++i) {
        if (! (best_mask >> i & 1U))
            continue;
        const auto a = heaviest_in_arc(inst, others[i],
                                       [&](VertexId u) { return in_set[static_cast<std::size_t>(u)]; });
        arcs.push_back(inst.arc(*a));
    }
    if (options.counters)
        options.counters->add("brute.subsets", subsets);
    return make_solution(root, std::move(arcs));
}

}
