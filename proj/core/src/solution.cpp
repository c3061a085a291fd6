#include "mca/solution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mca {

auto make_solution(VertexId root, std::vector<Arc> arcs) -> Solution
{
    std::ranges::sort(arcs, [](const Arc & x, const Arc & y) {
        return std::tie(x.src, x.dst) < std::tie(y.src, y.dst);
    });
    Solution sol;
    sol.vertices.push_back(root);
    for (const auto & a : arcs)
        sol.vertices.push_back(a.dst);
    std::ranges::sort(sol.vertices);
    sol.weight = total_weight(arcs);
    sol.arcs = std::move(arcs);
    return sol;
}

auto verify_solution(const Instance & inst, const Solution & sol) -> double
{
    const auto n = inst.vertex_count();
    std::vector<int> parents(n, 0);
    std::vector<bool> in_arcs(n, false);

    for (const auto & a : sol.arcs) {
        const auto found = inst.find_arc(a.src, a.dst);
        if (! found)
            throw InvalidSolution(SolutionProblem::UnknownArc, "arc (" + std::to_string(a.src) + ", "
                                                                    + std::to_string(a.dst)
                                                                    + ") is not in the instance");
        if (inst.arc(*found).weight != a.weight)
            throw InvalidSolution(SolutionProblem::WrongArcWeight,
                                  "arc (" + std::to_string(a.src) + ", " + std::to_string(a.dst)
                                      + ") carries a weight different from the instance");
        ++parents[static_cast<std::size_t>(a.dst)];
        in_arcs[static_cast<std::size_t>(a.src)] = true;
        in_arcs[static_cast<std::size_t>(a.dst)] = true;
    }

    auto listed = sol.vertices;
    std::ranges::sort(listed);
    if (std::adjacent_find(listed.begin(), listed.end()) != listed.end())
        throw InvalidSolution(SolutionProblem::VertexSetMismatch, "vertex listed twice");
    if (! std::ranges::binary_search(listed, inst.root()))
        throw InvalidSolution(SolutionProblem::MissingRoot, "solution does not contain the root");
    for (auto v : listed)
        if (v < 0 || static_cast<std::size_t>(v) >= n)
            throw InvalidSolution(SolutionProblem::VertexSetMismatch, "vertex id out of range");

    // The root belongs to the vertex set even when no arc leaves it, so a
    // detached component surfaces below as a parentless vertex.
    in_arcs[static_cast<std::size_t>(inst.root())] = true;
    std::vector<VertexId> touched;
    for (std::size_t v = 0; v < n; ++v)
        if (in_arcs[v])
            touched.push_back(static_cast<VertexId>(v));
    if (touched != listed)
        throw InvalidSolution(SolutionProblem::VertexSetMismatch,
                              "vertex set differs from the root plus the endpoints of the arcs");

    std::vector<bool> color_seen(inst.color_count(), false);
    for (auto v : listed) {
        auto c = static_cast<std::size_t>(inst.color(v));
        if (color_seen[c])
            throw InvalidSolution(SolutionProblem::NotColorful,
                                  "not colorful: color " + std::to_string(c) + " appears twice");
        color_seen[c] = true;
    }

    if (parents[static_cast<std::size_t>(inst.root())] != 0)
        throw InvalidSolution(SolutionProblem::NotArborescence, "not an arborescence: root has a parent");
    for (auto v : listed)
        if (v != inst.root() && parents[static_cast<std::size_t>(v)] != 1)
            throw InvalidSolution(SolutionProblem::NotArborescence,
                                  "not an arborescence: vertex " + std::to_string(v) + " has "
                                      + std::to_string(parents[static_cast<std::size_t>(v)]) + " parents");

    // Every vertex has exactly one parent; reachability from r rules out
    // separate components and cycles.
    std::vector<std::vector<VertexId>> children(n);
    for (const auto & a : sol.arcs)
        children[static_cast<std::size_t>(a.src)].push_back(a.dst);
    std::size_t reached = 0;
    std::vector<VertexId> stack{inst.root()};
    std::vector<bool> seen(n, false);
    seen[static_cast<std::size_t>(inst.root())] = true;
    while (! stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        ++reached;
        for (auto v : children[static_cast<std::size_t>(u)])
            if (! seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = true;
                stack.push_back(v);
            }
    }
    if (reached != listed.size())
        throw InvalidSolution(SolutionProblem::NotArborescence,
                              "not an arborescence: some vertices are not reachable from the root");

    const double weight = total_weight(sol.arcs);
    if (std::abs(weight - sol.weight) > 1e-9)
        throw InvalidSolution(SolutionProblem::WeightMismatch,
                              "recorded weight differs from the arc-weight sum");
    return weight;
}

}
