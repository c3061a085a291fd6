#include "mca/poly.hpp"

#include "mca/errors.hpp"

#include <algorithm>
#include <string>

namespace mca {

namespace {

auto idx(std::int32_t v) -> std::size_t
{
    return static_cast<std::size_t>(v);
}

/// True when every color of H+(c) other than c has exactly one in-neighbor
/// and that in-neighbor lies inside H+(c): conditions (i) and (ii) together.
auto closed_arborescence_below(const ColorHierarchy & h, ColorId c, const std::vector<ColorId> & below) -> bool
{
    std::vector<bool> inside(h.color_count(), false);
    for (auto d : below)
        inside[idx(d)] = true;
    return std::ranges::all_of(below, [&](ColorId d) {
        if (d == c)
            return true;
        const auto preds = h.predecessors(d);
        return preds.size() == 1 && inside[idx(preds.front())];
    });
}

}

auto is_arb_hierarchy(const ColorHierarchy & h) -> std::optional<ColorId>
{
    std::optional<ColorId> root;
    for (auto c : h.present_colors()) {
        const auto d = h.indegree(c);
        if (d == 0) {
            if (root)
                return std::nullopt;
            root = c;
        } else if (d != 1) {
            return std::nullopt;
        }
    }
    return root;
}

auto autonomous_colors(const Instance & /*inst*/, const ColorHierarchy & h) -> std::vector<ColorId>
{
    std::vector<ColorId> result;
    for (auto c : h.present_colors())
        if (closed_arborescence_below(h, c, h.reachable_from(c)))
            result.push_back(c);
    return result;
}

auto solve_arb_hierarchy(const Instance & inst, VertexId sub_root, const SolveOptions & options) -> Solution
{
    const ColorHierarchy h(inst);
    const auto c = inst.color(sub_root);
    const auto below = h.reachable_from(c);
    if (! closed_arborescence_below(h, c, below))
        throw PreconditionError("hierarchy not arborescent below color " + std::to_string(c));

    std::vector<bool> relevant(inst.color_count(), false);
    for (auto d : below)
        relevant[idx(d)] = true;

    DeadlineGuard guard(options.deadline);
    std::uint64_t visits = 0;
    const auto n = inst.vertex_count();
    std::vector<double> best(n, 0.0);
    // choice[u] lists the chosen out-arc per child color (absent when the color is skipped).
    std::vector<std::vector<const Arc *>> choice(n);

    const auto order = topological_order(inst);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto u = *it;
        if (! relevant[idx(inst.color(u))])
            continue;
        guard.poll();
        const auto out = inst.out_arcs(u);
        // Out-arcs are sorted by destination, not by color, so bucket per child color.
        const auto child_colors = h.child_order(u);
        std::vector<const Arc *> pick(child_colors.size(), nullptr);
        std::vector<double> gain(child_colors.size(), 0.0);
        for (const auto & a : out) {
            ++visits;
            const auto pos = static_cast<std::size_t>(
                std::ranges::lower_bound(child_colors, inst.color(a.dst)) - child_colors.begin());
            const double value = a.weight + best[idx(a.dst)];
            if (value > gain[pos]) {
                gain[pos] = value;
                pick[pos] = &a;
            }
        }
        double total = 0.0;
        for (auto g : gain)
            total += g;
        best[idx(u)] = total;
        choice[idx(u)] = std::move(pick);
    }
    if (options.counters)
        options.counters->add("poly.arc_visits", visits);

    std::vector<Arc> arcs;
    std::vector<VertexId> stack{sub_root};
    while (! stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (const auto * a : choice[idx(u)])
            if (a) {
                arcs.push_back(*a);
                stack.push_back(a->dst);
            }
    }
    return make_solution(sub_root, std::move(arcs));
}

auto solve_arb_instance(const Instance & inst, const SolveOptions & options) -> Solution
{
    const auto keep = reachable_from_root(inst);
    const auto pruned = prune_unreachable(inst);
    const ColorHierarchy h(pruned);
    if (! is_arb_hierarchy(h))
        throw GuardExceeded("color hierarchy is not an arborescence");
    auto sol = solve_arb_hierarchy(pruned, pruned.root(), options);

    // Map back to the caller's vertex ids.
    for (auto & a : sol.arcs) {
        a.src = keep[idx(a.src)];
        a.dst = keep[idx(a.dst)];
    }
    return make_solution(inst.root(), std::move(sol.arcs));
}

}
