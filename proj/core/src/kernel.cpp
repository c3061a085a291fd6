#include "mca/kernel.hpp"

#include "detail.hpp"
#include "mca/errors.hpp"
#include "mca/hierarchy.hpp"
#include "mca/poly.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace mca {

namespace {

using detail::idx;

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

auto present_color_count(const Instance & inst) -> std::size_t
{
    std::size_t count = 0;
    for (std::size_t c = 0; c < inst.color_count(); ++c)
        if (inst.color_used(static_cast<ColorId>(c)))
            ++count;
    return count;
}

}

auto max_weight_path(const Instance & inst, VertexId v1, VertexId v3) -> std::optional<double>
{
    std::vector<double> best(inst.vertex_count(), neg_inf);
    best[idx(v1)] = 0.0;
    for (auto u : topological_order(inst)) {
        if (best[idx(u)] == neg_inf)
            continue;
        for (const auto & a : inst.out_arcs(u))
            best[idx(a.dst)] = std::max(best[idx(a.dst)], best[idx(u)] + a.weight);
    }
    if (best[idx(v3)] == neg_inf)
        return std::nullopt;
    return best[idx(v3)];
}

auto apply_entry(const Instance & inst, const ReductionEntry & entry) -> Instance
{
    std::vector<ColorId> colors(inst.colors().begin(), inst.colors().end());
    std::vector<Arc> arcs(inst.arcs().begin(), inst.arcs().end());

    for (const auto & [v, w] : entry.subtree_weights)
        for (auto & a : arcs)
            if (a.dst == v)
                a.weight += w;
    if (entry.new_vertex_color)
        colors.push_back(*entry.new_vertex_color);
    arcs.insert(arcs.end(), entry.arcs_added.begin(), entry.arcs_added.end());
    std::erase_if(arcs, [&](const Arc & a) {
        return std::ranges::find(entry.arcs_removed, std::pair{a.src, a.dst}) != entry.arcs_removed.end();
    });

    std::vector<bool> removed(colors.size(), false);
    for (auto v : entry.vertices_removed)
        removed[idx(v)] = true;
    if (removed[idx(inst.root())])
        throw InternalError("reduction removed the root");
    std::vector<VertexId> new_id(colors.size(), no_vertex);
    std::vector<ColorId> kept_colors;
    for (std::size_t v = 0; v < colors.size(); ++v)
        if (! removed[v]) {
            new_id[v] = static_cast<VertexId>(kept_colors.size());
            kept_colors.push_back(colors[v]);
        }
    std::vector<Arc> kept_arcs;
    for (const auto & a : arcs)
        if (! removed[idx(a.src)] && ! removed[idx(a.dst)])
            kept_arcs.push_back({new_id[idx(a.src)], new_id[idx(a.dst)], a.weight});

    const Instance reduced(std::move(kept_colors), std::move(kept_arcs), new_id[idx(inst.root())],
                           inst.color_count(), true);
    return prune_unreachable(reduced);
}

auto apply_rule_autonomous(const Instance & inst) -> std::optional<RuleApplication>
{
    const ColorHierarchy h(inst);
    const auto root_color = inst.color(inst.root());
    std::optional<ColorId> chosen;
    std::size_t chosen_size = 0;
    for (auto c : autonomous_colors(inst, h)) {
        if (c == root_color)
            continue; // r has no in-arc to carry w(T_r)
        const auto size = h.reachable_from(c).size();
        if (size >= 2 && size > chosen_size) {
            chosen = c;
            chosen_size = size;
        }
    }
    if (! chosen)
        return std::nullopt;

    ReductionEntry entry;
    entry.rule = 1;
    entry.colors = {*chosen};
    const auto sources = inst.vertices_of_color(*chosen);
    for (auto v : sources)
        entry.subtree_weights.emplace_back(v, solve_arb_hierarchy(inst, v).weight);

    std::vector<bool> seen(inst.vertex_count(), false);
    std::vector<VertexId> stack(sources.begin(), sources.end());
    for (auto v : sources)
        seen[idx(v)] = true;
    while (! stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (const auto & a : inst.out_arcs(u))
            if (! seen[idx(a.dst)]) {
                seen[idx(a.dst)] = true;
                entry.vertices_removed.push_back(a.dst);
                stack.push_back(a.dst);
            }
    }
    std::ranges::sort(entry.vertices_removed);
    auto reduced = apply_entry(inst, entry);
    return RuleApplication{std::move(reduced), std::move(entry)};
}

auto apply_rule_chain(const Instance & inst) -> std::optional<RuleApplication>
{
    const ColorHierarchy h(inst);
    const auto root_color = inst.color(inst.root());
    for (auto c2 : h.present_colors()) {
        if (c2 == root_color || h.indegree(c2) != 1 || h.outdegree(c2) != 1)
            continue;
        const auto c1 = h.predecessors(c2).front();
        const auto c3 = h.successors(c2).front();
        if (c3 == root_color || h.indegree(c3) != 1)
            continue;

        ReductionEntry entry;
        entry.rule = 2;
        entry.colors = {c1, c2, c3};
        const auto v_star = static_cast<VertexId>(inst.vertex_count());
        entry.new_vertex_color = c3;
        const auto middle = inst.vertices_of_color(c2);

        for (auto v1 : inst.vertices_of_color(c1)) {
            // Every v1 -> v3 path is v1 -> v2 -> v3: c1 and c2 are the only
            // in-neighbor colors of c2 and c3.
            double into_middle = neg_inf;
            for (auto v3 : inst.vertices_of_color(c3)) {
                double pi = neg_inf;
                for (auto v2 : middle) {
                    const auto first = inst.find_arc(v1, v2);
                    const auto second = inst.find_arc(v2, v3);
                    if (first && second)
                        pi = std::max(pi, inst.arc(*first).weight + inst.arc(*second).weight);
                }
                if (pi != neg_inf)
                    entry.arcs_added.push_back({v1, v3, pi});
            }
            for (auto v2 : middle)
                if (const auto a = inst.find_arc(v1, v2))
                    into_middle = std::max(into_middle, inst.arc(*a).weight);
            if (into_middle != neg_inf)
                entry.arcs_added.push_back({v1, v_star, into_middle});
        }
        entry.vertices_removed.assign(middle.begin(), middle.end());
        entry.budget_increase = middle.size() == 1 ? 1 : 0;
        auto reduced = apply_entry(inst, entry);
        return RuleApplication{std::move(reduced), std::move(entry)};
    }
    return std::nullopt;
}

auto apply_rule_unique_inarcs(const Instance & inst, KernelBudget budget) -> std::optional<RuleApplication>
{
    const auto keep = static_cast<std::size_t>(budget.ell) + 1;
    for (std::size_t v = 0; v < inst.vertex_count(); ++v) {
        std::vector<const Arc *> unique_in;
        for (auto a : inst.in_arcs(static_cast<VertexId>(v))) {
            const auto & arc = inst.arc(a);
            if (inst.vertices_of_color(inst.color(arc.src)).size() == 1)
                unique_in.push_back(&arc);
        }
        if (unique_in.size() <= keep)
            continue;
        // Heaviest first; among equal weights the smaller source id survives.
        std::ranges::sort(unique_in, [](const Arc * x, const Arc * y) {
            if (x->weight != y->weight)
                return x->weight > y->weight;
            return x->src < y->src;
        });
        ReductionEntry entry;
        entry.rule = 3;
        entry.colors = {inst.color(static_cast<VertexId>(v))};
        for (std::size_t i = keep; i < unique_in.size(); ++i)
            entry.arcs_removed.emplace_back(unique_in[i]->src, unique_in[i]->dst);
        std::ranges::sort(entry.arcs_removed);
        auto reduced = apply_entry(inst, entry);
        return RuleApplication{std::move(reduced), std::move(entry)};
    }
    return std::nullopt;
}

auto kernelize(const Instance & inst, KernelBudget budget) -> KernelResult
{
    if (budget.ell < 0)
        throw PreconditionError("budget must be nonnegative");
    auto current = prune_unreachable(inst);
    ReductionLog log;
    int ell = budget.ell;
    const std::size_t cap = 4 * (inst.vertex_count() + inst.arc_count()) + 16;

    for (;;) {
        bool changed = false;
        auto take = [&](std::optional<RuleApplication> step) {
            if (! step)
                return;
            current = std::move(step->instance);
            ell += step->entry.budget_increase;
            log.push_back(std::move(step->entry));
            changed = true;
        };
        take(apply_rule_autonomous(current));
        take(apply_rule_chain(current));
        take(apply_rule_unique_inarcs(current, {ell}));
        if (! changed)
            break;
        if (log.size() > cap)
            throw InternalError("kernelization does not terminate");
    }
    return {compact_colors(current), std::move(log), ell};
}

auto replay(const Instance & inst, const ReductionLog & log) -> Instance
{
    auto current = prune_unreachable(inst);
    for (const auto & entry : log)
        current = apply_entry(current, entry);
    return compact_colors(current);
}

auto BoundReport::all_passed() const -> bool
{
    return std::ranges::all_of(checks, &BoundCheck::passed);
}

auto BoundReport::passed(const std::string & name) const -> bool
{
    for (const auto & c : checks)
        if (c.name == name)
            return c.passed;
    throw PreconditionError("unknown bound check '" + name + "'");
}

auto check_kernel_bounds(const Instance & kernel, KernelBudget budget, double size_constant) -> BoundReport
{
    const auto inst = prune_unreachable(kernel);
    const ColorHierarchy h(inst);
    const double ell = budget.ell;
    BoundReport report;

    std::string applicable;
    if (apply_rule_autonomous(inst))
        applicable += " 1";
    if (apply_rule_chain(inst))
        applicable += " 2";
    if (apply_rule_unique_inarcs(inst, budget))
        applicable += " 3";
    report.checks.push_back({"irreducible", applicable.empty(),
                             applicable.empty() ? "no rule applies" : "applicable rules:" + applicable});

    std::size_t max_indegree = 0;
    std::size_t max_multiplicity = 0;
    for (auto c : h.present_colors()) {
        max_indegree = std::max(max_indegree, h.indegree(c));
        max_multiplicity = std::max(max_multiplicity, inst.vertices_of_color(c).size());
    }
    const double indegree_bound = (ell + 1) * (ell + 1) + ell;
    report.checks.push_back({"indegree", static_cast<double>(max_indegree) <= indegree_bound,
                             "max color indegree " + std::to_string(max_indegree) + ", bound "
                                 + std::to_string(static_cast<long long>(indegree_bound))});
    report.checks.push_back({"multiplicity", static_cast<double>(max_multiplicity) <= ell + 1,
                             "max color multiplicity " + std::to_string(max_multiplicity) + ", bound "
                                 + std::to_string(budget.ell + 1)});

    const double size_bound = size_constant * static_cast<double>(h.difficult().size()) * (ell + 1) * (ell + 1) + ell;
    // The root is not counted: a kernel consisting of r alone has nothing to bound.
    const auto non_root = inst.vertex_count() - 1;
    report.checks.push_back({"size", static_cast<double>(non_root) <= size_bound,
                             std::to_string(non_root) + " non-root vertices, bound " + std::to_string(size_bound)
                                 + " (" + std::to_string(present_color_count(inst)) + " colors)"});
    return report;
}

}
