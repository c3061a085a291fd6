#include "mca/dp_difficult.hpp"

#include "detail.hpp"
#include "mca/errors.hpp"
#include "mca/hierarchy.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

namespace mca {

namespace {

using detail::idx;
using Mask = std::uint32_t;

struct VertexTables
{
    std::size_t k = 0;                   ///< number of child colors
    std::vector<double> a;               ///< (k + 1) rows of 2^nhs
    std::vector<double> b;               ///< k rows, row i-1 holds B[., ., i]
    std::vector<Mask> a_split;           ///< argmax X'' for A rows 1..k
    std::vector<const Arc *> b_arc;      ///< argmax arc for B, nullptr for the 0 option
};

}

auto solve_difficult_dp(const Instance & full, const SolveOptions & options) -> Solution
{
    const detail::PrunedView view(full);
    const auto & inst = view.inst;
    const ColorHierarchy h(inst);
    const auto difficult = h.difficult();
    const auto nhs = difficult.size();
    if (nhs > static_cast<std::size_t>(options.limits.difficult_max) || nhs > 30)
        throw GuardExceeded("difficult DP refuses " + std::to_string(nhs) + " difficult colors (limit "
                            + std::to_string(options.limits.difficult_max) + ")");

    std::vector<int> bit(inst.color_count(), -1);
    for (std::size_t i = 0; i < nhs; ++i)
        bit[idx(difficult[i])] = static_cast<int>(i);

    const std::size_t width = std::size_t{1} << nhs;
    const Mask all = static_cast<Mask>(width - 1);
    const auto n = inst.vertex_count();
    DeadlineGuard guard(options.deadline);
    std::vector<VertexTables> t(n);
    std::uint64_t split_visits = 0;
    std::uint64_t live_entries = 0;
    std::uint64_t max_children = 0;

    const auto order = topological_order(inst);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto v = *it;
        auto & tv = t[idx(v)];
        const auto children = h.child_order(v);
        tv.k = children.size();
        max_children = std::max<std::uint64_t>(max_children, tv.k);
        tv.a.assign((tv.k + 1) * width, 0.0);
        tv.b.assign(tv.k * width, 0.0);
        tv.a_split.assign(tv.k * width, 0);
        tv.b_arc.assign(tv.k * width, nullptr);
        live_entries += (2 * tv.k + 1) * width;

        // Out-arcs grouped by the position of their head's color in child_order.
        std::vector<std::vector<const Arc *>> by_child(tv.k);
        for (const auto & a : inst.out_arcs(v)) {
            const auto pos = std::ranges::lower_bound(children, inst.color(a.dst)) - children.begin();
            by_child[static_cast<std::size_t>(pos)].push_back(&a);
        }

        for (std::size_t i = 1; i <= tv.k; ++i) {
            const auto ci = children[i - 1];
            const int ci_bit = bit[idx(ci)];
            double * b_row = tv.b.data() + (i - 1) * width;
            const Arc ** b_choice = tv.b_arc.data() + (i - 1) * width;

            for (Mask xp = 0; xp <= all; ++xp) {
                guard.poll();
                if (ci_bit >= 0 && ! (xp >> ci_bit & 1U))
                    continue; // c_i is difficult but outside the budget: B = 0
                const Mask sub = ci_bit >= 0 ? xp & ~(Mask{1} << ci_bit) : xp;
                double best = 0.0;
                const Arc * pick = nullptr;
                for (const auto * a : by_child[i - 1]) {
                    const auto & tu = t[idx(a->dst)];
                    const double value = a->weight + tu.a[tu.k * width + sub];
                    if (value > best) {
                        best = value;
                        pick = a;
                    }
                }
                b_row[xp] = best;
                b_choice[xp] = pick;
            }

            const double * prev = tv.a.data() + (i - 1) * width;
            double * row = tv.a.data() + i * width;
            Mask * split = tv.a_split.data() + (i - 1) * width;
            for (Mask xp = 0; xp <= all; ++xp) {
                double best = -1.0;
                Mask arg = 0;
                // Sub-mask walk over X'' subset of X', including X' itself and the empty set.
                for (Mask xs = xp;; xs = (xs - 1) & xp) {
                    ++split_visits;
                    guard.poll();
                    const double value = prev[xs] + b_row[xp & ~xs];
                    if (value > best) {
                        best = value;
                        arg = xs;
                    }
                    if (xs == 0)
                        break;
                }
                row[xp] = best;
                split[xp] = arg;
            }
        }
    }

    if (options.counters) {
        options.counters->set("difficult.nhs", nhs);
        options.counters->raise("difficult.max_children", max_children);
        options.counters->add("difficult.split_visits", split_visits);
        options.counters->add("difficult.live_entries", live_entries);
    }

    struct Frame
    {
        VertexId v;
        Mask xp;
        std::size_t i;
    };
    std::vector<Arc> arcs;
    const auto root = inst.root();
    std::vector<Frame> stack{{root, all, t[idx(root)].k}};
    while (! stack.empty()) {
        const auto [v, xp, i] = stack.back();
        stack.pop_back();
        if (i == 0)
            continue;
        const auto & tv = t[idx(v)];
        const Mask xs = tv.a_split[(i - 1) * width + xp];
        stack.push_back({v, xs, i - 1});
        const Mask rest = xp & ~xs;
        if (const Arc * a = tv.b_arc[(i - 1) * width + rest]) {
            const int u_bit = bit[idx(inst.color(a->dst))];
            const Mask sub = u_bit >= 0 ? rest & ~(Mask{1} << u_bit) : rest;
            arcs.push_back(*a);
            stack.push_back({a->dst, sub, t[idx(a->dst)].k});
        }
    }
    return view.lift(std::move(arcs));
}

}
