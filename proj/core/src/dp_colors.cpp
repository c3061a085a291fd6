#include "mca/dp_colors.hpp"

#include "detail.hpp"
#include "mca/errors.hpp"
#include "mca/hierarchy.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <string>

namespace mca {

namespace {

using detail::idx;
using Mask = std::uint64_t;

/// Maps a mask over the parent's local color bits to the child's local bits,
/// one byte of the parent mask at a time.
class Projection
{
public:
    Projection(const std::vector<ColorId> & parent_colors, const std::vector<int> & child_position)
    {
        const auto chunks = (parent_colors.size() + 7) / 8;
        _tables.resize(chunks);
        for (std::size_t chunk = 0; chunk < chunks; ++chunk)
            for (std::size_t byte = 0; byte < 256; ++byte) {
                Mask out = 0;
                for (std::size_t bit = 0; bit < 8; ++bit) {
                    const auto i = chunk * 8 + bit;
                    if (i >= parent_colors.size() || ! (byte >> bit & 1U))
                        continue;
                    const auto pos = child_position[idx(parent_colors[i])];
                    if (pos >= 0)
                        out |= Mask{1} << pos;
                }
                _tables[chunk][byte] = out;
            }
    }

    [[nodiscard]] auto operator()(Mask parent) const -> Mask
    {
        Mask out = 0;
        for (std::size_t chunk = 0; chunk < _tables.size(); ++chunk)
            out |= _tables[chunk][(parent >> (8 * chunk)) & 0xFFU];
        return out;
    }

private:
    std::vector<std::array<Mask, 256>> _tables;
};

struct Extension
{
    const Arc * arc;
    Mask child_bit; ///< bit of col(child) in the parent's local numbering
    std::size_t projection;
};

struct VertexTables
{
    std::vector<ColorId> local;   ///< colors strictly below col(v), ascending
    std::vector<double> table;    ///< indexed by subsets of `local`
    std::vector<Extension> extensions;
    std::vector<Projection> projections;
};

}

auto solve_colors_dp(const Instance & full, const SolveOptions & options) -> Solution
{
    if (full.color_count() > static_cast<std::size_t>(options.limits.colors_max))
        throw GuardExceeded("colors DP refuses " + std::to_string(full.color_count()) + " colors (limit "
                            + std::to_string(options.limits.colors_max) + ")");
    if (full.color_count() > 63)
        throw GuardExceeded("colors DP supports at most 63 colors");

    const detail::PrunedView view(full);
    const auto & inst = view.inst;
    const ColorHierarchy h(inst);
    const auto n = inst.vertex_count();
    DeadlineGuard guard(options.deadline);

    // Local color numbering per color (shared by all vertices of that color).
    std::vector<std::vector<ColorId>> below(inst.color_count());
    std::vector<std::vector<int>> position(inst.color_count(), std::vector<int>(inst.color_count(), -1));
    for (auto c : h.present_colors()) {
        for (auto d : h.reachable_from(c))
            if (d != c)
                below[idx(c)].push_back(d);
        for (std::size_t i = 0; i < below[idx(c)].size(); ++i)
            position[idx(c)][idx(below[idx(c)][i])] = static_cast<int>(i);
    }

    std::vector<VertexTables> t(n);
    std::uint64_t split_visits = 0;
    std::uint64_t entries = 0;

    const auto order = topological_order(inst);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto v = *it;
        auto & tv = t[idx(v)];
        const auto cv = inst.color(v);
        tv.local = below[idx(cv)];

        // One projection per distinct child color, built lazily.
        std::vector<std::size_t> projection_of(inst.color_count(), SIZE_MAX);
        for (const auto & a : inst.out_arcs(v)) {
            const auto cu = inst.color(a.dst);
            if (projection_of[idx(cu)] == SIZE_MAX) {
                projection_of[idx(cu)] = tv.projections.size();
                tv.projections.emplace_back(tv.local, position[idx(cu)]);
            }
            tv.extensions.push_back(
                {&a, Mask{1} << position[idx(cv)][idx(cu)], projection_of[idx(cu)]});
        }

        const Mask full_mask = (Mask{1} << tv.local.size()) - 1;
        tv.table.assign(static_cast<std::size_t>(full_mask) + 1, 0.0);
        entries += tv.table.size();

        for (Mask s = 1; s <= full_mask; ++s) {
            guard.poll();
            double best = 0.0;
            for (const auto & e : tv.extensions) {
                if (! (s & e.child_bit))
                    continue;
                const auto & child = t[idx(e.arc->dst)];
                const auto sub = tv.projections[e.projection](s & ~e.child_bit);
                best = std::max(best, e.arc->weight + child.table[static_cast<std::size_t>(sub)]);
            }
            // Splits A | B = S with the lowest bit of S in A and both parts nonempty.
            const Mask low = s & (~s + 1);
            const Mask rest = s ^ low;
            for (Mask sub = (rest - 1) & rest;; sub = (sub - 1) & rest) {
                if (sub == rest)
                    break; // rest == 0: no proper split
                ++split_visits;
                guard.poll();
                const Mask a = low | sub;
                best = std::max(best, tv.table[static_cast<std::size_t>(a)]
                                          + tv.table[static_cast<std::size_t>(s ^ a)]);
                if (sub == 0)
                    break;
            }
            tv.table[static_cast<std::size_t>(s)] = best;
        }
    }

    if (options.counters) {
        options.counters->add("colors.split_visits", split_visits);
        options.counters->add("colors.table_entries", entries);
    }

    // Traceback: recompute each argmax from the finished tables.
    std::vector<Arc> arcs;
    struct Frame
    {
        VertexId v;
        Mask s;
    };
    const auto root = inst.root();
    std::vector<Frame> stack{{root, (Mask{1} << t[idx(root)].local.size()) - 1}};
    while (! stack.empty()) {
        const auto [v, s] = stack.back();
        stack.pop_back();
        const auto & tv = t[idx(v)];
        const double target = tv.table[static_cast<std::size_t>(s)];
        if (target <= 0.0)
            continue;
        bool found = false;
        for (const auto & e : tv.extensions) {
            if (! (s & e.child_bit))
                continue;
            const auto sub = tv.projections[e.projection](s & ~e.child_bit);
            if (e.arc->weight + t[idx(e.arc->dst)].table[static_cast<std::size_t>(sub)] == target) {
                arcs.push_back(*e.arc);
                stack.push_back({e.arc->dst, sub});
                found = true;
                break;
            }
        }
        if (found)
            continue;
        const Mask low = s & (~s + 1);
        const Mask rest = s ^ low;
        for (Mask sub = (rest - 1) & rest; rest != 0; sub = (sub - 1) & rest) {
            const Mask a = low | sub;
            if (tv.table[static_cast<std::size_t>(a)] + tv.table[static_cast<std::size_t>(s ^ a)] == target) {
                stack.push_back({v, a});
                stack.push_back({v, s ^ a});
                found = true;
                break;
            }
            if (sub == 0)
                break;
        }
        if (! found)
            throw InternalError("colors DP traceback found no matching case");
    }
    return view.lift(std::move(arcs));
}

}
