#include "mca/treewidth.hpp"

#include "detail.hpp"
#include "mca/errors.hpp"
#include "mca/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace mca {

namespace {

using detail::idx;

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// Per-vertex state inside a tripartition code: L1 (root of a partial tree),
// L2 (has its parent), L3 (not in the partial solution).
constexpr int in_l1 = 0;
constexpr int in_l2 = 1;
constexpr int in_l3 = 2;

auto pow3(std::size_t k) -> std::size_t
{
    std::size_t p = 1;
    for (std::size_t i = 0; i < k; ++i)
        p *= 3;
    return p;
}

void decode(std::size_t code, std::size_t k, int * states)
{
    for (std::size_t i = 0; i < k; ++i) {
        states[i] = static_cast<int>(code % 3);
        code /= 3;
    }
}

/// Reachability from r inside the subgraph induced by the chosen representatives.
void prune_selection(const Instance & inst, ColorfulSelection & sel)
{
    std::vector<bool> chosen(inst.vertex_count(), false);
    for (auto v : sel.representative)
        if (v != no_vertex)
            chosen[idx(v)] = true;
    std::vector<bool> reached(inst.vertex_count(), false);
    std::vector<VertexId> stack{inst.root()};
    reached[idx(inst.root())] = true;
    while (! stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (const auto & a : inst.out_arcs(u))
            if (chosen[idx(a.dst)] && ! reached[idx(a.dst)]) {
                reached[idx(a.dst)] = true;
                stack.push_back(a.dst);
            }
    }
    for (auto & v : sel.representative)
        if (v != no_vertex && ! reached[idx(v)])
            v = no_vertex;
}

/// Both infinite with the same sign, or finite and within 1e-9.
auto same_value(double x, double y) -> bool
{
    if (std::isinf(x) || std::isinf(y))
        return x == y;
    return std::abs(x - y) <= 1e-9;
}

struct NodeTables
{
    std::vector<double> t;
    std::vector<double> d;
    /// Introduce: bits 0..15 mask of S over bag positions, bits 16.. parent
    /// position + 1. Forget: 0 (vertex kept) or 1 (vertex dropped). Join: mask P.
    std::vector<std::uint32_t> choice;
};

}

FullyColorfulEnumerator::FullyColorfulEnumerator(const Instance & inst) :
    _inst(&inst),
    _count(1)
{
    const auto root_color = inst.color(inst.root());
    for (std::size_t c = 0; c < inst.color_count(); ++c) {
        const auto col = static_cast<ColorId>(c);
        if (col == root_color || ! inst.color_used(col))
            continue;
        _free_colors.push_back(col);
        const auto size = inst.vertices_of_color(col).size();
        if (_count > std::numeric_limits<std::uint64_t>::max() / size)
            _count = std::numeric_limits<std::uint64_t>::max();
        else
            _count *= size;
    }
    _digits.assign(_free_colors.size(), 0);
}

auto FullyColorfulEnumerator::next(ColorfulSelection & out) -> bool
{
    if (_done)
        return false;
    const auto & inst = *_inst;
    out.representative.assign(inst.color_count(), no_vertex);
    out.representative[idx(inst.color(inst.root()))] = inst.root();
    for (std::size_t i = 0; i < _free_colors.size(); ++i)
        out.representative[idx(_free_colors[i])] = inst.vertices_of_color(_free_colors[i])[_digits[i]];
    prune_selection(inst, out);

    // Mixed-radix increment.
    std::size_t i = 0;
    for (; i < _digits.size(); ++i) {
        if (++_digits[i] < inst.vertices_of_color(_free_colors[i]).size())
            break;
        _digits[i] = 0;
    }
    if (i == _digits.size())
        _done = true;
    return true;
}

auto enumerate_fully_colorful(const Instance & inst) -> std::vector<ColorfulSelection>
{
    std::vector<ColorfulSelection> all;
    FullyColorfulEnumerator e(inst);
    ColorfulSelection sel;
    while (e.next(sel))
        all.push_back(sel);
    return all;
}

auto solve_selection(const Instance & inst, const ColorfulSelection & sel, const NiceDecomposition & nd,
                     Counters * counters) -> SelectionResult
{
    const auto & rep = sel.representative;
    if (rep.size() != inst.color_count())
        throw PreconditionError("selection does not match the instance colors");

    auto weight = [&](std::int32_t from_color, std::int32_t to_color) -> double {
        const auto u = rep[idx(from_color)];
        const auto v = rep[idx(to_color)];
        if (u == no_vertex || v == no_vertex)
            return neg_inf;
        const auto a = inst.find_arc(u, v);
        return a ? inst.arc(*a).weight : neg_inf;
    };

    std::uint64_t max_tripartitions = 0;
    std::uint64_t max_introduce_terms = 0;
    std::uint64_t max_join_terms = 0;
    std::uint64_t join_checks = 0;
    std::uint64_t join_violations = 0;

    std::vector<NodeTables> tables(nd.nodes.size());
    int states[32];

    for (auto x : nd.post_order()) {
        const auto & node = nd.nodes[idx(x)];
        const auto & bag = node.bag;
        const auto k = bag.size();
        if (k > 16)
            throw GuardExceeded("bag too large for the treewidth DP");
        const auto size = pow3(k);
        max_tripartitions = std::max<std::uint64_t>(max_tripartitions, size);
        auto & tab = tables[idx(x)];
        tab.t.assign(size, neg_inf);
        tab.d.assign(size, neg_inf);
        tab.choice.assign(size, 0);

        // Colors without a representative may only sit in L3.
        auto admissible = [&](const int * st) {
            for (std::size_t i = 0; i < k; ++i)
                if (st[i] != in_l3 && rep[idx(bag[i])] == no_vertex)
                    return false;
            return true;
        };

        switch (node.type) {
        case NiceNodeType::Leaf:
            // A lone vertex is a root or absent; it cannot have a parent.
            for (std::size_t code = 0; code < size; ++code) {
                decode(code, k, states);
                if (! admissible(states) || states[0] == in_l2)
                    continue;
                tab.t[code] = 0.0;
                tab.d[code] = 0.0;
            }
            break;

        case NiceNodeType::Introduce: {
            const auto & child = tables[idx(node.children.front())];
            const auto p = static_cast<std::size_t>(std::ranges::find(bag, node.vertex) - bag.begin());
            std::vector<double> w_out(k, neg_inf);
            std::vector<double> w_in(k, neg_inf);
            for (std::size_t q = 0; q < k; ++q)
                if (q != p) {
                    w_out[q] = weight(node.vertex, bag[q]);
                    w_in[q] = weight(bag[q], node.vertex);
                }
            // Child position of bag position q (q != p).
            auto child_pos = [p](std::size_t q) { return q < p ? q : q - 1; };
            std::uint64_t terms = 0;
            std::vector<std::size_t> candidates;

            for (std::size_t code = 0; code < size; ++code) {
                decode(code, k, states);
                if (! admissible(states))
                    continue;
                std::size_t base = 0;
                for (std::size_t q = k; q-- > 0;)
                    if (q != p)
                        base = base * 3 + static_cast<std::size_t>(states[q]);
                if (states[p] == in_l3) {
                    ++terms;
                    tab.t[code] = child.t[base];
                    tab.d[code] = child.d[base];
                    continue;
                }
                // Children of v* among L2 vertices: they were roots below.
                candidates.clear();
                for (std::size_t q = 0; q < k; ++q)
                    if (q != p && states[q] == in_l2 && w_out[q] != neg_inf)
                        candidates.push_back(q);
                double inner_t = neg_inf;
                double inner_d = neg_inf;
                std::uint32_t inner_mask = 0;
                const std::size_t subsets = std::size_t{1} << candidates.size();
                for (std::size_t s = 0; s < subsets; ++s) {
                    ++terms;
                    std::size_t sub = base;
                    double gain = 0.0;
                    std::uint32_t mask = 0;
                    for (std::size_t j = 0; j < candidates.size(); ++j)
                        if (s >> j & 1U) {
                            const auto q = candidates[j];
                            sub -= pow3(child_pos(q)); // L2 -> L1 in the child code
                            gain += w_out[q];
                            mask |= 1U << q;
                        }
                    if (const double value = gain + child.t[sub]; value > inner_t) {
                        inner_t = value;
                        inner_mask = mask;
                    }
                    inner_d = std::max(inner_d, gain + child.d[sub]);
                }
                if (states[p] == in_l1) {
                    tab.t[code] = inner_t;
                    tab.d[code] = inner_d;
                    tab.choice[code] = inner_mask;
                    continue;
                }
                // v* in L2: its parent is a bag vertex in L1 or L2. The DAG
                // keeps the parent out of S.
                double best_in = neg_inf;
                std::size_t parent = 0;
                for (std::size_t q = 0; q < k; ++q) {
                    if (q == p || states[q] == in_l3 || w_in[q] == neg_inf)
                        continue;
                    ++terms;
                    if (w_in[q] > best_in) {
                        best_in = w_in[q];
                        parent = q;
                    }
                }
                if (best_in == neg_inf)
                    continue;
                tab.t[code] = best_in + inner_t;
                tab.d[code] = best_in + inner_d;
                tab.choice[code] = inner_mask | static_cast<std::uint32_t>(parent + 1) << 16;
            }
            max_introduce_terms = std::max(max_introduce_terms, terms);
            break;
        }

        case NiceNodeType::Forget: {
            const auto & child = tables[idx(node.children.front())];
            const auto & cbag = nd.nodes[idx(node.children.front())].bag;
            const auto p = static_cast<std::size_t>(std::ranges::find(cbag, node.vertex) - cbag.begin());
            for (std::size_t code = 0; code < size; ++code) {
                decode(code, k, states);
                if (! admissible(states))
                    continue;
                // Insert v*'s state at child position p.
                auto child_code = [&](int state) {
                    std::size_t c = 0;
                    for (std::size_t q = k + 1; q-- > 0;) {
                        const int s = q == p ? state : states[q < p ? q : q - 1];
                        c = c * 3 + static_cast<std::size_t>(s);
                    }
                    return c;
                };
                const double kept = child.t[child_code(in_l2)];
                const double dropped = child.t[child_code(in_l3)];
                tab.t[code] = std::max(kept, dropped);
                tab.choice[code] = kept >= dropped ? 0U : 1U;
                tab.d[code] = child.d[child_code(in_l3)];
            }
            break;
        }

        case NiceNodeType::Join: {
            const auto & left = tables[idx(node.children[0])];
            const auto & right = tables[idx(node.children[1])];
            std::uint64_t terms = 0;
            for (std::size_t code = 0; code < size; ++code) {
                decode(code, k, states);
                if (! admissible(states))
                    continue;
                ++join_checks;
                if (! same_value(left.d[code], right.d[code]))
                    ++join_violations;
                tab.d[code] = left.d[code];

                // Each L2 vertex takes its parent on exactly one side and is a
                // root on the other.
                std::vector<std::size_t> l2;
                for (std::size_t q = 0; q < k; ++q)
                    if (states[q] == in_l2)
                        l2.push_back(q);
                const std::size_t subsets = std::size_t{1} << l2.size();
                double best = neg_inf;
                std::uint32_t arg = 0;
                for (std::size_t s = 0; s < subsets; ++s) {
                    ++terms;
                    std::size_t left_code = code;
                    std::size_t right_code = code;
                    std::uint32_t mask = 0;
                    for (std::size_t j = 0; j < l2.size(); ++j) {
                        const auto step = pow3(l2[j]);
                        if (s >> j & 1U) {
                            right_code -= step;
                            mask |= 1U << l2[j];
                        } else {
                            left_code -= step;
                        }
                    }
                    const double value = left.t[left_code] + right.t[right_code];
                    if (value > best) {
                        best = value;
                        arg = mask;
                    }
                }
                tab.t[code] = best;
                tab.choice[code] = arg;
            }
            max_join_terms = std::max(max_join_terms, terms);
            break;
        }
        }

        for (std::size_t code = 0; code < size; ++code)
            if (tab.d[code] > tab.t[code] + 1e-9)
                throw InternalError("bag-partition DP: D exceeds T");
        // Children are no longer needed except for their traceback choices.
        for (auto c : node.children) {
            tables[idx(c)].t = {};
            tables[idx(c)].d = {};
        }
    }

    if (counters) {
        counters->raise("treewidth.tripartitions_per_bag", max_tripartitions);
        counters->raise("treewidth.introduce_terms_per_bag", max_introduce_terms);
        counters->raise("treewidth.join_terms_per_bag", max_join_terms);
        counters->add("treewidth.join_checks", join_checks);
        counters->add("treewidth.join_violations", join_violations);
    }
    if (join_violations)
        throw InternalError("join node with D_j != D_k");

    const auto & root_node = nd.nodes[idx(nd.root)];
    if (root_node.bag.size() != 1 || rep[idx(root_node.bag.front())] != inst.root())
        throw PreconditionError("nice decomposition root bag must hold the root color only");

    SelectionResult result;
    result.weight = tables[idx(nd.root)].t[0]; // code 0: the root color in L1

    // Traceback over stored choices.
    struct Frame
    {
        std::int32_t node;
        std::size_t code;
    };
    std::vector<Frame> stack{{nd.root, 0}};
    while (! stack.empty()) {
        const auto [x, code] = stack.back();
        stack.pop_back();
        const auto & node = nd.nodes[idx(x)];
        const auto k = node.bag.size();
        const auto choice = tables[idx(x)].choice[code];
        decode(code, k, states);
        switch (node.type) {
        case NiceNodeType::Leaf:
            break;
        case NiceNodeType::Introduce: {
            const auto p = static_cast<std::size_t>(std::ranges::find(node.bag, node.vertex) - node.bag.begin());
            const auto v = rep[idx(node.vertex)];
            std::size_t child = 0;
            for (std::size_t q = k; q-- > 0;) {
                if (q == p)
                    continue;
                int s = states[q];
                if (states[p] != in_l3 && (choice >> q & 1U)) {
                    const auto u = rep[idx(node.bag[q])];
                    result.arcs.push_back(inst.arc(*inst.find_arc(v, u)));
                    s = in_l1;
                }
                child = child * 3 + static_cast<std::size_t>(s);
            }
            if (states[p] == in_l2) {
                const auto parent = static_cast<std::size_t>((choice >> 16) - 1);
                const auto u = rep[idx(node.bag[parent])];
                result.arcs.push_back(inst.arc(*inst.find_arc(u, v)));
            }
            stack.push_back({node.children.front(), child});
            break;
        }
        case NiceNodeType::Forget: {
            const auto & cbag = nd.nodes[idx(node.children.front())].bag;
            const auto p = static_cast<std::size_t>(std::ranges::find(cbag, node.vertex) - cbag.begin());
            std::size_t child = 0;
            for (std::size_t q = k + 1; q-- > 0;) {
                const int s = q == p ? (choice == 0 ? in_l2 : in_l3) : states[q < p ? q : q - 1];
                child = child * 3 + static_cast<std::size_t>(s);
            }
            stack.push_back({node.children.front(), child});
            break;
        }
        case NiceNodeType::Join: {
            std::size_t left_code = code;
            std::size_t right_code = code;
            for (std::size_t q = 0; q < k; ++q) {
                if (states[q] != in_l2)
                    continue;
                if (choice >> q & 1U)
                    right_code -= pow3(q);
                else
                    left_code -= pow3(q);
            }
            stack.push_back({node.children[0], left_code});
            stack.push_back({node.children[1], right_code});
            break;
        }
        }
    }
    return result;
}

auto solve_treewidth(const Instance & full, const SolveOptions & options) -> Solution
{
    const detail::PrunedView view(full);
    const auto & inst = view.inst;
    const ColorHierarchy h(inst);
    const auto present = h.present_colors();
    const auto lc = static_cast<std::int64_t>(inst.vertex_count()) - static_cast<std::int64_t>(present.size());
    if (lc > options.limits.treewidth_max_lc)
        throw GuardExceeded("treewidth solver refuses lc = " + std::to_string(lc) + " (limit "
                            + std::to_string(options.limits.treewidth_max_lc) + ")");

    const auto g = underlying_graph(h);
    if (options.exact_width && present.size() > 16)
        throw GuardExceeded("exact width search supports at most 16 colors");
    const auto td = decompose(g, options.exact_width);
    const auto root_color = inst.color(inst.root());
    const auto nd = make_nice(td, root_color);
    if (const auto problems = check_nice_decomposition(g, nd, root_color); ! problems.empty())
        throw InternalError("invalid nice decomposition: " + problems.front());
    const int width = nd.width();
    if (width > options.limits.treewidth_max_width)
        throw GuardExceeded("treewidth solver refuses width " + std::to_string(width) + " (limit "
                            + std::to_string(options.limits.treewidth_max_width) + ")");

    DeadlineGuard guard(options.deadline, 1);
    FullyColorfulEnumerator selections(inst);
    ColorfulSelection sel;
    SelectionResult best;
    best.weight = neg_inf;
    std::uint64_t count = 0;
    while (selections.next(sel)) {
        guard.poll();
        ++count;
        auto result = solve_selection(inst, sel, nd, options.counters);
        if (result.weight > best.weight)
            best = std::move(result);
    }
    if (options.counters) {
        options.counters->add("treewidth.selections", count);
        options.counters->raise("treewidth.width", static_cast<std::uint64_t>(std::max(width, 0)));
        options.counters->raise("treewidth.nice_nodes", nd.nodes.size());
    }
    return view.lift(std::move(best.arcs));
}

}
