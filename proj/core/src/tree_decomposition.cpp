#include "mca/tree_decomposition.hpp"

#include "detail.hpp"
#include "mca/errors.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <string>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

namespace mca {

namespace {

using detail::idx;

auto contains(const std::vector<std::int32_t> & sorted, std::int32_t x) -> bool
{
    return std::ranges::binary_search(sorted, x);
}

auto difference(const std::vector<std::int32_t> & a, const std::vector<std::int32_t> & b)
    -> std::vector<std::int32_t>
{
    std::vector<std::int32_t> out;
    std::ranges::set_difference(a, b, std::back_inserter(out));
    return out;
}

auto bag_string(const std::vector<std::int32_t> & bag) -> std::string
{
    std::string s = "{";
    for (std::size_t i = 0; i < bag.size(); ++i)
        s += (i ? "," : "") + std::to_string(bag[i]);
    return s + "}";
}

}

UndirectedGraph::UndirectedGraph(std::size_t n) :
    _adj(n),
    _active(n, true)
{
}

void UndirectedGraph::add_edge(std::int32_t u, std::int32_t v)
{
    if (u == v)
        return;
    auto insert = [](std::vector<std::int32_t> & list, std::int32_t x) {
        const auto it = std::ranges::lower_bound(list, x);
        if (it == list.end() || *it != x)
            list.insert(it, x);
    };
    insert(_adj[idx(u)], v);
    insert(_adj[idx(v)], u);
}

auto UndirectedGraph::active_vertices() const -> std::vector<std::int32_t>
{
    std::vector<std::int32_t> out;
    for (std::size_t v = 0; v < _active.size(); ++v)
        if (_active[v])
            out.push_back(static_cast<std::int32_t>(v));
    return out;
}

auto UndirectedGraph::adjacent(std::int32_t u, std::int32_t v) const -> bool
{
    return contains(_adj[idx(u)], v);
}

auto UndirectedGraph::edges() const -> std::vector<std::pair<std::int32_t, std::int32_t>>
{
    std::vector<std::pair<std::int32_t, std::int32_t>> out;
    for (std::size_t u = 0; u < _adj.size(); ++u)
        for (auto v : _adj[u])
            if (static_cast<std::int32_t>(u) < v)
                out.emplace_back(static_cast<std::int32_t>(u), v);
    return out;
}

auto underlying_graph(const ColorHierarchy & h) -> UndirectedGraph
{
    UndirectedGraph g(h.color_count());
    for (std::size_t c = 0; c < h.color_count(); ++c) {
        g.set_active(static_cast<std::int32_t>(c), h.present(static_cast<ColorId>(c)));
        for (auto d : h.successors(static_cast<ColorId>(c)))
            g.add_edge(static_cast<std::int32_t>(c), d);
    }
    return g;
}

auto TreeDecomposition::width() const -> int
{
    std::size_t best = 0;
    for (const auto & b : bags)
        best = std::max(best, b.size());
    return static_cast<int>(best) - 1;
}

auto check_tree_decomposition(const UndirectedGraph & g, const TreeDecomposition & td) -> std::vector<std::string>
{
    std::vector<std::string> problems;
    const auto nb = td.bags.size();
    const auto active = g.active_vertices();
    if (nb == 0) {
        if (! active.empty())
            problems.emplace_back("no bags");
        return problems;
    }

    std::vector<std::vector<std::size_t>> adj(nb);
    bool edges_ok = td.tree_edges.size() == nb - 1;
    for (auto [x, y] : td.tree_edges) {
        if (x < 0 || y < 0 || idx(x) >= nb || idx(y) >= nb || x == y) {
            edges_ok = false;
            continue;
        }
        adj[idx(x)].push_back(idx(y));
        adj[idx(y)].push_back(idx(x));
    }
    // Connected with nb - 1 edges means a tree.
    std::vector<bool> seen(nb, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 0;
    while (! stack.empty()) {
        const auto b = stack.back();
        stack.pop_back();
        ++reached;
        for (auto c : adj[b])
            if (! seen[c]) {
                seen[c] = true;
                stack.push_back(c);
            }
    }
    if (! edges_ok || reached != nb)
        problems.emplace_back("bags do not form a tree");

    for (std::size_t b = 0; b < nb; ++b) {
        if (! std::ranges::is_sorted(td.bags[b])
            || std::adjacent_find(td.bags[b].begin(), td.bags[b].end()) != td.bags[b].end())
            problems.push_back("bag " + std::to_string(b) + " is not a sorted set");
        for (auto v : td.bags[b])
            if (v < 0 || idx(v) >= g.size() || ! g.active(v))
                problems.push_back("bag " + std::to_string(b) + " holds an unknown vertex " + std::to_string(v));
    }

    for (auto v : active) {
        std::vector<std::size_t> holding;
        for (std::size_t b = 0; b < nb; ++b)
            if (contains(td.bags[b], v))
                holding.push_back(b);
        if (holding.empty()) {
            problems.push_back("vertex " + std::to_string(v) + " is in no bag");
            continue;
        }
        // The bags holding v must induce a connected subtree.
        std::vector<bool> holds(nb, false);
        for (auto b : holding)
            holds[b] = true;
        std::vector<bool> visited(nb, false);
        std::vector<std::size_t> st{holding.front()};
        visited[holding.front()] = true;
        std::size_t count = 0;
        while (! st.empty()) {
            const auto b = st.back();
            st.pop_back();
            ++count;
            for (auto c : adj[b])
                if (holds[c] && ! visited[c]) {
                    visited[c] = true;
                    st.push_back(c);
                }
        }
        if (count != holding.size())
            problems.push_back("bags holding vertex " + std::to_string(v) + " are not connected");
    }

    for (auto [u, v] : g.edges()) {
        const bool covered = std::ranges::any_of(td.bags, [&](const auto & bag) {
            return contains(bag, u) && contains(bag, v);
        });
        if (! covered)
            problems.push_back("edge " + std::to_string(u) + "-" + std::to_string(v) + " is in no bag");
    }
    return problems;
}

auto decomposition_from_order(const UndirectedGraph & g, const std::vector<std::int32_t> & order) -> TreeDecomposition
{
    const auto n = g.size();
    std::vector<std::set<std::int32_t>> adj(n);
    for (auto [u, v] : g.edges()) {
        adj[idx(u)].insert(v);
        adj[idx(v)].insert(u);
    }
    std::vector<int> pos(n, -1);
    for (std::size_t i = 0; i < order.size(); ++i)
        pos[idx(order[i])] = static_cast<int>(i);

    TreeDecomposition td;
    td.bags.resize(order.size());
    std::vector<int> component_roots;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto v = order[i];
        auto & bag = td.bags[i];
        bag.push_back(v);
        int parent = -1;
        for (auto u : adj[idx(v)]) {
            bag.push_back(u);
            if (parent < 0 || pos[idx(u)] < parent)
                parent = pos[idx(u)];
        }
        std::ranges::sort(bag);
        // Eliminate v: its remaining neighbors become a clique.
        const std::vector<std::int32_t> nbrs(adj[idx(v)].begin(), adj[idx(v)].end());
        for (std::size_t a = 0; a < nbrs.size(); ++a) {
            adj[idx(nbrs[a])].erase(v);
            for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
                adj[idx(nbrs[a])].insert(nbrs[b]);
                adj[idx(nbrs[b])].insert(nbrs[a]);
            }
        }
        adj[idx(v)].clear();
        if (parent >= 0)
            td.tree_edges.emplace_back(static_cast<std::int32_t>(i), parent);
        else
            component_roots.push_back(static_cast<int>(i));
    }
    for (std::size_t i = 1; i < component_roots.size(); ++i)
        td.tree_edges.emplace_back(component_roots[i - 1], component_roots[i]);
    return td;
}

auto min_fill_order(const UndirectedGraph & g) -> std::vector<std::int32_t>
{
    const auto n = g.size();
    std::vector<std::set<std::int32_t>> adj(n);
    for (auto [u, v] : g.edges()) {
        adj[idx(u)].insert(v);
        adj[idx(v)].insert(u);
    }
    auto remaining = g.active_vertices();
    std::vector<std::int32_t> order;
    order.reserve(remaining.size());
    while (! remaining.empty()) {
        std::size_t best = 0;
        std::size_t best_fill = std::numeric_limits<std::size_t>::max();
        std::size_t best_degree = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            const auto & nb = adj[idx(remaining[i])];
            std::size_t fill = 0;
            for (auto a = nb.begin(); a != nb.end(); ++a)
                for (auto b = std::next(a); b != nb.end(); ++b)
                    if (! adj[idx(*a)].contains(*b))
                        ++fill;
            if (fill < best_fill || (fill == best_fill && nb.size() < best_degree)) {
                best = i;
                best_fill = fill;
                best_degree = nb.size();
            }
        }
        const auto v = remaining[best];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
        order.push_back(v);
        const std::vector<std::int32_t> nbrs(adj[idx(v)].begin(), adj[idx(v)].end());
        for (std::size_t a = 0; a < nbrs.size(); ++a) {
            adj[idx(nbrs[a])].erase(v);
            for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
                adj[idx(nbrs[a])].insert(nbrs[b]);
                adj[idx(nbrs[b])].insert(nbrs[a]);
            }
        }
        adj[idx(v)].clear();
    }
    return order;
}

auto exact_elimination_order(const UndirectedGraph & g) -> std::vector<std::int32_t>
{
    const auto active = g.active_vertices();
    const auto k = active.size();
    if (k > 16)
        throw GuardExceeded("exact elimination order supports at most 16 vertices");
    if (k == 0)
        return {};

    std::vector<int> local(g.size(), -1);
    for (std::size_t i = 0; i < k; ++i)
        local[idx(active[i])] = static_cast<int>(i);
    std::vector<std::uint32_t> nbr(k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (auto u : g.neighbors(active[i]))
            if (local[idx(u)] >= 0)
                nbr[i] |= 1U << local[idx(u)];

    // q(S, v): vertices outside S + v reachable from v through S. Eliminating
    // S first and then v leaves v with exactly these neighbors.
    auto q = [&](std::uint32_t s, std::size_t v) {
        std::uint32_t seen = 1U << v;
        std::uint32_t frontier = 1U << v;
        std::uint32_t outside = 0;
        while (frontier) {
            std::uint32_t next = 0;
            for (std::uint32_t f = frontier; f; f &= f - 1) {
                const auto x = static_cast<std::size_t>(std::countr_zero(f));
                const auto fresh = nbr[x] & ~seen;
                seen |= fresh;
                outside |= fresh & ~s;
                next |= fresh & s;
            }
            frontier = next;
        }
        return std::popcount(outside);
    };

    const std::size_t total = std::size_t{1} << k;
    std::vector<int> tw(total, std::numeric_limits<int>::max());
    std::vector<std::int8_t> last(total, -1);
    tw[0] = -1;
    for (std::uint32_t s = 1; s < total; ++s)
        for (std::uint32_t bits = s; bits; bits &= bits - 1) {
            const auto v = static_cast<std::size_t>(std::countr_zero(bits));
            const auto prev = s & ~(1U << v);
            const int value = std::max(tw[prev], q(prev, v));
            if (value < tw[s]) {
                tw[s] = value;
                last[s] = static_cast<std::int8_t>(v);
            }
        }

    std::vector<std::int32_t> order(k);
    std::uint32_t s = static_cast<std::uint32_t>(total - 1);
    for (std::size_t i = k; i-- > 0;) {
        const auto v = static_cast<std::size_t>(last[s]);
        order[i] = active[v];
        s &= ~(1U << v);
    }
    return order;
}

auto decompose(const UndirectedGraph & g, bool exact) -> TreeDecomposition
{
    const auto order = exact ? exact_elimination_order(g) : min_fill_order(g);
    auto td = decomposition_from_order(g, order);
    if (const auto problems = check_tree_decomposition(g, td); ! problems.empty())
        throw InternalError("invalid tree decomposition: " + problems.front());
    return td;
}

auto NiceDecomposition::width() const -> int
{
    std::size_t best = 0;
    for (const auto & node : nodes)
        best = std::max(best, node.bag.size());
    return static_cast<int>(best) - 1;
}

auto NiceDecomposition::post_order() const -> std::vector<std::int32_t>
{
    std::vector<std::int32_t> order;
    if (root < 0)
        return order;
    order.reserve(nodes.size());
    std::vector<std::int32_t> stack{root};
    while (! stack.empty()) {
        const auto x = stack.back();
        stack.pop_back();
        order.push_back(x);
        for (auto c : nodes[idx(x)].children)
            stack.push_back(c);
    }
    std::ranges::reverse(order);
    return order;
}

namespace {

class NiceBuilder
{
public:
    explicit NiceBuilder(NiceDecomposition & nd) :
        _nd(nd)
    {
    }

    auto add(NiceNodeType type, std::vector<std::int32_t> bag, std::int32_t vertex,
             std::vector<std::int32_t> children) -> std::int32_t
    {
        _nd.nodes.push_back({type, std::move(bag), vertex, std::move(children)});
        return static_cast<std::int32_t>(_nd.nodes.size() - 1);
    }

    auto introduce(std::int32_t child, std::int32_t v) -> std::int32_t
    {
        auto bag = _nd.nodes[idx(child)].bag;
        bag.insert(std::ranges::lower_bound(bag, v), v);
        return add(NiceNodeType::Introduce, std::move(bag), v, {child});
    }

    auto forget(std::int32_t child, std::int32_t v) -> std::int32_t
    {
        auto bag = _nd.nodes[idx(child)].bag;
        bag.erase(std::ranges::find(bag, v));
        return add(NiceNodeType::Forget, std::move(bag), v, {child});
    }

    /// Chain of forget and introduce nodes turning `child`'s bag into `target`,
    /// never passing through an empty bag.
    auto transition(std::int32_t child, const std::vector<std::int32_t> & target) -> std::int32_t
    {
        const auto & from = _nd.nodes[idx(child)].bag;
        const auto gone = difference(from, target);
        const auto fresh = difference(target, from);
        const bool disjoint = gone.size() == from.size();
        auto node = child;
        for (std::size_t i = 0; i < gone.size(); ++i) {
            if (disjoint && i + 1 == gone.size() && ! fresh.empty())
                node = introduce(node, fresh.front());
            node = forget(node, gone[i]);
        }
        for (std::size_t i = (disjoint && ! gone.empty() && ! fresh.empty()) ? 1 : 0; i < fresh.size(); ++i)
            node = introduce(node, fresh[i]);
        return node;
    }

    auto leaf_chain(const std::vector<std::int32_t> & bag) -> std::int32_t
    {
        auto node = add(NiceNodeType::Leaf, {bag.front()}, -1, {});
        for (std::size_t i = 1; i < bag.size(); ++i)
            node = introduce(node, bag[i]);
        return node;
    }

private:
    NiceDecomposition & _nd;
};

}

auto make_nice(const TreeDecomposition & td, std::int32_t root_vertex) -> NiceDecomposition
{
    const auto nb = td.bags.size();
    std::size_t top = nb;
    for (std::size_t b = 0; b < nb; ++b)
        if (contains(td.bags[b], root_vertex)) {
            top = b;
            break;
        }
    if (top == nb)
        throw PreconditionError("no bag contains the root vertex " + std::to_string(root_vertex));

    std::vector<std::vector<std::size_t>> adj(nb);
    for (auto [x, y] : td.tree_edges) {
        adj[idx(x)].push_back(idx(y));
        adj[idx(y)].push_back(idx(x));
    }

    // Root the decomposition at `top`; children listed in ascending bag index.
    std::vector<std::size_t> parent(nb, nb);
    std::vector<std::size_t> order{top};
    parent[top] = top;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (auto c : adj[order[i]])
            if (parent[c] == nb) {
                parent[c] = order[i];
                order.push_back(c);
            }
    std::vector<std::vector<std::size_t>> children(nb);
    for (auto b : order)
        if (b != top)
            children[parent[b]].push_back(b);
    for (auto & c : children)
        std::ranges::sort(c);

    NiceDecomposition nd;
    NiceBuilder builder(nd);
    std::vector<std::int32_t> built(nb, -1);
    // Reverse BFS order visits every child before its parent.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto b = *it;
        const auto & bag = td.bags[b];
        std::vector<std::int32_t> subtrees;
        for (auto c : children[b])
            subtrees.push_back(builder.transition(built[c], bag));
        std::int32_t node = -1;
        if (subtrees.empty()) {
            node = builder.leaf_chain(bag);
        } else {
            node = subtrees.front();
            for (std::size_t i = 1; i < subtrees.size(); ++i)
                node = builder.add(NiceNodeType::Join, bag, -1, {node, subtrees[i]});
        }
        built[b] = node;
    }
    nd.root = builder.transition(built[top], {root_vertex});
    return nd;
}

auto check_nice_decomposition(const UndirectedGraph & g, const NiceDecomposition & nd, std::int32_t root_vertex)
    -> std::vector<std::string>
{
    TreeDecomposition td;
    for (std::size_t x = 0; x < nd.nodes.size(); ++x) {
        td.bags.push_back(nd.nodes[x].bag);
        for (auto c : nd.nodes[x].children)
            td.tree_edges.emplace_back(static_cast<std::int32_t>(x), c);
    }
    auto problems = check_tree_decomposition(g, td);

    if (nd.root < 0 || idx(nd.root) >= nd.nodes.size()) {
        problems.emplace_back("missing root");
        return problems;
    }
    if (nd.nodes[idx(nd.root)].bag != std::vector<std::int32_t>{root_vertex})
        problems.push_back("root bag is " + bag_string(nd.nodes[idx(nd.root)].bag));

    for (std::size_t x = 0; x < nd.nodes.size(); ++x) {
        const auto & node = nd.nodes[x];
        const auto name = "node " + std::to_string(x);
        switch (node.type) {
        case NiceNodeType::Leaf:
            if (! node.children.empty() || node.bag.size() != 1)
                problems.push_back(name + ": leaf must be childless with one vertex");
            break;
        case NiceNodeType::Introduce:
        case NiceNodeType::Forget: {
            if (node.children.size() != 1) {
                problems.push_back(name + ": needs exactly one child");
                break;
            }
            const auto & child = nd.nodes[idx(node.children.front())].bag;
            const auto & big = node.type == NiceNodeType::Introduce ? node.bag : child;
            const auto & small = node.type == NiceNodeType::Introduce ? child : node.bag;
            if (difference(big, small) != std::vector<std::int32_t>{node.vertex} || difference(small, big).size() != 0)
                problems.push_back(name + ": bag differs from its child by more than vertex "
                                   + std::to_string(node.vertex));
            break;
        }
        case NiceNodeType::Join:
            if (node.children.size() != 2 || nd.nodes[idx(node.children[0])].bag != node.bag
                || nd.nodes[idx(node.children[1])].bag != node.bag)
                problems.push_back(name + ": join needs two children with the same bag");
            break;
        }
    }
    return problems;
}

}
