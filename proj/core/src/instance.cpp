#include "mca/instance.hpp"

#include "mca/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

namespace mca {

namespace {

auto idx(std::int32_t v) -> std::size_t
{
    return static_cast<std::size_t>(v);
}

}

Instance::Instance(std::vector<ColorId> vertex_colors, std::vector<Arc> arcs, VertexId root,
                   std::size_t color_count, bool pruned) :
    _colors(std::move(vertex_colors)),
    _arcs(std::move(arcs)),
    _root(root),
    _color_count(color_count),
    _pruned(pruned)
{
    const auto n = _colors.size();
    if (n == 0)
        throw InstanceError("instance has no vertices");
    if (root < 0 || idx(root) >= n)
        throw InstanceError("root " + std::to_string(root) + " out of range");
    for (std::size_t v = 0; v < n; ++v)
        if (_colors[v] < 0 || idx(_colors[v]) >= color_count)
            throw InstanceError("vertex " + std::to_string(v) + " has color " + std::to_string(_colors[v])
                                + " outside [0, " + std::to_string(color_count) + ")");

    for (const auto & a : _arcs) {
        if (a.src < 0 || idx(a.src) >= n || a.dst < 0 || idx(a.dst) >= n)
            throw InstanceError("arc (" + std::to_string(a.src) + ", " + std::to_string(a.dst)
                                + ") references a missing vertex");
        if (a.src == a.dst)
            throw InstanceError("self-loop on vertex " + std::to_string(a.src));
        if (! std::isfinite(a.weight))
            throw InstanceError("arc (" + std::to_string(a.src) + ", " + std::to_string(a.dst)
                                + ") has a non-finite weight");
    }
    std::ranges::sort(_arcs, [](const Arc & x, const Arc & y) {
        return std::tie(x.src, x.dst) < std::tie(y.src, y.dst);
    });
    for (std::size_t i = 1; i < _arcs.size(); ++i)
        if (_arcs[i].src == _arcs[i - 1].src && _arcs[i].dst == _arcs[i - 1].dst)
            throw InstanceError("duplicate arc (" + std::to_string(_arcs[i].src) + ", "
                                + std::to_string(_arcs[i].dst) + ")");

    _out_begin.assign(n + 1, 0);
    _in_begin.assign(n + 1, 0);
    for (const auto & a : _arcs) {
        ++_out_begin[idx(a.src) + 1];
        ++_in_begin[idx(a.dst) + 1];
    }
    for (std::size_t v = 0; v < n; ++v) {
        _out_begin[v + 1] += _out_begin[v];
        _in_begin[v + 1] += _in_begin[v];
    }
    // Arcs are sorted by source, so filling in order keeps each in-list sorted by source.
    _in_arcs.resize(_arcs.size());
    auto fill = _in_begin;
    for (std::size_t a = 0; a < _arcs.size(); ++a)
        _in_arcs[fill[idx(_arcs[a].dst)]++] = static_cast<ArcIndex>(a);

    _color_begin.assign(color_count + 1, 0);
    for (auto c : _colors)
        ++_color_begin[idx(c) + 1];
    for (std::size_t c = 0; c < color_count; ++c)
        _color_begin[c + 1] += _color_begin[c];
    _by_color.resize(n);
    auto cfill = _color_begin;
    for (std::size_t v = 0; v < n; ++v)
        _by_color[cfill[idx(_colors[v])]++] = static_cast<VertexId>(v);
}

auto Instance::out_arcs(VertexId v) const -> std::span<const Arc>
{
    const auto b = _out_begin[idx(v)];
    const auto e = _out_begin[idx(v) + 1];
    return std::span<const Arc>(_arcs).subspan(b, e - b);
}

auto Instance::in_arcs(VertexId v) const -> std::span<const ArcIndex>
{
    const auto b = _in_begin[idx(v)];
    const auto e = _in_begin[idx(v) + 1];
    return std::span<const ArcIndex>(_in_arcs).subspan(b, e - b);
}

auto Instance::find_arc(VertexId src, VertexId dst) const -> std::optional<ArcIndex>
{
    if (src < 0 || idx(src) >= vertex_count())
        return std::nullopt;
    const auto out = out_arcs(src);
    const auto it = std::ranges::lower_bound(out, dst, {}, &Arc::dst);
    if (it == out.end() || it->dst != dst)
        return std::nullopt;
    return static_cast<ArcIndex>(_out_begin[idx(src)] + static_cast<std::size_t>(it - out.begin()));
}

auto Instance::vertices_of_color(ColorId c) const -> std::span<const VertexId>
{
    const auto b = _color_begin[idx(c)];
    const auto e = _color_begin[idx(c) + 1];
    return std::span<const VertexId>(_by_color).subspan(b, e - b);
}

auto operator==(const Instance & x, const Instance & y) -> bool
{
    return x._colors == y._colors && x._arcs == y._arcs && x._root == y._root
           && x._color_count == y._color_count && x._pruned == y._pruned;
}

auto total_weight(std::span<const Arc> arcs) -> double
{
    double sum = 0.0;
    for (const auto & a : arcs)
        sum += a.weight;
    return sum;
}

auto ValidationReport::has(ValidationIssueKind kind) const -> bool
{
    return std::ranges::any_of(issues, [kind](const ValidationIssue & i) { return i.kind == kind; });
}

auto topological_order(std::span<const std::vector<std::int32_t>> successors) -> std::vector<std::int32_t>
{
    const auto n = successors.size();
    std::vector<std::size_t> indeg(n, 0);
    for (const auto & out : successors)
        for (auto v : out)
            ++indeg[idx(v)];

    std::priority_queue<std::int32_t, std::vector<std::int32_t>, std::greater<>> ready;
    for (std::size_t v = 0; v < n; ++v)
        if (indeg[v] == 0)
            ready.push(static_cast<std::int32_t>(v));

    std::vector<std::int32_t> order;
    order.reserve(n);
    while (! ready.empty()) {
        const auto u = ready.top();
        ready.pop();
        order.push_back(u);
        for (auto v : successors[idx(u)])
            if (--indeg[idx(v)] == 0)
                ready.push(v);
    }
    if (order.size() != n)
        throw InstanceError("graph has a directed cycle");
    return order;
}

namespace {

auto successor_lists(const Instance & inst) -> std::vector<std::vector<std::int32_t>>
{
    std::vector<std::vector<std::int32_t>> succ(inst.vertex_count());
    for (const auto & a : inst.arcs())
        succ[idx(a.src)].push_back(a.dst);
    return succ;
}

auto color_successor_lists(const Instance & inst) -> std::vector<std::vector<std::int32_t>>
{
    std::vector<std::vector<std::int32_t>> succ(inst.color_count());
    for (const auto & a : inst.arcs())
        succ[idx(inst.color(a.src))].push_back(inst.color(a.dst));
    for (auto & s : succ) {
        std::ranges::sort(s);
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return succ;
}

auto is_acyclic(std::span<const std::vector<std::int32_t>> succ) -> bool
{
    try {
        (void)topological_order(succ);
        return true;
    } catch (const InstanceError &) {
        return false;
    }
}

}

auto topological_order(const Instance & inst) -> std::vector<VertexId>
{
    const auto succ = successor_lists(inst);
    return topological_order(succ);
}

auto validate(const Instance & inst) -> ValidationReport
{
    ValidationReport report;
    if (! is_acyclic(successor_lists(inst)))
        report.issues.push_back({ValidationIssueKind::GraphCyclic, "G is cyclic"});
    if (! is_acyclic(color_successor_lists(inst)))
        report.issues.push_back({ValidationIssueKind::HierarchyCyclic, "H(G) is cyclic"});
    if (! inst.is_pruned())
        for (std::size_t c = 0; c < inst.color_count(); ++c)
            if (! inst.color_used(static_cast<ColorId>(c)))
                report.issues.push_back(
                    {ValidationIssueKind::UnusedColor, "color " + std::to_string(c) + " has no vertex"});
    return report;
}

void require_valid(const Instance & inst)
{
    const auto report = validate(inst);
    if (! report.valid())
        throw InstanceError(report.issues.front().message);
}

auto reachable_from_root(const Instance & inst) -> std::vector<VertexId>
{
    std::vector<bool> seen(inst.vertex_count(), false);
    std::vector<VertexId> stack{inst.root()};
    seen[idx(inst.root())] = true;
    while (! stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (const auto & a : inst.out_arcs(u))
            if (! seen[idx(a.dst)]) {
                seen[idx(a.dst)] = true;
                stack.push_back(a.dst);
            }
    }
    std::vector<VertexId> result;
    for (std::size_t v = 0; v < seen.size(); ++v)
        if (seen[v])
            result.push_back(static_cast<VertexId>(v));
    return result;
}

auto prune_unreachable(const Instance & inst) -> Instance
{
    const auto keep = reachable_from_root(inst);
    std::vector<VertexId> new_id(inst.vertex_count(), no_vertex);
    std::vector<ColorId> colors;
    colors.reserve(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        new_id[idx(keep[i])] = static_cast<VertexId>(i);
        colors.push_back(inst.color(keep[i]));
    }
    std::vector<Arc> arcs;
    for (const auto & a : inst.arcs())
        if (new_id[idx(a.src)] != no_vertex && new_id[idx(a.dst)] != no_vertex)
            arcs.push_back({new_id[idx(a.src)], new_id[idx(a.dst)], a.weight});
    return Instance(std::move(colors), std::move(arcs), new_id[idx(inst.root())], inst.color_count(), true);
}

auto compact_colors(const Instance & inst) -> Instance
{
    std::vector<ColorId> new_color(inst.color_count(), -1);
    ColorId next = 0;
    for (std::size_t c = 0; c < inst.color_count(); ++c)
        if (inst.color_used(static_cast<ColorId>(c)))
            new_color[c] = next++;
    std::vector<ColorId> colors;
    colors.reserve(inst.vertex_count());
    for (auto c : inst.colors())
        colors.push_back(new_color[idx(c)]);
    return Instance(std::move(colors), {inst.arcs().begin(), inst.arcs().end()}, inst.root(),
                    static_cast<std::size_t>(next), false);
}

}
