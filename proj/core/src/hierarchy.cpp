#include "mca/hierarchy.hpp"

#include "mca/errors.hpp"

#include <algorithm>

namespace mca {

namespace {

auto idx(std::int32_t v) -> std::size_t
{
    return static_cast<std::size_t>(v);
}

void sort_unique(std::vector<ColorId> & v)
{
    std::ranges::sort(v);
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}

ColorHierarchy::ColorHierarchy(const Instance & inst) :
    _out(inst.color_count()),
    _in(inst.color_count()),
    _present(inst.color_count(), false),
    _child_order(inst.vertex_count())
{
    for (auto c : inst.colors())
        _present[idx(c)] = true;
    for (const auto & a : inst.arcs()) {
        const auto cu = inst.color(a.src);
        const auto cv = inst.color(a.dst);
        _out[idx(cu)].push_back(cv);
        _in[idx(cv)].push_back(cu);
        _child_order[idx(a.src)].push_back(cv);
    }
    for (auto & s : _out)
        sort_unique(s);
    for (auto & s : _in)
        sort_unique(s);
    for (auto & s : _child_order)
        sort_unique(s);

    _topo = mca::topological_order(std::span<const std::vector<ColorId>>(_out));
    for (std::size_t c = 0; c < _in.size(); ++c)
        if (_in[c].size() >= 2)
            _difficult.push_back(static_cast<ColorId>(c));
}

auto ColorHierarchy::present_colors() const -> std::vector<ColorId>
{
    std::vector<ColorId> result;
    for (std::size_t c = 0; c < _present.size(); ++c)
        if (_present[c])
            result.push_back(static_cast<ColorId>(c));
    return result;
}

auto ColorHierarchy::has_arc(ColorId from, ColorId to) const -> bool
{
    return std::ranges::binary_search(successors(from), to);
}

auto ColorHierarchy::arc_count() const -> std::size_t
{
    std::size_t total = 0;
    for (const auto & s : _out)
        total += s.size();
    return total;
}

auto ColorHierarchy::reachable_from(ColorId c) const -> std::vector<ColorId>
{
    std::vector<bool> seen(_out.size(), false);
    std::vector<ColorId> stack{c};
    seen[idx(c)] = true;
    while (! stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (auto v : _out[idx(u)])
            if (! seen[idx(v)]) {
                seen[idx(v)] = true;
                stack.push_back(v);
            }
    }
    std::vector<ColorId> result;
    for (std::size_t x = 0; x < seen.size(); ++x)
        if (seen[x])
            result.push_back(static_cast<ColorId>(x));
    return result;
}

auto difficult_set(const ColorHierarchy & h) -> std::vector<ColorId>
{
    return {h.difficult().begin(), h.difficult().end()};
}

}
