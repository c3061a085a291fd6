#include "mca/generators.hpp"

#include "detail.hpp"
#include "mca/errors.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

namespace mca {

namespace {

using detail::idx;
using Rng = std::mt19937_64;

auto uniform(Rng & rng, int lo, int hi) -> int
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

auto coin(Rng & rng, double p) -> bool
{
    return std::bernoulli_distribution(p)(rng);
}

/// Arc set keyed by (src, dst) positions, built before ids are shuffled.
class ArcBuilder
{
public:
    ArcBuilder(Rng & rng, int weight_min, int weight_max) :
        _rng(rng),
        _wmin(weight_min),
        _wmax(weight_max)
    {
    }

    auto add(int u, int v) -> bool
    {
        if (! _keys.insert({u, v}).second)
            return false;
        _arcs.push_back({u, v, static_cast<double>(uniform(_rng, _wmin, _wmax))});
        return true;
    }

    [[nodiscard]] auto has_in_arc(int v) const -> bool
    {
        return std::ranges::any_of(_arcs, [v](const Arc & a) { return a.dst == v; });
    }

    auto take() -> std::vector<Arc> { return std::move(_arcs); }

private:
    Rng & _rng;
    int _wmin;
    int _wmax;
    std::set<std::pair<int, int>> _keys;
    std::vector<Arc> _arcs;
};

/// Shuffles vertex ids; position 0 (the root) may land anywhere.
auto shuffled_instance(Rng & rng, const std::vector<ColorId> & color_of_position, std::vector<Arc> arcs,
                       std::size_t color_count) -> Instance
{
    const auto n = color_of_position.size();
    std::vector<VertexId> id(n);
    std::iota(id.begin(), id.end(), 0);
    std::shuffle(id.begin(), id.end(), rng);
    std::vector<ColorId> colors(n);
    for (std::size_t pos = 0; pos < n; ++pos)
        colors[idx(id[pos])] = color_of_position[pos];
    for (auto & a : arcs) {
        a.src = id[idx(a.src)];
        a.dst = id[idx(a.dst)];
    }
    return Instance(std::move(colors), std::move(arcs), id[0], color_count);
}

void check_params(const GenParams & p)
{
    if (p.colors < 1 || p.vertices < p.colors)
        throw PreconditionError("need 1 <= colors <= vertices");
    if (! (p.density > 0.0 && p.density <= 1.0))
        throw PreconditionError("density must lie in (0, 1]");
    if (p.weight_min > p.weight_max)
        throw PreconditionError("empty weight range");
    if (p.diamonds < 0 || (p.diamonds > 0 && p.shape != GenShape::Tree))
        throw PreconditionError("diamonds need the tree shape");
    if (p.diamonds > std::max(0, p.colors - 2))
        throw PreconditionError("at most colors - 2 diamonds fit");
}

auto gen_dense(const GenParams & p, Rng & rng) -> Instance
{
    const int n = p.vertices;
    std::vector<ColorId> color(static_cast<std::size_t>(n));
    for (int pos = 0; pos < n; ++pos)
        color[idx(pos)] = pos < p.colors ? pos : uniform(rng, 0, p.colors - 1);

    ArcBuilder arcs(rng, p.weight_min, p.weight_max);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (color[idx(u)] < color[idx(v)] && coin(rng, p.density))
                arcs.add(u, v);
    // Make every vertex outside the root color reachable by some in-arc.
    for (int v = 0; v < n; ++v) {
        if (color[idx(v)] == 0 || arcs.has_in_arc(v))
            continue;
        std::vector<int> lower;
        for (int u = 0; u < n; ++u)
            if (color[idx(u)] < color[idx(v)])
                lower.push_back(u);
        arcs.add(lower[idx(uniform(rng, 0, static_cast<int>(lower.size()) - 1))], v);
    }
    return shuffled_instance(rng, color, arcs.take(), static_cast<std::size_t>(p.colors));
}

auto gen_tree(const GenParams & p, Rng & rng) -> Instance
{
    const int n = p.vertices;
    const int k = p.colors;
    std::vector<std::vector<int>> parents(static_cast<std::size_t>(k));
    for (int c = 1; c < k; ++c)
        parents[idx(c)].push_back(uniform(rng, 0, c - 1));

    std::vector<int> eligible;
    for (int c = 2; c < k; ++c)
        eligible.push_back(c);
    std::shuffle(eligible.begin(), eligible.end(), rng);
    for (int i = 0; i < p.diamonds; ++i) {
        const int c = eligible[idx(i)];
        int q = uniform(rng, 0, c - 2);
        if (q >= parents[idx(c)].front())
            ++q; // skip the first parent
        parents[idx(c)].push_back(q);
    }

    std::vector<ColorId> color(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> by_color(static_cast<std::size_t>(k));
    for (int pos = 0; pos < n; ++pos) {
        color[idx(pos)] = pos < k ? pos : (k > 1 ? uniform(rng, 1, k - 1) : 0);
        by_color[idx(color[idx(pos)])].push_back(pos);
    }
    auto pick = [&](int c) {
        const auto & list = by_color[idx(c)];
        return list[idx(uniform(rng, 0, static_cast<int>(list.size()) - 1))];
    };

    ArcBuilder arcs(rng, p.weight_min, p.weight_max);
    for (int v = 0; v < n; ++v)
        if (color[idx(v)] != 0)
            arcs.add(pick(parents[idx(color[idx(v)])].front()), v);
    for (int c = 1; c < k; ++c)
        for (std::size_t j = 1; j < parents[idx(c)].size(); ++j)
            arcs.add(pick(parents[idx(c)][j]), pick(c));
    for (int c = 1; c < k; ++c)
        for (auto parent : parents[idx(c)])
            for (auto u : by_color[idx(parent)])
                for (auto v : by_color[idx(c)])
                    if (coin(rng, p.density))
                        arcs.add(u, v);
    return shuffled_instance(rng, color, arcs.take(), static_cast<std::size_t>(k));
}

auto parse_int_token(const std::string & token, std::size_t line) -> int
{
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(line, "expected an integer, got '" + token + "'");
    return value;
}

auto three_level(const SetCoverInstance & sc, const std::vector<ColorId> & set_color, std::size_t set_colors)
    -> ReducedInstance
{
    const auto p = static_cast<int>(sc.sets.size());
    const int q = sc.universe;
    std::vector<ColorId> colors;
    colors.push_back(0);
    for (auto c : set_color)
        colors.push_back(1 + c);
    for (int j = 0; j < q; ++j)
        colors.push_back(static_cast<ColorId>(1 + set_colors + static_cast<std::size_t>(j)));

    std::vector<Arc> arcs;
    for (int i = 0; i < p; ++i) {
        arcs.push_back({0, 1 + i, -1.0});
        for (auto e : sc.sets[idx(i)])
            arcs.push_back({1 + i, 1 + p + e, static_cast<double>(p)});
    }
    Instance inst(std::move(colors), std::move(arcs), 0, 1 + set_colors + static_cast<std::size_t>(q));
    return {std::move(inst), static_cast<double>(p * q - sc.k)};
}

}

auto gen_random(const GenParams & params) -> Instance
{
    check_params(params);
    Rng rng(params.seed);
    return params.shape == GenShape::Dense ? gen_dense(params, rng) : gen_tree(params, rng);
}

void validate_set_cover(const SetCoverInstance & sc)
{
    if (sc.universe < 1)
        throw PreconditionError("universe must be nonempty");
    if (sc.sets.empty())
        throw PreconditionError("family must be nonempty");
    for (const auto & s : sc.sets) {
        if (s.empty())
            throw PreconditionError("empty set in the family");
        for (auto e : s)
            if (e < 0 || e >= sc.universe)
                throw PreconditionError("element " + std::to_string(e) + " outside the universe");
        auto sorted = s;
        std::ranges::sort(sorted);
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw PreconditionError("set lists an element twice");
    }
    if (sc.colored() && sc.set_colors.size() != sc.sets.size())
        throw PreconditionError("need one color per set");
    for (auto c : sc.set_colors)
        if (c < 0)
            throw PreconditionError("negative set color");
}

auto parse_set_cover(std::string_view text) -> SetCoverInstance
{
    SetCoverInstance sc;
    bool have_universe = false;
    bool have_k = false;
    int colored_sets = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos)
            raw.resize(hash);
        std::istringstream fields(raw);
        std::vector<std::string> tokens;
        for (std::string t; fields >> t;)
            tokens.push_back(t);
        if (tokens.empty())
            continue;
        if (tokens[0] == "universe" && tokens.size() == 2) {
            sc.universe = parse_int_token(tokens[1], line);
            have_universe = true;
        } else if (tokens[0] == "k" && tokens.size() == 2) {
            sc.k = parse_int_token(tokens[1], line);
            have_k = true;
        } else if (tokens[0] == "set") {
            std::size_t start = 1;
            if (tokens.size() >= 3 && tokens[1] == "color") {
                sc.set_colors.push_back(parse_int_token(tokens[2], line));
                ++colored_sets;
                start = 3;
            }
            std::vector<int> elements;
            for (auto i = start; i < tokens.size(); ++i)
                elements.push_back(parse_int_token(tokens[i], line));
            sc.sets.push_back(std::move(elements));
        } else {
            throw ParseError(line, "unknown record '" + tokens[0] + "'");
        }
    }
    if (! have_universe || ! have_k)
        throw ParseError(line + 1, "missing 'universe' or 'k' record");
    if (colored_sets != 0 && colored_sets != static_cast<int>(sc.sets.size()))
        throw ParseError(line + 1, "either every set has a color or none has");
    try {
        validate_set_cover(sc);
    } catch (const PreconditionError & e) {
        throw ParseError(line + 1, e.what());
    }
    return sc;
}

void write_set_cover(std::ostream & out, const SetCoverInstance & sc)
{
    out << "universe " << sc.universe << '\n';
    for (std::size_t i = 0; i < sc.sets.size(); ++i) {
        out << "set";
        if (sc.colored())
            out << " color " << sc.set_colors[i];
        for (auto e : sc.sets[i])
            out << ' ' << e;
        out << '\n';
    }
    out << "k " << sc.k << '\n';
}

auto gen_set_cover(int p, int q, int k, std::uint64_t seed, int set_colors) -> SetCoverInstance
{
    if (p < 1 || q < 1)
        throw PreconditionError("need p, q >= 1");
    Rng rng(seed);
    SetCoverInstance sc;
    sc.universe = q;
    sc.k = k;
    for (int i = 0; i < p; ++i) {
        std::vector<int> s;
        for (int e = 0; e < q; ++e)
            if (coin(rng, 0.4))
                s.push_back(e);
        if (s.empty())
            s.push_back(uniform(rng, 0, q - 1));
        sc.sets.push_back(std::move(s));
        if (set_colors > 0)
            sc.set_colors.push_back(uniform(rng, 0, set_colors - 1));
    }
    return sc;
}

auto reduce_set_cover(const SetCoverInstance & sc) -> ReducedInstance
{
    validate_set_cover(sc);
    if (sc.colored())
        throw PreconditionError("plain reduction expects uncolored sets");
    std::vector<ColorId> set_color(sc.sets.size());
    std::iota(set_color.begin(), set_color.end(), 0);
    return three_level(sc, set_color, sc.sets.size());
}

auto reduce_multicolored_set_cover(const SetCoverInstance & sc) -> ReducedInstance
{
    validate_set_cover(sc);
    if (! sc.colored())
        throw PreconditionError("multicolored reduction expects set colors");
    std::map<int, ColorId> dense;
    for (auto c : sc.set_colors)
        dense.emplace(c, 0);
    ColorId next = 0;
    for (auto & [c, id] : dense)
        id = next++;
    std::vector<ColorId> set_color;
    for (auto c : sc.set_colors)
        set_color.push_back(dense.at(c));
    return three_level(sc, set_color, dense.size());
}

auto or_compose(std::span<const Instance> components) -> Instance
{
    if (components.empty())
        throw PreconditionError("nothing to compose");
    const auto t = components.front().color_count();
    std::vector<ColorId> colors;
    std::vector<Arc> arcs;
    std::vector<VertexId> roots;
    for (const auto & comp : components) {
        if (comp.color_count() != t)
            throw PreconditionError("components must share one color set");
        const auto offset = static_cast<VertexId>(colors.size());
        colors.insert(colors.end(), comp.colors().begin(), comp.colors().end());
        for (const auto & a : comp.arcs())
            arcs.push_back({a.src + offset, a.dst + offset, a.weight});
        roots.push_back(comp.root() + offset);
    }
    const auto root = static_cast<VertexId>(colors.size());
    colors.push_back(static_cast<ColorId>(t));
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const auto gateway = static_cast<VertexId>(colors.size());
        colors.push_back(static_cast<ColorId>(t + 1));
        arcs.push_back({root, gateway, 0.0});
        arcs.push_back({gateway, roots[i], 0.0});
    }
    Instance composed(std::move(colors), std::move(arcs), root, t + 2);
    if (const auto report = validate(composed); ! report.valid())
        throw PreconditionError("composition is not a valid instance: " + report.issues.front().message);
    return composed;
}

}
