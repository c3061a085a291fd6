#include "mca/io.hpp"

#include "mca/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace mca {

namespace {

/// Whitespace-separated tokens of one line, comments stripped.
auto tokenize(std::string_view line) -> std::vector<std::string_view>
{
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        const auto start = i;
        while (i < line.size() && ! std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i > start)
            tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

auto parse_int(std::string_view token, std::size_t line, const char * what) -> std::int64_t
{
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(line, std::string("expected an integer ") + what + ", got '" + std::string(token) + "'");
    return value;
}

auto parse_double(std::string_view token, std::size_t line) -> double
{
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(line, "expected a decimal weight, got '" + std::string(token) + "'");
    if (! std::isfinite(value))
        throw ParseError(line, "non-finite weight '" + std::string(token) + "'");
    return value;
}

void expect_keyword(const std::vector<std::string_view> & tokens, std::size_t pos, std::string_view keyword,
                    std::size_t line)
{
    if (pos >= tokens.size() || tokens[pos] != keyword)
        throw ParseError(line, "expected '" + std::string(keyword) + "'");
}

}

auto parse_instance(std::istream & in) -> Instance
{
    enum class Stage
    {
        Magic,
        Sizes,
        Root,
        Records,
    };

    Stage stage = Stage::Magic;
    std::int64_t n = 0;
    std::int64_t m = 0;
    std::int64_t color_count = 0;
    std::int64_t root = -1;
    std::vector<ColorId> colors;
    std::vector<bool> seen_vertex;
    std::vector<Arc> arcs;
    std::set<std::pair<VertexId, VertexId>> arc_keys;

    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto tokens = tokenize(raw);
        if (tokens.empty())
            continue;

        switch (stage) {
        case Stage::Magic:
            expect_keyword(tokens, 0, "mca", line);
            if (tokens.size() != 2 || tokens[1] != "1")
                throw ParseError(line, "unsupported format version");
            stage = Stage::Sizes;
            break;
        case Stage::Sizes:
            if (tokens.size() != 6)
                throw ParseError(line, "expected 'n <int> m <int> colors <int>'");
            expect_keyword(tokens, 0, "n", line);
            expect_keyword(tokens, 2, "m", line);
            expect_keyword(tokens, 4, "colors", line);
            n = parse_int(tokens[1], line, "vertex count");
            m = parse_int(tokens[3], line, "arc count");
            color_count = parse_int(tokens[5], line, "color count");
            if (n < 1 || m < 0 || color_count < 1 || n > (1 << 30) || color_count > n)
                throw ParseError(line, "invalid sizes");
            colors.assign(static_cast<std::size_t>(n), -1);
            seen_vertex.assign(static_cast<std::size_t>(n), false);
            stage = Stage::Root;
            break;
        case Stage::Root:
            expect_keyword(tokens, 0, "root", line);
            if (tokens.size() != 2)
                throw ParseError(line, "expected 'root <vertex-id>'");
            root = parse_int(tokens[1], line, "root id");
            if (root < 0 || root >= n)
                throw ParseError(line, "root id out of range");
            stage = Stage::Records;
            break;
        case Stage::Records:
            if (tokens[0] == "v") {
                if (tokens.size() != 3)
                    throw ParseError(line, "expected 'v <id> <color-id>'");
                const auto v = parse_int(tokens[1], line, "vertex id");
                const auto c = parse_int(tokens[2], line, "color id");
                if (v < 0 || v >= n)
                    throw ParseError(line, "vertex id " + std::to_string(v) + " out of range");
                if (c < 0 || c >= color_count)
                    throw ParseError(line, "color id " + std::to_string(c) + " out of range");
                if (seen_vertex[static_cast<std::size_t>(v)])
                    throw ParseError(line, "vertex " + std::to_string(v) + " declared twice");
                seen_vertex[static_cast<std::size_t>(v)] = true;
                colors[static_cast<std::size_t>(v)] = static_cast<ColorId>(c);
            } else if (tokens[0] == "a") {
                if (tokens.size() != 4)
                    throw ParseError(line, "expected 'a <src> <dst> <weight>'");
                const auto s = parse_int(tokens[1], line, "source id");
                const auto d = parse_int(tokens[2], line, "target id");
                const auto w = parse_double(tokens[3], line);
                if (s < 0 || s >= n || d < 0 || d >= n)
                    throw ParseError(line, "arc references a missing vertex");
                if (s == d)
                    throw ParseError(line, "self-loop on vertex " + std::to_string(s));
                const auto key = std::pair{static_cast<VertexId>(s), static_cast<VertexId>(d)};
                if (! arc_keys.insert(key).second)
                    throw ParseError(line, "duplicate arc (" + std::to_string(s) + ", " + std::to_string(d) + ")");
                arcs.push_back({key.first, key.second, w});
            } else {
                throw ParseError(line, "unknown record '" + std::string(tokens[0]) + "'");
            }
            break;
        }
    }

    if (stage != Stage::Records)
        throw ParseError(line + 1, "unexpected end of input");
    for (std::size_t v = 0; v < seen_vertex.size(); ++v)
        if (! seen_vertex[v])
            throw ParseError(line + 1, "vertex " + std::to_string(v) + " never declared");
    if (static_cast<std::int64_t>(arcs.size()) != m)
        throw ParseError(line + 1, "header announces " + std::to_string(m) + " arcs, found "
                                       + std::to_string(arcs.size()));
    return Instance(std::move(colors), std::move(arcs), static_cast<VertexId>(root),
                    static_cast<std::size_t>(color_count));
}

auto parse_instance(std::string_view text) -> Instance
{
    std::istringstream in{std::string(text)};
    return parse_instance(in);
}

auto read_instance_file(const std::string & path) -> Instance
{
    std::ifstream in(path);
    if (! in)
        throw Error("cannot open '" + path + "'");
    return parse_instance(in);
}

auto format_weight(double w) -> std::string
{
    std::array<char, 64> buffer{};
    const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), w);
    return {buffer.data(), ptr};
}

void write_instance(std::ostream & out, const Instance & inst)
{
    out << "mca 1\n";
    out << "n " << inst.vertex_count() << " m " << inst.arc_count() << " colors " << inst.color_count() << '\n';
    out << "root " << inst.root() << '\n';
    for (std::size_t v = 0; v < inst.vertex_count(); ++v)
        out << "v " << v << ' ' << inst.color(static_cast<VertexId>(v)) << '\n';
    for (const auto & a : inst.arcs())
        out << "a " << a.src << ' ' << a.dst << ' ' << format_weight(a.weight) << '\n';
}

void write_instance_file(const std::string & path, const Instance & inst)
{
    std::ofstream out(path);
    if (! out)
        throw Error("cannot write '" + path + "'");
    write_instance(out, inst);
}

void write_solution_text(std::ostream & out, const Solution & sol)
{
    out << "weight " << format_weight(sol.weight) << '\n';
    for (const auto & a : sol.arcs)
        out << "arc " << a.src << ' ' << a.dst << '\n';
}

}
