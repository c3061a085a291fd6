#pragma once

#include "mca/instance.hpp"
#include "mca/solution.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace mca {

/// Reads the line-oriented `.mca` text format:
///
///     mca 1
///     n <int> m <int> colors <int>
///     root <vertex-id>
///     v <id> <color-id>            (n records, any order)
///     a <src> <dst> <weight>       (m records)
///
/// '#' starts a comment; blank lines are ignored. Throws ParseError with the
/// offending line number, or for dangling ids, duplicate arcs, self-loops and
/// non-finite weights.
[[nodiscard]] auto parse_instance(std::istream & in) -> Instance;
[[nodiscard]] auto parse_instance(std::string_view text) -> Instance;
[[nodiscard]] auto read_instance_file(const std::string & path) -> Instance;

/// Writes the `.mca` format. Weights use the shortest representation that
/// round-trips exactly.
void write_instance(std::ostream & out, const Instance & inst);
void write_instance_file(const std::string & path, const Instance & inst);

/// `weight <w>` followed by one `arc <src> <dst>` line per solution arc.
void write_solution_text(std::ostream & out, const Solution & sol);

/// Shortest round-trip decimal representation of a double.
[[nodiscard]] auto format_weight(double w) -> std::string;

}
