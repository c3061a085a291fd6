#pragma once

#include "mca/errors.hpp"
#include "mca/instance.hpp"

#include <string>
#include <vector>

namespace mca {

/// A colorful arborescence rooted at the instance root.
struct Solution
{
    std::vector<Arc> arcs;
    std::vector<VertexId> vertices;
    double weight = 0.0;
};

/// Builds a Solution from an arc set: vertices are the root plus every arc
/// head, weight is the arc-weight sum. Arcs are sorted by (src, dst).
[[nodiscard]] auto make_solution(VertexId root, std::vector<Arc> arcs) -> Solution;

enum class SolutionProblem
{
    UnknownArc,
    WrongArcWeight,
    MissingRoot,
    VertexSetMismatch,
    NotColorful,
    NotArborescence,
    WeightMismatch,
};

class InvalidSolution : public Error
{
public:
    InvalidSolution(SolutionProblem problem, const std::string & message) :
        Error(message),
        _problem(problem)
    {
    }

    [[nodiscard]] auto problem() const noexcept -> SolutionProblem { return _problem; }

private:
    SolutionProblem _problem;
};

/// Checks that sol is a colorful arborescence of inst rooted at its root, and
/// that its recorded weight matches (absolute tolerance 1e-9). Returns the
/// recomputed weight; throws InvalidSolution naming the first violated property.
auto verify_solution(const Instance & inst, const Solution & sol) -> double;

}
