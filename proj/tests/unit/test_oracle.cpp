#include "helpers.hpp"

#include "mca/errors.hpp"
#include "mca/generators.hpp"

#include <doctest.h>

using namespace mca;
using mca::test::make;

TEST_CASE("best arborescence on a fixed vertex set")
{
    const auto inst = make({0, 1, 2}, {{0, 1, 2}, {0, 2, -1}, {1, 2, 4}});
    const VertexId only_root[] = {0};
    CHECK(best_arborescence_on_set(inst, only_root) == 0.0);

    // Each non-root vertex takes its heaviest in-arc from inside the set.
    // Checked here against every arc choice for b: 2 + (-1) and 2 + 4.
    const VertexId all[] = {0, 1, 2};
    const auto best = best_arborescence_on_set(inst, all);
    REQUIRE(best);
    CHECK(*best == std::max(2.0 + -1.0, 2.0 + 4.0));

    const auto no_in_arc = make({0, 1, 2}, {{0, 1, 1}});
    const VertexId unreachable[] = {0, 2};
    CHECK_FALSE(best_arborescence_on_set(no_in_arc, unreachable).has_value());
    const VertexId missing_root[] = {1};
    CHECK_THROWS_AS((void)best_arborescence_on_set(inst, missing_root), PreconditionError);
}

TEST_CASE("oracle on small instances")
{
    SUBCASE("single vertex")
    {
        const auto sol = brute_force_solve(make({0}, {}));
        CHECK(sol.weight == 0.0);
        CHECK(sol.arcs.empty());
    }
    SUBCASE("negative arc is dominated by the root alone")
    {
        CHECK(brute_force_solve(make({0, 1}, {{0, 1, -5}})).weight == 0.0);
    }
    SUBCASE("colorfulness forces a choice between same-colored vertices")
    {
        // r(c0) -> a(c1) -1, r -> b(c1) -1, a -> z(c2) 2, b -> z 3.
        const auto inst = make({0, 1, 1, 2}, {{0, 1, -1}, {0, 2, -1}, {1, 3, 2}, {2, 3, 3}});
        const auto sol = brute_force_solve(inst);
        CHECK(verify_solution(inst, sol) == sol.weight);
        // The chosen vertex set is {r, b, z}.
        CHECK(sol.vertices == std::vector<VertexId>{0, 2, 3});
    }
    SUBCASE("guard")
    {
        SolveOptions options;
        options.limits.brute_max_vertices = 3;
        CHECK_THROWS_AS((void)brute_force_solve(make({0, 1, 2, 3}, {}), options), GuardExceeded);
    }
    SUBCASE("deadline")
    {
        SolveOptions options;
        options.deadline = Clock::now() - std::chrono::seconds(1);
        GenParams p;
        p.vertices = 20;
        p.colors = 10;
        CHECK_THROWS_AS((void)brute_force_solve(gen_random(p), options), Timeout);
    }
}

TEST_CASE("oracle optimum is never negative and always verifies")
{
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        GenParams p;
        p.vertices = 9;
        p.colors = 5;
        p.weight_min = -9;
        p.weight_max = 2;
        p.seed = seed;
        const auto inst = gen_random(p);
        const auto sol = brute_force_solve(inst);
        CHECK(sol.weight >= 0.0);
        CHECK(verify_solution(inst, sol) == sol.weight);
    }
}
