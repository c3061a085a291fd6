#include "helpers.hpp"

#include "mca/dp_colors.hpp"
#include "mca/dp_difficult.hpp"
#include "mca/errors.hpp"
#include "mca/generators.hpp"
#include "mca/poly.hpp"

#include <doctest.h>

using namespace mca;
using mca::test::make;
using mca::test::oracle_weight;

namespace {

auto diamond_instance() -> Instance
{
    // r(c0) -> a(c1) 1, r -> b(c2) 1, a -> z(c3) 5, b -> z'(c3) 2.
    return make({0, 1, 2, 3, 3}, {{0, 1, 1}, {0, 2, 1}, {1, 3, 5}, {2, 4, 2}});
}

}

TEST_CASE("color-subset DP")
{
    CHECK(solve_colors_dp(make({0}, {})).weight == 0.0);

    const auto two = make({0, 1, 2}, {{0, 1, 3}, {0, 2, 2}});
    CHECK(verify_solution(two, solve_colors_dp(two)) == oracle_weight(two));

    const auto diamond = diamond_instance();
    CHECK(verify_solution(diamond, solve_colors_dp(diamond)) == oracle_weight(diamond));

    SolveOptions options;
    options.limits.colors_max = 2;
    CHECK_THROWS_AS((void)solve_colors_dp(two, options), GuardExceeded);

    Counters counters;
    options = {};
    options.counters = &counters;
    (void)solve_colors_dp(diamond, options);
    CHECK(counters.get("colors.table_entries") > 0);
}

TEST_CASE("difficult-color DP")
{
    SUBCASE("single vertex")
    {
        CHECK(solve_difficult_dp(make({0}, {})).weight == 0.0);
    }
    SUBCASE("arborescent hierarchy has only the empty difficult subset")
    {
        const auto inst = make({0, 1, 2, 2}, {{0, 1, 2}, {1, 2, 3}, {1, 3, 4}});
        Counters counters;
        SolveOptions options;
        options.counters = &counters;
        const auto w = verify_solution(inst, solve_difficult_dp(inst, options));
        CHECK(w == verify_solution(inst, solve_arb_instance(inst)));
        CHECK(counters.get("difficult.nhs") == 0);
    }
    SUBCASE("diamond: the shared color goes to one branch")
    {
        const auto inst = diamond_instance();
        Counters counters;
        SolveOptions options;
        options.counters = &counters;
        const auto sol = solve_difficult_dp(inst, options);
        CHECK(verify_solution(inst, sol) == oracle_weight(inst));
        CHECK(counters.get("difficult.nhs") == 1);
        CHECK(counters.get("difficult.max_children") == 2);
    }
    SUBCASE("guard")
    {
        SolveOptions options;
        options.limits.difficult_max = 0;
        CHECK_THROWS_AS((void)solve_difficult_dp(diamond_instance(), options), GuardExceeded);
    }
}

TEST_CASE("both DPs agree with the oracle on random instances")
{
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        GenParams p;
        p.vertices = 3 + static_cast<int>(seed % 10);
        p.colors = 1 + static_cast<int>(seed % 7);
        p.colors = std::min(p.colors, p.vertices);
        p.density = 0.2 + 0.1 * static_cast<double>(seed % 6);
        p.seed = seed;
        if (seed % 3 == 0 && p.colors >= 3) {
            p.shape = GenShape::Tree;
            p.diamonds = std::min(2, p.colors - 2);
        }
        const auto inst = gen_random(p);
        const auto expected = oracle_weight(inst);
        CAPTURE(seed);
        CHECK(verify_solution(inst, solve_colors_dp(inst)) == expected);
        CHECK(verify_solution(inst, solve_difficult_dp(inst)) == expected);
    }
}

TEST_CASE("fractional weights")
{
    const auto inst = make({0, 1, 2, 2, 3}, {{0, 1, 0.25}, {0, 2, -0.5}, {1, 3, 1.75}, {2, 4, 3.5}, {3, 4, 0.125}});
    const auto expected = oracle_weight(inst);
    CHECK(verify_solution(inst, solve_colors_dp(inst)) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(verify_solution(inst, solve_difficult_dp(inst)) == doctest::Approx(expected).epsilon(1e-12));
}
