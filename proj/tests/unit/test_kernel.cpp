#include "helpers.hpp"

#include "mca/errors.hpp"
#include "mca/generators.hpp"
#include "mca/kernel.hpp"

#include <doctest.h>

using namespace mca;
using mca::test::make;
using mca::test::oracle_weight;

TEST_CASE("maximum-weight path")
{
    const auto inst = make({0, 1, 2, 3}, {{0, 1, 2}, {1, 3, 3}, {0, 2, 1}, {2, 3, 1}});
    CHECK(max_weight_path(inst, 0, 0) == 0.0);
    CHECK(max_weight_path(inst, 0, 3) == std::max(2.0 + 3.0, 1.0 + 1.0));
    CHECK_FALSE(max_weight_path(inst, 3, 0).has_value());
}

TEST_CASE("rule 1 folds an autonomous subtree into the arcs above it")
{
    SUBCASE("path")
    {
        // r(c0) -> v(c1) 1 -> u(c2) 4.
        const auto inst = make({0, 1, 2}, {{0, 1, 1}, {1, 2, 4}});
        const auto step = apply_rule_autonomous(prune_unreachable(inst));
        REQUIRE(step);
        CHECK(step->entry.rule == 1);
        CHECK(step->entry.colors == std::vector<ColorId>{1});
        CHECK(step->instance.vertex_count() == 2);
        CHECK(step->instance.arc(0).weight == 5.0);
        CHECK(oracle_weight(step->instance) == oracle_weight(inst));
    }
    SUBCASE("every in-arc of a subtree root gets the same increment")
    {
        // r -> a(c1), r -> b(c2), a -> v(c3), b -> v, v -> u(c4) 6.
        const auto inst = make({0, 1, 2, 3, 4}, {{0, 1, 1}, {0, 2, 1}, {1, 3, 2}, {2, 3, -1}, {3, 4, 6}});
        const auto step = apply_rule_autonomous(prune_unreachable(inst));
        REQUIRE(step);
        CHECK(step->entry.colors == std::vector<ColorId>{3});
        const auto & out = step->instance;
        CHECK(out.arc(*out.find_arc(1, 3)).weight == 8.0);
        CHECK(out.arc(*out.find_arc(2, 3)).weight == 5.0);
        CHECK(oracle_weight(out) == oracle_weight(inst));
    }
    SUBCASE("negative subtree adds nothing but is still removed")
    {
        const auto inst = make({0, 1, 2}, {{0, 1, 1}, {1, 2, -3}});
        const auto step = apply_rule_autonomous(prune_unreachable(inst));
        REQUIRE(step);
        CHECK(step->instance.vertex_count() == 2);
        CHECK(step->instance.arc(0).weight == 1.0);
        CHECK(oracle_weight(step->instance) == oracle_weight(inst));
    }
}

TEST_CASE("rule 2 shortcuts a chain of unique in-neighbors")
{
    SUBCASE("single middle vertex")
    {
        // r(c0) -> a(c1) 0, a -> b(c2) 2, b -> d(c3) 3, r -> e(c4) 0, e -> a 0 keeps c1 off Rule 1.
        const auto inst = make({0, 1, 2, 3, 4}, {{0, 1, 0}, {1, 2, 2}, {2, 3, 3}, {0, 4, 0}, {4, 1, 0}});
        const auto step = apply_rule_chain(prune_unreachable(inst));
        REQUIRE(step);
        const auto & e = step->entry;
        CHECK(e.rule == 2);
        CHECK(e.colors == std::vector<ColorId>{1, 2, 3});
        CHECK(e.vertices_removed == std::vector<VertexId>{2});
        CHECK(e.budget_increase == 1);
        CHECK(std::ranges::find(e.arcs_added, Arc{1, 3, 5.0}) != e.arcs_added.end());
        CHECK(std::ranges::find(e.arcs_added, Arc{1, 5, 2.0}) != e.arcs_added.end());
        CHECK(oracle_weight(step->instance) == oracle_weight(inst));
    }
    SUBCASE("two middle vertices take the best path")
    {
        // a(c1) -> b(c2) 2, a -> b'(c2) 7, b -> d(c3) 3, b' -> d 1; e(c4) again enters a.
        const auto inst = make({0, 1, 2, 2, 3, 4},
                               {{0, 1, 0}, {1, 2, 2}, {1, 3, 7}, {2, 4, 3}, {3, 4, 1}, {0, 5, 0}, {5, 1, 0}});
        const auto pruned = prune_unreachable(inst);
        const auto step = apply_rule_chain(pruned);
        REQUIRE(step);
        const auto & e = step->entry;
        CHECK(e.colors == std::vector<ColorId>{1, 2, 3});
        CHECK(e.budget_increase == 0);
        CHECK(std::ranges::find(e.arcs_added, Arc{1, 4, std::max(2.0 + 3.0, 7.0 + 1.0)}) != e.arcs_added.end());
        CHECK(std::ranges::find(e.arcs_added, Arc{1, 6, 7.0}) != e.arcs_added.end());
        CHECK(oracle_weight(step->instance) == oracle_weight(inst));
    }
}

TEST_CASE("rule 3 keeps the heaviest unique-color in-arcs")
{
    // r -> u1..u5 (unique colors) and u_i -> v with weights 9, 7, 5, 3, 1.
    std::vector<ColorId> colors{0, 1, 2, 3, 4, 5, 6};
    std::vector<Arc> arcs;
    const double weights[] = {9, 7, 5, 3, 1};
    for (VertexId u = 1; u <= 5; ++u) {
        arcs.push_back({0, u, 0});
        arcs.push_back({u, 6, weights[u - 1]});
    }
    const auto inst = make(colors, arcs);
    const auto pruned = prune_unreachable(inst);

    const auto step = apply_rule_unique_inarcs(pruned, {1});
    REQUIRE(step);
    CHECK(step->entry.arcs_removed == std::vector<std::pair<VertexId, VertexId>>{{3, 6}, {4, 6}, {5, 6}});
    CHECK(step->instance.in_arcs(6).size() == 2);

    // Exactly ell + 1 unique-color in-arcs: not applicable.
    CHECK_FALSE(apply_rule_unique_inarcs(step->instance, {1}));
    CHECK_FALSE(apply_rule_unique_inarcs(pruned, {4}));
}

TEST_CASE("rule 3 ignores in-neighbors of repeated colors")
{
    // Three in-neighbors of v share color 1, so none of them is unique.
    const auto inst = make({0, 1, 1, 1, 2}, {{0, 1, 0}, {0, 2, 0}, {0, 3, 0}, {1, 4, 1}, {2, 4, 2}, {3, 4, 3}});
    CHECK_FALSE(apply_rule_unique_inarcs(prune_unreachable(inst), {0}));
}

TEST_CASE("kernelization")
{
    SUBCASE("arborescent hierarchy collapses to the root's children")
    {
        GenParams p;
        p.shape = GenShape::Tree;
        p.vertices = 14;
        p.colors = 8;
        p.seed = 4;
        const auto inst = gen_random(p);
        const auto result = kernelize(inst, {static_cast<int>(inst.vertex_count())});
        CHECK(oracle_weight(result.instance) == oracle_weight(inst));
        CHECK(result.instance.vertex_count() <= inst.vertex_count());
        CHECK(check_kernel_bounds(result.instance, {result.effective_ell}).passed("irreducible"));
    }
    SUBCASE("irreducible instance is returned unchanged")
    {
        // r -> a(c1), r -> b(c2), a -> z(c3), b -> z: Rule 1 has no color with |H+| >= 2
        // except c0 (excluded) and c1/c2, whose H+ contains the difficult c3.
        const auto inst = make({0, 1, 2, 3}, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}});
        const auto result = kernelize(inst, {3});
        CHECK(result.log.empty());
        CHECK(result.instance == inst);
    }
    SUBCASE("negative budget is rejected")
    {
        CHECK_THROWS_AS((void)kernelize(make({0}, {}), {-1}), PreconditionError);
    }
    SUBCASE("random instances keep their optimum and replay exactly")
    {
        for (std::uint64_t seed = 1; seed <= 60; ++seed) {
            GenParams p;
            p.vertices = 6 + static_cast<int>(seed % 7);
            p.colors = std::min(3 + static_cast<int>(seed % 5), p.vertices);
            p.seed = seed;
            if (seed % 2 == 0) {
                p.shape = GenShape::Tree;
                p.diamonds = std::min(1 + static_cast<int>(seed % 3), p.colors - 2);
            }
            const auto inst = gen_random(p);
            const auto sol = brute_force_solve(inst);
            const int ell = static_cast<int>(inst.vertex_count() - sol.vertices.size());
            const auto result = kernelize(inst, {ell});
            CAPTURE(seed);
            CHECK(oracle_weight(result.instance) == sol.weight);
            CHECK(replay(inst, result.log) == result.instance);
            const auto report = check_kernel_bounds(result.instance, {result.effective_ell});
            CHECK(report.passed("irreducible"));
            CHECK(report.passed("multiplicity"));
            CHECK(report.passed("indegree"));
        }
    }
}

TEST_CASE("bound checks")
{
    SUBCASE("a color of multiplicity ell + 2 fails the multiplicity check")
    {
        const auto inst = make({0, 1, 1, 1}, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
        const auto report = check_kernel_bounds(inst, {1});
        CHECK_FALSE(report.passed("multiplicity"));
        CHECK_FALSE(report.all_passed());
    }
    SUBCASE("single root passes everything")
    {
        const auto report = check_kernel_bounds(make({0}, {}), {0});
        CHECK(report.all_passed());
    }
    SUBCASE("unknown check name")
    {
        CHECK_THROWS_AS((void)check_kernel_bounds(make({0}, {}), {0}).passed("nope"), PreconditionError);
    }
}
