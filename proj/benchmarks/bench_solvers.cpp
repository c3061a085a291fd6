#include "mca/dp_colors.hpp"
#include "mca/dp_difficult.hpp"
#include "mca/generators.hpp"
#include "mca/kernel.hpp"
#include "mca/oracle.hpp"
#include "mca/poly.hpp"
#include "mca/treewidth.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace mca;

auto dense(int n, int colors) -> Instance
{
    GenParams p;
    p.vertices = n;
    p.colors = colors;
    p.density = 0.35;
    p.seed = 7;
    return gen_random(p);
}

/// Tree-shaped hierarchy with `diamonds` difficult colors.
auto tree(int n, int colors, int diamonds) -> Instance
{
    GenParams p;
    p.shape = GenShape::Tree;
    p.vertices = n;
    p.colors = colors;
    p.diamonds = diamonds;
    p.density = 0.5;
    p.seed = 11;
    return gen_random(p);
}

void oracle(benchmark::State & state)
{
    const auto inst = dense(static_cast<int>(state.range(0)), 6);
    for (auto _ : state)
        benchmark::DoNotOptimize(brute_force_solve(inst).weight);
}
BENCHMARK(oracle)->DenseRange(8, 16, 4);

void colors_dp(benchmark::State & state)
{
    const auto c = static_cast<int>(state.range(0));
    const auto inst = dense(2 * c, c);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_colors_dp(inst).weight);
}
BENCHMARK(colors_dp)->DenseRange(6, 14, 2);

void difficult_dp(benchmark::State & state)
{
    const auto inst = tree(40, 24, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_difficult_dp(inst).weight);
}
BENCHMARK(difficult_dp)->DenseRange(0, 10, 2);

void treewidth_dp(benchmark::State & state)
{
    const auto inst = tree(18 + static_cast<int>(state.range(0)), 18, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_treewidth(inst).weight);
}
BENCHMARK(treewidth_dp)->DenseRange(0, 6, 2);

void arborescent(benchmark::State & state)
{
    const auto inst = tree(static_cast<int>(state.range(0)), 60, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_arb_instance(inst).weight);
}
BENCHMARK(arborescent)->RangeMultiplier(4)->Range(64, 4096);

void kernelization(benchmark::State & state)
{
    const auto inst = tree(static_cast<int>(state.range(0)), 30, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernelize(inst, {5}).instance.vertex_count());
}
BENCHMARK(kernelization)->RangeMultiplier(2)->Range(40, 160);

}

BENCHMARK_MAIN();
