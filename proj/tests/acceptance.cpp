// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every expected weight comes from the brute-force oracle
// except where an instance is too large for it, in which case the test says so.

#include "mca/dp_colors.hpp"
#include "mca/dp_difficult.hpp"
#include "mca/errors.hpp"
#include "mca/generators.hpp"
#include "mca/hierarchy.hpp"
#include "mca/kernel.hpp"
#include "mca/oracle.hpp"
#include "mca/poly.hpp"
#include "mca/stats.hpp"
#include "mca/treewidth.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace mca;
using Seconds = std::chrono::duration<double>;

struct Outcome
{
    bool passed = true;
    std::string detail;
};

auto elapsed_since(Clock::time_point start) -> double
{
    return Seconds(Clock::now() - start).count();
}

auto ipow(std::uint64_t base, std::uint64_t exp) -> std::uint64_t
{
    std::uint64_t r = 1;
    while (exp-- > 0)
        r *= base;
    return r;
}

/// Join-node consistency is accumulated over every treewidth run in the suite.
struct JoinTally
{
    std::uint64_t checks = 0;
    std::uint64_t violations = 0;
    std::uint64_t runs = 0;
    std::uint64_t internal_errors = 0;

    void absorb(const Counters & c)
    {
        checks += c.get("treewidth.join_checks");
        violations += c.get("treewidth.join_violations");
        ++runs;
    }
};

JoinTally join_tally;

auto treewidth_weight(const Instance & inst, SolveOptions options = {}) -> double
{
    Counters counters;
    options.counters = &counters;
    try {
        const auto sol = solve_treewidth(inst, options);
        join_tally.absorb(counters);
        return verify_solution(inst, sol);
    } catch (const InternalError &) {
        join_tally.absorb(counters);
        ++join_tally.internal_errors;
        throw;
    }
}

auto random_small_instance(std::mt19937_64 & rng, std::uint64_t seed, int max_n, int max_colors) -> Instance
{
    GenParams p;
    p.vertices = std::uniform_int_distribution<int>(2, max_n)(rng);
    p.colors = std::uniform_int_distribution<int>(1, std::min(max_colors, p.vertices))(rng);
    p.density = std::uniform_real_distribution<double>(0.15, 0.7)(rng);
    p.weight_min = -5;
    p.weight_max = 5;
    p.seed = seed;
    if (p.colors >= 3 && rng() % 3 == 0) {
        p.shape = GenShape::Tree;
        p.diamonds = std::uniform_int_distribution<int>(0, std::min(3, p.colors - 2))(rng);
    }
    return gen_random(p);
}

auto oracle_equivalence() -> Outcome
{
    const auto start = Clock::now();
    std::mt19937_64 rng(1001);
    int mismatches = 0;
    std::string first;
    for (int i = 0; i < 500; ++i) {
        const auto inst = random_small_instance(rng, 5000 + static_cast<std::uint64_t>(i), 12, 8);
        const double expected = verify_solution(inst, brute_force_solve(inst));
        const double got[] = {verify_solution(inst, solve_colors_dp(inst)),
                              verify_solution(inst, solve_difficult_dp(inst)), treewidth_weight(inst)};
        const char * names[] = {"colors", "difficult", "treewidth"};
        for (int a = 0; a < 3; ++a)
            if (got[a] != expected) {
                if (mismatches++ == 0)
                    first = "; first: instance " + std::to_string(i) + " " + names[a] + " "
                            + std::to_string(got[a]) + " vs oracle " + std::to_string(expected);
            }
    }
    const double secs = elapsed_since(start);
    std::ostringstream d;
    d << "500 instances, " << mismatches << " mismatches, " << secs << " s (limit 300 s)" << first;
    return {mismatches == 0 && secs < 300.0, d.str()};
}

auto polynomial_case() -> Outcome
{
    std::mt19937_64 rng(2002);
    int mismatches = 0;
    int oracle_checked = 0;
    std::string first;
    for (int i = 0; i < 200; ++i) {
        GenParams p;
        p.shape = GenShape::Tree;
        p.diamonds = 0;
        p.seed = 7000 + static_cast<std::uint64_t>(i);
        if (i % 4 == 0) {
            p.vertices = std::uniform_int_distribution<int>(3, 14)(rng);
            p.colors = std::uniform_int_distribution<int>(2, p.vertices)(rng);
        } else {
            p.vertices = std::uniform_int_distribution<int>(15, 200)(rng);
            p.colors = std::uniform_int_distribution<int>(2, std::min(60, p.vertices))(rng);
        }
        p.density = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
        const auto inst = gen_random(p);
        const double arb = verify_solution(inst, solve_arb_instance(inst));
        const double diff = verify_solution(inst, solve_difficult_dp(inst));
        bool ok = arb == diff;
        if (inst.vertex_count() <= 14) {
            ++oracle_checked;
            ok = ok && arb == verify_solution(inst, brute_force_solve(inst));
        }
        if (! ok && mismatches++ == 0)
            first = "; first: instance " + std::to_string(i);
    }
    std::ostringstream d;
    d << "200 arborescent instances (" << oracle_checked << " also against the oracle), " << mismatches
      << " mismatches" << first;
    return {mismatches == 0, d.str()};
}

struct KernelCase
{
    Instance original;
    KernelResult result;
    double optimum;
    int ell;
};

auto kernel_cases() -> const std::vector<KernelCase> &
{
    static const std::vector<KernelCase> cases = [] {
        std::vector<KernelCase> out;
        std::mt19937_64 rng(3003);
        for (int i = 0; i < 200; ++i) {
            auto inst = random_small_instance(rng, 9000 + static_cast<std::uint64_t>(i), 12, 8);
            const auto sol = brute_force_solve(inst);
            const int ell = static_cast<int>(inst.vertex_count() - sol.vertices.size());
            auto result = kernelize(inst, {ell});
            out.push_back({std::move(inst), std::move(result), sol.weight, ell});
        }
        return out;
    }();
    return cases;
}

auto kernel_weight_preservation() -> Outcome
{
    int mismatches = 0;
    int replay_mismatches = 0;
    std::size_t rule_uses[4] = {0, 0, 0, 0};
    std::string first;
    for (std::size_t i = 0; i < kernel_cases().size(); ++i) {
        const auto & kc = kernel_cases()[i];
        for (const auto & e : kc.result.log)
            ++rule_uses[e.rule];
        const double reduced = verify_solution(kc.result.instance, brute_force_solve(kc.result.instance));
        if (reduced != kc.optimum && mismatches++ == 0)
            first = "; first: instance " + std::to_string(i) + " kernel " + std::to_string(reduced) + " vs "
                    + std::to_string(kc.optimum);
        if (! (replay(kc.original, kc.result.log) == kc.result.instance))
            ++replay_mismatches;
    }
    std::ostringstream d;
    d << "200 instances, " << mismatches << " weight mismatches, " << replay_mismatches
      << " replay mismatches; rule applications 1:" << rule_uses[1] << " 2:" << rule_uses[2] << " 3:" << rule_uses[3]
      << first;
    return {mismatches == 0 && replay_mismatches == 0, d.str()};
}

auto kernel_bounds() -> Outcome
{
    int failures = 0;
    int size_misses = 0;
    std::string first;
    for (std::size_t i = 0; i < kernel_cases().size(); ++i) {
        const auto & kc = kernel_cases()[i];
        const auto report = check_kernel_bounds(kc.result.instance, {kc.result.effective_ell});
        const bool ok = report.passed("irreducible") && report.passed("multiplicity") && report.passed("indegree");
        if (! report.passed("size"))
            ++size_misses;
        if (! ok && failures++ == 0) {
            first = "; first: instance " + std::to_string(i);
            for (const auto & c : report.checks)
                if (! c.passed)
                    first += " [" + c.name + ": " + c.detail + "]";
        }
    }
    std::ostringstream d;
    d << "200 kernels, " << failures << " violate irreducible/multiplicity/indegree (informational: " << size_misses
      << " exceed the K=4 size bound)" << first;
    return {failures == 0, d.str()};
}

/// Smallest number of sets covering the universe, restricted to sets of
/// pairwise distinct colors when the instance is colored; -1 if none.
auto minimum_cover(const SetCoverInstance & sc) -> int
{
    const int p = static_cast<int>(sc.sets.size());
    const std::uint32_t full = (1U << sc.universe) - 1;
    int best = -1;
    for (std::uint32_t mask = 0; mask < (1U << p); ++mask) {
        std::uint32_t covered = 0;
        std::uint64_t colors = 0;
        bool colorful = true;
        for (int s = 0; s < p; ++s) {
            if (! (mask >> s & 1U))
                continue;
            for (int e : sc.sets[static_cast<std::size_t>(s)])
                covered |= 1U << e;
            if (sc.colored()) {
                const auto bit = std::uint64_t{1} << sc.set_colors[static_cast<std::size_t>(s)];
                colorful = colorful && ! (colors & bit);
                colors |= bit;
            }
        }
        const int size = std::popcount(mask);
        if (colorful && covered == full && (best < 0 || size < best))
            best = size;
    }
    return best;
}

auto set_cover_fidelity() -> Outcome
{
    std::mt19937_64 rng(4004);
    int failures = 0;
    int coverable = 0;
    int within_k = 0;
    std::string first;
    for (int i = 0; i < 100; ++i) {
        const int p = std::uniform_int_distribution<int>(1, 6)(rng);
        const int q = std::uniform_int_distribution<int>(2, 6)(rng);
        const int k = std::uniform_int_distribution<int>(1, p)(rng);
        const bool colored = i % 2 == 1;
        const auto sc = gen_set_cover(p, q, k, 11000 + static_cast<std::uint64_t>(i),
                                      colored ? std::uniform_int_distribution<int>(1, p)(rng) : 0);
        bool ok = true;
        std::string error;
        try {
            const auto reduced = colored ? reduce_multicolored_set_cover(sc) : reduce_set_cover(sc);
            const double opt = verify_solution(reduced.instance, brute_force_solve(reduced.instance));
            const int mc = minimum_cover(sc);
            const double pq = static_cast<double>(p) * q;
            // A cover of size exactly k exists iff some cover has size <= k,
            // since adding sets (of unused colors, or any set when uncolored)
            // keeps a cover; we test the optimum against both readings.
            const bool cover_k = mc >= 0 && mc <= k;
            ok = ok && (cover_k == (opt >= reduced.target)) && reduced.target == pq - k;
            if (mc >= 0) {
                ++coverable;
                ok = ok && opt == pq - mc;
            } else {
                ok = ok && opt <= pq - p - 1;
            }
            if (cover_k)
                ++within_k;
            ok = ok && (mc == k) == (opt == reduced.target);
        } catch (const std::exception & e) {
            ok = false;
            error = std::string(" threw: ") + e.what();
        }
        if (! ok && failures++ == 0)
            first = "; first: instance " + std::to_string(i) + error;
    }
    std::ostringstream d;
    d << "100 instances (" << coverable << " coverable, " << within_k << " with a cover of size <= k), " << failures
      << " failures" << first;
    return {failures == 0, d.str()};
}

auto or_composition() -> Outcome
{
    std::mt19937_64 rng(5005);
    int failures = 0;
    std::string first;
    std::uint64_t seed = 13000;
    for (int i = 0; i < 50; ++i) {
        const int t = std::uniform_int_distribution<int>(3, 7)(rng);
        const int parts = std::uniform_int_distribution<int>(2, 4)(rng);
        std::vector<Instance> components;
        double best = 0.0;
        while (static_cast<int>(components.size()) < parts) {
            GenParams p;
            p.colors = t;
            p.vertices = std::uniform_int_distribution<int>(t, 10)(rng);
            p.density = std::uniform_real_distribution<double>(0.2, 0.6)(rng);
            p.seed = seed++;
            auto inst = gen_random(p);
            const double opt = verify_solution(inst, brute_force_solve(inst));
            if (opt <= 0.0)
                continue;
            best = std::max(best, opt);
            components.push_back(std::move(inst));
        }
        const auto composed = or_compose(components);
        const double by_difficult = verify_solution(composed, solve_difficult_dp(composed));
        const double by_colors = verify_solution(composed, solve_colors_dp(composed));
        if ((by_difficult != best || by_colors != best) && failures++ == 0)
            first = "; first: tuple " + std::to_string(i) + " composed " + std::to_string(by_difficult) + "/"
                    + std::to_string(by_colors) + " vs max " + std::to_string(best);
    }
    std::ostringstream d;
    d << "50 tuples, " << failures << " failures" << first;
    return {failures == 0, d.str()};
}

auto difficult_scaling() -> Outcome
{
    GenParams p;
    p.shape = GenShape::Tree;
    p.colors = 24;
    p.vertices = 40;
    p.diamonds = 5;
    p.density = 0.5;
    p.seed = 17;
    const auto inst = gen_random(p);
    const auto s = stats(inst);

    Counters counters;
    SolveOptions fast;
    fast.counters = &counters;
    fast.deadline = Clock::now() + std::chrono::seconds(60);
    auto start = Clock::now();
    bool difficult_done = false;
    try {
        (void)verify_solution(inst, solve_difficult_dp(inst, fast));
        difficult_done = true;
    } catch (const Timeout &) {
    }
    const double difficult_secs = elapsed_since(start);

    SolveOptions slow;
    slow.limits.colors_max = 24;
    slow.deadline = Clock::now() + std::chrono::seconds(60);
    start = Clock::now();
    bool colors_timed_out = false;
    try {
        (void)solve_colors_dp(inst, slow);
    } catch (const Timeout &) {
        colors_timed_out = true;
    }
    const double colors_secs = elapsed_since(start);

    const auto nhs = counters.get("difficult.nhs");
    const auto max_i = counters.get("difficult.max_children");
    const auto n = static_cast<std::uint64_t>(inst.vertex_count());
    const auto split_bound = 2 * n * (max_i + 1) * ipow(3, nhs);
    const auto live_bound = 2 * n * (max_i + 1) * ipow(2, nhs);
    const auto splits = counters.get("difficult.split_visits");
    const auto live = counters.get("difficult.live_entries");

    std::ostringstream d;
    d << "|C|=" << s.colors << " nhs=" << s.nhs << " n=" << s.n << "; difficult " << difficult_secs
      << " s, colors " << (colors_timed_out ? "timed out after " : "finished in ") << colors_secs
      << " s; splits " << splits << " <= " << split_bound << ", live " << live << " <= " << live_bound;
    const bool ok = s.colors == 24 && s.nhs == 5 && difficult_done && difficult_secs < 60.0 && colors_timed_out
                    && splits <= split_bound && live <= live_bound;
    return {ok, d.str()};
}

auto treewidth_scaling() -> Outcome
{
    int checked = 0;
    int failures = 0;
    double worst = 0.0;
    std::string first;
    for (std::uint64_t seed = 100; checked < 6 && seed < 400; ++seed) {
        GenParams p;
        p.shape = GenShape::Tree;
        p.colors = 18;
        p.vertices = 18 + static_cast<int>(seed % 7); // lc between 0 and 6
        p.diamonds = 3;
        p.density = 0.5;
        p.seed = seed;
        const auto inst = gen_random(p);
        const auto s = stats(inst);
        if (s.lc > 6 || s.ht_upper > 3 || inst.vertices_of_color(inst.color(inst.root())).size() != 1)
            continue;
        ++checked;

        Counters counters;
        SolveOptions options;
        options.counters = &counters;
        options.deadline = Clock::now() + std::chrono::seconds(60);
        const auto start = Clock::now();
        bool ok = true;
        double weight = 0.0;
        try {
            weight = verify_solution(inst, solve_treewidth(inst, options));
            join_tally.absorb(counters);
        } catch (const std::exception & e) {
            ok = false;
            if (failures == 0)
                first += std::string("; ") + e.what();
        }
        const double secs = elapsed_since(start);
        worst = std::max(worst, secs);
        const auto w = counters.get("treewidth.width");
        double product = 1.0;
        const auto pruned = prune_unreachable(inst);
        for (std::size_t c = 0; c < inst.color_count(); ++c)
            if (static_cast<ColorId>(c) != inst.color(inst.root()))
                product *= static_cast<double>(
                    std::max<std::size_t>(1, pruned.vertices_of_color(static_cast<ColorId>(c)).size()));
        ok = ok && secs < 60.0 && w <= 3 && counters.get("treewidth.tripartitions_per_bag") <= ipow(3, w + 1)
             && counters.get("treewidth.introduce_terms_per_bag") <= ipow(4, w + 1)
             && static_cast<double>(counters.get("treewidth.selections")) == product
             && product <= std::pow(2.0, static_cast<double>(s.lc));
        // The weight is cross-checked against the difficult DP (n is beyond the oracle).
        ok = ok && weight == verify_solution(inst, solve_difficult_dp(inst));
        if (! ok && failures++ == 0)
            first = "; first: seed " + std::to_string(seed) + " width " + std::to_string(w) + " selections "
                    + std::to_string(counters.get("treewidth.selections")) + first;
    }
    std::ostringstream d;
    d << checked << " instances with lc <= 6 and width <= 3, " << failures << " failures, slowest " << worst << " s"
      << first;
    return {failures == 0 && checked == 6, d.str()};
}

auto join_consistency() -> Outcome
{
    std::ostringstream d;
    d << join_tally.runs << " treewidth runs, " << join_tally.checks << " join entries compared, "
      << join_tally.violations << " violations";
    return {join_tally.violations == 0 && join_tally.internal_errors == 0 && join_tally.checks > 0, d.str()};
}

}

auto main() -> int
{
    const std::pair<const char *, std::function<Outcome()>> criteria[] = {
        {"oracle_equivalence", oracle_equivalence},
        {"polynomial_case", polynomial_case},
        {"kernel_weight_preservation", kernel_weight_preservation},
        {"kernel_structural_bounds", kernel_bounds},
        {"set_cover_fidelity", set_cover_fidelity},
        {"or_composition", or_composition},
        {"difficult_dp_scaling", difficult_scaling},
        {"treewidth_scaling", treewidth_scaling},
        {"join_consistency", join_consistency},
    };
    int failed = 0;
    for (const auto & [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception & e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.passed ? 0 : 1;
        std::printf("%s %s: %s\n", o.passed ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
