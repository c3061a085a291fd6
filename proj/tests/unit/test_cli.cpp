#include "helpers.hpp"

#include "cli/cli.hpp"
#include "mca/errors.hpp"
#include "mca/generators.hpp"
#include "mca/io.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

using namespace mca;
using namespace mca::cli;

namespace {

struct TempDir
{
    std::filesystem::path path;

    explicit TempDir(const std::string & name) :
        path(std::filesystem::temp_directory_path() / name)
    {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    TempDir(const TempDir &) = delete;
    auto operator=(const TempDir &) -> TempDir & = delete;
};

}

TEST_CASE("algorithm names")
{
    for (auto a : {Algo::Auto, Algo::Brute, Algo::Colors, Algo::Difficult, Algo::Treewidth, Algo::ArbHier})
        CHECK(parse_algo(algo_name(a)) == a);
    CHECK_THROWS_AS((void)parse_algo("fastest"), std::invalid_argument);
}

TEST_CASE("automatic algorithm selection")
{
    SUBCASE("arborescent hierarchy")
    {
        Stats s;
        s.is_arb_hierarchy = true;
        s.nhs = 0;
        CHECK(select_algorithm(s, {}) == Algo::ArbHier);
    }
    SUBCASE("colorful instance with many difficult colors and a thin hierarchy")
    {
        GenParams p;
        p.shape = GenShape::Tree;
        p.vertices = 30;
        p.colors = 30;
        p.diamonds = 12;
        p.seed = 2;
        const auto s = stats(gen_random(p));
        REQUIRE(s.lc == 0);
        REQUIRE(s.nhs == 12);
        CAPTURE(s.ht_upper);
        CHECK(select_algorithm(s, {}) == Algo::Treewidth);
    }
    SUBCASE("few difficult colors")
    {
        GenParams p;
        p.shape = GenShape::Tree;
        p.vertices = 40;
        p.colors = 20;
        p.diamonds = 2;
        const auto s = stats(gen_random(p));
        CHECK(select_algorithm(s, {}) == Algo::Difficult);
    }
    SUBCASE("every guard exceeded")
    {
        Stats s;
        s.n = 100;
        s.m = 500;
        s.colors = 60;
        s.nhs = 40;
        s.lc = 40;
        s.ht_upper = 20;
        CHECK_THROWS_AS((void)select_algorithm(s, {}), GuardExceeded);
    }
}

TEST_CASE("automatic solving agrees with the oracle")
{
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        GenParams p;
        p.vertices = 10;
        p.colors = 5;
        p.seed = seed;
        const auto inst = gen_random(p);
        CHECK(verify_solution(inst, run_algorithm(Algo::Auto, inst, {})) == mca::test::oracle_weight(inst));
    }
}

TEST_CASE("JSON output")
{
    const auto inst = mca::test::make({0, 1}, {{0, 1, 2.5}});
    const auto sol = brute_force_solve(inst);
    const auto j = to_json(sol);
    CHECK(j["weight"].get<double>() == 2.5);
    CHECK(j["arcs"].size() == 1);

    const auto result = kernelize(mca::test::make({0, 1, 2}, {{0, 1, 1}, {1, 2, 4}}), {0});
    const auto log = to_json(result.log);
    REQUIRE(log.size() == 1);
    CHECK(log[0]["rule"] == 1);
    CHECK(log[0]["details"].contains("subtree_weights"));
}

TEST_CASE("benchmark harness")
{
    SUBCASE("empty directory")
    {
        TempDir dir("mca_bench_empty");
        const auto summary = run_bench(dir.path, {Algo::Brute, Algo::Difficult}, std::chrono::seconds(5));
        CHECK(summary.records.empty());
        CHECK(summary.disagreements.empty());
    }
    SUBCASE("tiny corpus, all algorithms")
    {
        TempDir dir("mca_bench_tiny");
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            GenParams p;
            p.vertices = 8;
            p.colors = 5;
            p.seed = seed;
            write_instance_file((dir.path / ("i" + std::to_string(seed) + ".mca")).string(), gen_random(p));
        }
        std::ofstream(dir.path / "broken.mca") << "not an instance\n";
        const std::vector<Algo> algos{Algo::Brute, Algo::Colors, Algo::Difficult, Algo::Treewidth};
        const auto summary = run_bench(dir.path, algos, std::chrono::seconds(30));
        CHECK(summary.records.size() == 40);
        CHECK(summary.disagreements.empty());
        CHECK(summary.unreadable.size() == 1);
        for (const auto & r : summary.records) {
            CHECK(r.status == "ok");
            REQUIRE(r.agrees_with_oracle.has_value());
            CHECK(*r.agrees_with_oracle);
        }
        const auto csv = bench_csv(summary);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 41);
        CHECK(to_json(summary)["records"].size() == 40);
    }
    SUBCASE("without the oracle no agreement flag is set")
    {
        TempDir dir("mca_bench_no_oracle");
        GenParams p;
        write_instance_file((dir.path / "a.mca").string(), gen_random(p));
        const auto summary = run_bench(dir.path, {Algo::Difficult}, std::chrono::seconds(5));
        REQUIRE(summary.records.size() == 1);
        CHECK_FALSE(summary.records[0].agrees_with_oracle.has_value());
    }
}
