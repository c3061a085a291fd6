#pragma once

#include "mca/instance.hpp"
#include "mca/kernel.hpp"
#include "mca/options.hpp"
#include "mca/solution.hpp"
#include "mca/stats.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mca::cli {

enum class Algo
{
    Auto,
    Brute,
    Colors,
    Difficult,
    Treewidth,
    ArbHier,
};

[[nodiscard]] auto algo_name(Algo a) -> std::string_view;
/// Throws std::invalid_argument for unknown names.
[[nodiscard]] auto parse_algo(std::string_view name) -> Algo;

/// Exit codes shared by every subcommand.
enum ExitCode : int
{
    exit_ok = 0,
    exit_usage = 1,
    exit_invalid_instance = 2,
    exit_not_applicable = 3,
    exit_disagreement = 4,
};

/// Cheapest concrete algorithm for an instance with these statistics:
/// arbhier when the hierarchy is an arborescence, otherwise the smallest of
///   difficult  3^nhs * n * (max_children + 1)
///   colors     3^|C| * m
///   treewidth  2^lc * 4^(ht + 1) * |C|
///   brute      2^n * m
/// among those within their guard. Ties go to difficult. Throws
/// GuardExceeded when every guard is exceeded.
[[nodiscard]] auto select_algorithm(const Stats & s, const Limits & limits) -> Algo;

/// Runs one concrete algorithm (Auto resolves through select_algorithm).
[[nodiscard]] auto run_algorithm(Algo algo, const Instance & inst, const SolveOptions & options) -> Solution;

[[nodiscard]] auto to_json(const Solution & sol) -> nlohmann::json;
[[nodiscard]] auto to_json(const Counters & counters) -> nlohmann::json;
[[nodiscard]] auto to_json(const Stats & s) -> nlohmann::json;
[[nodiscard]] auto to_json(const ReductionEntry & entry) -> nlohmann::json;
[[nodiscard]] auto to_json(const ReductionLog & log) -> nlohmann::json;

struct BenchRecord
{
    std::string instance;
    Algo algorithm = Algo::Brute;
    double seconds = 0.0;
    /// "ok", "timeout", "guard" or "error".
    std::string status;
    std::optional<double> weight;
    Counters counters;
    /// Set only when the oracle finished on the same instance.
    std::optional<bool> agrees_with_oracle;
    std::string message;
};

struct BenchSummary
{
    std::vector<BenchRecord> records;
    /// Instances on which two finished algorithms returned different weights.
    std::vector<std::string> disagreements;
    std::vector<std::string> unreadable;
};

/// Runs every algorithm on every `.mca` file of `dir` (sorted by name) with
/// a cooperative wall-clock timeout per run, and cross-checks the weights of
/// finished runs (absolute tolerance 1e-9).
[[nodiscard]] auto run_bench(const std::filesystem::path & dir, const std::vector<Algo> & algos,
                             std::chrono::duration<double> timeout) -> BenchSummary;

[[nodiscard]] auto bench_csv(const BenchSummary & summary) -> std::string;
[[nodiscard]] auto to_json(const BenchSummary & summary) -> nlohmann::json;

}
