#include "cli.hpp"

#include "mca/dp_colors.hpp"
#include "mca/dp_difficult.hpp"
#include "mca/errors.hpp"
#include "mca/io.hpp"
#include "mca/oracle.hpp"
#include "mca/poly.hpp"
#include "mca/treewidth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mca::cli {

using nlohmann::json;

auto algo_name(Algo a) -> std::string_view
{
    switch (a) {
    case Algo::Auto: return "auto";
    case Algo::Brute: return "brute";
    case Algo::Colors: return "colors";
    case Algo::Difficult: return "difficult";
    case Algo::Treewidth: return "treewidth";
    case Algo::ArbHier: return "arbhier";
    }
    return "?";
}

auto parse_algo(std::string_view name) -> Algo
{
    for (auto a : {Algo::Auto, Algo::Brute, Algo::Colors, Algo::Difficult, Algo::Treewidth, Algo::ArbHier})
        if (algo_name(a) == name)
            return a;
    throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

auto select_algorithm(const Stats & s, const Limits & limits) -> Algo
{
    if (s.is_arb_hierarchy)
        return Algo::ArbHier;

    // Costs in log2 so that large parameters cannot overflow.
    const double log3 = std::log2(3.0);
    const auto lg = [](double x) { return std::log2(std::max(x, 1.0)); };
    struct Candidate
    {
        Algo algo;
        bool allowed;
        double cost;
    };
    const Candidate candidates[] = {
        {Algo::Difficult, s.nhs <= static_cast<std::size_t>(limits.difficult_max),
         log3 * static_cast<double>(s.nhs) + lg(static_cast<double>(s.n)) + lg(static_cast<double>(s.max_children + 1))},
        {Algo::Colors, s.colors <= static_cast<std::size_t>(limits.colors_max),
         log3 * static_cast<double>(s.colors) + lg(static_cast<double>(s.m))},
        {Algo::Treewidth, s.lc <= limits.treewidth_max_lc && s.ht_upper <= limits.treewidth_max_width,
         static_cast<double>(s.lc) + 2.0 * (s.ht_upper + 1) + lg(static_cast<double>(s.colors))},
        {Algo::Brute, s.n <= static_cast<std::size_t>(limits.brute_max_vertices),
         static_cast<double>(s.n) + lg(static_cast<double>(s.m))},
    };
    const Candidate * best = nullptr;
    for (const auto & c : candidates)
        if (c.allowed && (! best || c.cost < best->cost - 1e-12))
            best = &c;
    if (! best)
        throw GuardExceeded("every algorithm exceeds its size guard; pick one explicitly with --algo");
    return best->algo;
}

auto run_algorithm(Algo algo, const Instance & inst, const SolveOptions & options) -> Solution
{
    switch (algo) {
    case Algo::Auto: return run_algorithm(select_algorithm(stats(inst), options.limits), inst, options);
    case Algo::Brute: return brute_force_solve(inst, options);
    case Algo::Colors: return solve_colors_dp(inst, options);
    case Algo::Difficult: return solve_difficult_dp(inst, options);
    case Algo::Treewidth: return solve_treewidth(inst, options);
    case Algo::ArbHier: return solve_arb_instance(inst, options);
    }
    throw std::logic_error("unreachable");
}

auto to_json(const Solution & sol) -> json
{
    json arcs = json::array();
    for (const auto & a : sol.arcs)
        arcs.push_back({{"src", a.src}, {"dst", a.dst}, {"weight", a.weight}});
    return {{"weight", sol.weight}, {"arcs", arcs}, {"vertices", sol.vertices}};
}

auto to_json(const Counters & counters) -> json
{
    json out = json::object();
    for (const auto & [key, value] : counters.values())
        out[key] = value;
    return out;
}

auto to_json(const Stats & s) -> json
{
    return {{"n", s.n},
            {"m", s.m},
            {"colors", s.colors},
            {"nhs", s.nhs},
            {"lc", s.lc},
            {"ht_upper", s.ht_upper},
            {"fully_colorful_count", s.fully_colorful_count},
            {"is_arb_hierarchy", s.is_arb_hierarchy},
            {"max_children", s.max_children}};
}

auto to_json(const ReductionEntry & e) -> json
{
    json details = {{"colors", e.colors}, {"vertices_removed", e.vertices_removed}};
    if (! e.subtree_weights.empty()) {
        json tv = json::array();
        for (const auto & [v, w] : e.subtree_weights)
            tv.push_back({{"vertex", v}, {"weight", w}});
        details["subtree_weights"] = tv;
    }
    if (e.new_vertex_color)
        details["new_vertex_color"] = *e.new_vertex_color;
    if (! e.arcs_added.empty()) {
        json added = json::array();
        for (const auto & a : e.arcs_added)
            added.push_back({{"src", a.src}, {"dst", a.dst}, {"weight", a.weight}});
        details["arcs_added"] = added;
    }
    if (! e.arcs_removed.empty()) {
        json removed = json::array();
        for (const auto & [s, d] : e.arcs_removed)
            removed.push_back({{"src", s}, {"dst", d}});
        details["arcs_removed"] = removed;
    }
    if (e.budget_increase)
        details["budget_increase"] = e.budget_increase;
    return {{"rule", e.rule}, {"details", details}};
}

auto to_json(const ReductionLog & log) -> json
{
    json out = json::array();
    for (const auto & e : log)
        out.push_back(to_json(e));
    return out;
}

auto run_bench(const std::filesystem::path & dir, const std::vector<Algo> & algos,
               std::chrono::duration<double> timeout) -> BenchSummary
{
    namespace fs = std::filesystem;
    BenchSummary summary;
    std::vector<fs::path> files;
    for (const auto & entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".mca")
            files.push_back(entry.path());
    std::ranges::sort(files);

    for (const auto & file : files) {
        const auto name = file.filename().string();
        std::optional<Instance> inst;
        try {
            inst = read_instance_file(file.string());
            require_valid(*inst);
        } catch (const std::exception & e) {
            summary.unreadable.push_back(name + ": " + e.what());
            continue;
        }

        const auto first = summary.records.size();
        std::optional<double> oracle;
        for (auto algo : algos) {
            BenchRecord rec;
            rec.instance = name;
            rec.algorithm = algo;
            SolveOptions options;
            options.counters = &rec.counters;
            const auto start = Clock::now();
            options.deadline = start + std::chrono::duration_cast<Clock::duration>(timeout);
            try {
                const auto sol = run_algorithm(algo, *inst, options);
                rec.weight = verify_solution(*inst, sol);
                rec.status = "ok";
            } catch (const Timeout & e) {
                rec.status = "timeout";
                rec.message = e.what();
            } catch (const GuardExceeded & e) {
                rec.status = "guard";
                rec.message = e.what();
            } catch (const std::exception & e) {
                rec.status = "error";
                rec.message = e.what();
            }
            rec.seconds = std::chrono::duration<double>(Clock::now() - start).count();
            if (algo == Algo::Brute && rec.weight)
                oracle = rec.weight;
            summary.records.push_back(std::move(rec));
        }

        bool disagree = false;
        std::optional<double> reference;
        for (auto i = first; i < summary.records.size(); ++i) {
            auto & rec = summary.records[i];
            if (! rec.weight)
                continue;
            if (oracle)
                rec.agrees_with_oracle = std::abs(*rec.weight - *oracle) <= 1e-9;
            if (! reference)
                reference = rec.weight;
            else if (std::abs(*rec.weight - *reference) > 1e-9)
                disagree = true;
        }
        if (disagree)
            summary.disagreements.push_back(name);
    }
    return summary;
}

auto bench_csv(const BenchSummary & summary) -> std::string
{
    std::ostringstream out;
    out << "instance,algorithm,status,seconds,weight,agrees_with_oracle\n";
    for (const auto & r : summary.records) {
        out << r.instance << ',' << algo_name(r.algorithm) << ',' << r.status << ',' << r.seconds << ',';
        if (r.weight)
            out << format_weight(*r.weight);
        out << ',';
        if (r.agrees_with_oracle)
            out << (*r.agrees_with_oracle ? "true" : "false");
        out << '\n';
    }
    return out.str();
}

auto to_json(const BenchSummary & summary) -> json
{
    json records = json::array();
    for (const auto & r : summary.records) {
        json rec = {{"instance", r.instance},
                    {"algorithm", algo_name(r.algorithm)},
                    {"status", r.status},
                    {"seconds", r.seconds},
                    {"counters", to_json(r.counters)}};
        rec["weight"] = r.weight ? json(*r.weight) : json(nullptr);
        rec["agrees_with_oracle"] = r.agrees_with_oracle ? json(*r.agrees_with_oracle) : json(nullptr);
        if (! r.message.empty())
            rec["message"] = r.message;
        records.push_back(rec);
    }
    return {{"records", records}, {"disagreements", summary.disagreements}, {"unreadable", summary.unreadable}};
}

}
