#include "cli/cli.hpp"

#include "mca/errors.hpp"
#include "mca/generators.hpp"
#include "mca/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace mca;
using namespace mca::cli;
using nlohmann::json;

void write_text_file(const std::string & path, const std::string & text)
{
    std::ofstream out(path);
    if (! out)
        throw Error("cannot write '" + path + "'");
    out << text;
}

auto load(const std::string & path) -> Instance
{
    auto inst = read_instance_file(path);
    require_valid(inst);
    return inst;
}

void print_solution(const Solution & sol, Algo algo, const Counters & counters, bool as_json, bool with_counters)
{
    if (as_json) {
        auto out = to_json(sol);
        out["algorithm"] = algo_name(algo);
        if (with_counters)
            out["counters"] = to_json(counters);
        std::cout << out.dump(2) << '\n';
        return;
    }
    std::cout << "algorithm " << algo_name(algo) << '\n';
    write_solution_text(std::cout, sol);
    if (with_counters)
        std::cout << to_json(counters).dump(2) << '\n';
}

/// Writes a generated instance to `path` (stdout when empty) and, when a
/// target is known and a file was written, a `<path>.json` sidecar.
void emit_instance(const Instance & inst, const std::string & path, std::optional<double> target, json meta)
{
    if (path.empty()) {
        write_instance(std::cout, inst);
        return;
    }
    write_instance_file(path, inst);
    if (target)
        meta["target"] = *target;
    meta["instance"] = path;
    write_text_file(path + ".json", meta.dump(2) + "\n");
}

}

auto main(int argc, char ** argv) -> int
{
    CLI::App app{"Maximum Colorful Arborescence solvers, kernelizer and instance generators"};
    app.require_subcommand(1);

    std::string file;
    bool as_json = false;

    auto * validate_cmd = app.add_subcommand("validate", "Check an instance and list every violated invariant");
    validate_cmd->add_option("file", file, "instance (.mca)")->required();

    auto * stats_cmd = app.add_subcommand("stats", "Print instance parameters");
    stats_cmd->add_option("file", file, "instance (.mca)")->required();
    stats_cmd->add_flag("--json", as_json, "JSON output");

    std::string algo_text = "auto";
    bool with_counters = false;
    bool exact_width = false;
    double timeout = 0.0;
    auto * solve_cmd = app.add_subcommand("solve", "Compute a maximum-weight colorful arborescence");
    solve_cmd->add_option("file", file, "instance (.mca)")->required();
    solve_cmd->add_option("--algo", algo_text, "auto|brute|colors|difficult|treewidth|arbhier");
    solve_cmd->add_flag("--json", as_json, "JSON output");
    solve_cmd->add_flag("--counters", with_counters, "also print table-size and visit counters");
    solve_cmd->add_flag("--exact-width", exact_width, "treewidth solver: exhaustive elimination order");
    solve_cmd->add_option("--timeout", timeout, "wall-clock limit in seconds (0 = none)")->check(CLI::NonNegativeNumber);

    int ell = 0;
    std::string out_path;
    std::string log_path;
    auto * kernel_cmd = app.add_subcommand("kernelize", "Apply the data reduction rules under a budget promise");
    kernel_cmd->add_option("file", file, "instance (.mca)")->required();
    kernel_cmd->add_option("--l", ell, "at most l vertices are left out of some optimum")
        ->required()
        ->check(CLI::NonNegativeNumber);
    kernel_cmd->add_option("-o,--output", out_path, "kernel file (stdout when omitted)");
    kernel_cmd->add_option("--log", log_path, "reduction log (JSON)");

    auto * gen_cmd = app.add_subcommand("generate", "Write generated instances");
    gen_cmd->require_subcommand(1);

    GenParams gp;
    std::string shape = "dense";
    auto * gen_random_cmd = gen_cmd->add_subcommand("random", "Seeded random instance with acyclic hierarchy");
    gen_random_cmd->add_option("--vertices,-n", gp.vertices, "vertex count");
    gen_random_cmd->add_option("--colors,-c", gp.colors, "color count");
    gen_random_cmd->add_option("--density", gp.density, "arc probability")->check(CLI::Range(0.0, 1.0));
    gen_random_cmd->add_option("--wmin", gp.weight_min, "smallest weight");
    gen_random_cmd->add_option("--wmax", gp.weight_max, "largest weight");
    gen_random_cmd->add_option("--seed", gp.seed, "RNG seed");
    gen_random_cmd->add_option("--shape", shape, "dense|tree")->check(CLI::IsMember({"dense", "tree"}));
    gen_random_cmd->add_option("--diamonds", gp.diamonds, "tree shape: colors with a second parent");
    gen_random_cmd->add_option("-o,--output", out_path, "output file (stdout when omitted)");

    int p = 4;
    int q = 4;
    int k = 2;
    int set_colors = 3;
    std::uint64_t seed = 1;
    std::string from;
    std::string sc_out;
    auto add_set_cover_options = [&](CLI::App * cmd) {
        cmd->add_option("-p", p, "number of sets");
        cmd->add_option("-q", q, "universe size");
        cmd->add_option("-k", k, "cover size");
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--from", from, "read the Set Cover instance instead of generating it");
        cmd->add_option("--sc-output", sc_out, "also write the Set Cover instance");
        cmd->add_option("-o,--output", out_path, "output file (stdout when omitted)");
    };
    auto * gen_sc_cmd = gen_cmd->add_subcommand("setcover", "MCA instance from a Set Cover instance");
    add_set_cover_options(gen_sc_cmd);
    auto * gen_mcsc_cmd = gen_cmd->add_subcommand("mcsc", "MCA instance from a multicolored Set Cover instance");
    add_set_cover_options(gen_mcsc_cmd);
    gen_mcsc_cmd->add_option("--set-colors", set_colors, "number of set colors");

    std::vector<std::string> components;
    auto * gen_compose_cmd = gen_cmd->add_subcommand("compose", "OR-composition of instances over one color set");
    gen_compose_cmd->add_option("components", components, "component instances")->required();
    gen_compose_cmd->add_option("-o,--output", out_path, "output file (stdout when omitted)");

    std::string dir;
    std::vector<std::string> algo_list{"brute", "colors", "difficult", "treewidth"};
    double bench_timeout = 10.0;
    std::string csv_path;
    auto * bench_cmd = app.add_subcommand("bench", "Run and cross-check algorithms on a corpus");
    bench_cmd->add_option("dir", dir, "directory of .mca files")->required()->check(CLI::ExistingDirectory);
    bench_cmd->add_option("--algos", algo_list, "algorithms to run")->delimiter(',');
    bench_cmd->add_option("--timeout", bench_timeout, "seconds per run")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--csv", csv_path, "CSV summary file");
    bench_cmd->add_flag("--json", as_json, "JSON summary on stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError & e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (validate_cmd->parsed()) {
            const auto inst = read_instance_file(file);
            const auto report = validate(inst);
            for (const auto & issue : report.issues)
                std::cout << issue.message << '\n';
            if (! report.valid())
                return exit_invalid_instance;
            std::cout << "valid\n";
            return exit_ok;
        }

        if (stats_cmd->parsed()) {
            const auto s = stats(load(file));
            const auto j = to_json(s);
            if (as_json) {
                std::cout << j.dump(2) << '\n';
            } else {
                for (const auto & [key, value] : j.items())
                    std::cout << key << ' ' << value.dump() << '\n';
            }
            return exit_ok;
        }

        if (solve_cmd->parsed()) {
            const auto inst = load(file);
            auto algo = parse_algo(algo_text);
            Counters counters;
            SolveOptions options;
            options.counters = &counters;
            options.exact_width = exact_width;
            if (timeout > 0)
                options.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                                      std::chrono::duration<double>(timeout));
            if (algo == Algo::Auto)
                algo = select_algorithm(stats(inst), options.limits);
            const auto sol = run_algorithm(algo, inst, options);
            verify_solution(inst, sol);
            print_solution(sol, algo, counters, as_json, with_counters);
            return exit_ok;
        }

        if (kernel_cmd->parsed()) {
            const auto result = kernelize(load(file), {ell});
            if (out_path.empty())
                write_instance(std::cout, result.instance);
            else
                write_instance_file(out_path, result.instance);
            if (! log_path.empty())
                write_text_file(log_path, to_json(result.log).dump(2) + "\n");
            std::cerr << result.log.size() << " reductions, effective budget " << result.effective_ell << '\n';
            return exit_ok;
        }

        if (gen_random_cmd->parsed()) {
            gp.shape = shape == "tree" ? GenShape::Tree : GenShape::Dense;
            const auto inst = gen_random(gp);
            emit_instance(inst, out_path, std::nullopt,
                          {{"generator", "random"}, {"seed", gp.seed}, {"shape", shape}});
            return exit_ok;
        }

        if (gen_sc_cmd->parsed() || gen_mcsc_cmd->parsed()) {
            const bool colored = gen_mcsc_cmd->parsed();
            SetCoverInstance sc;
            if (from.empty()) {
                sc = gen_set_cover(p, q, k, seed, colored ? set_colors : 0);
            } else {
                std::ifstream in(from);
                if (! in)
                    throw Error("cannot read '" + from + "'");
                std::stringstream buffer;
                buffer << in.rdbuf();
                sc = parse_set_cover(buffer.str());
            }
            if (! sc_out.empty()) {
                std::ostringstream text;
                write_set_cover(text, sc);
                write_text_file(sc_out, text.str());
            }
            const auto reduced = colored ? reduce_multicolored_set_cover(sc) : reduce_set_cover(sc);
            emit_instance(reduced.instance, out_path, reduced.target,
                          {{"generator", colored ? "mcsc" : "setcover"},
                           {"p", sc.sets.size()},
                           {"q", sc.universe},
                           {"k", sc.k}});
            return exit_ok;
        }

        if (gen_compose_cmd->parsed()) {
            std::vector<Instance> parts;
            for (const auto & path : components)
                parts.push_back(load(path));
            emit_instance(or_compose(parts), out_path, std::nullopt,
                          {{"generator", "compose"}, {"components", components}});
            return exit_ok;
        }

        if (bench_cmd->parsed()) {
            std::vector<Algo> algos;
            for (const auto & name : algo_list)
                algos.push_back(parse_algo(name));
            const auto summary = run_bench(dir, algos, std::chrono::duration<double>(bench_timeout));
            if (! csv_path.empty())
                write_text_file(csv_path, bench_csv(summary));
            if (as_json)
                std::cout << to_json(summary).dump(2) << '\n';
            else
                std::cout << bench_csv(summary);
            for (const auto & bad : summary.unreadable)
                std::cerr << "unreadable: " << bad << '\n';
            for (const auto & name : summary.disagreements)
                std::cerr << "DISAGREEMENT on " << name << '\n';
            return summary.disagreements.empty() ? exit_ok : exit_disagreement;
        }
    } catch (const std::invalid_argument & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ParseError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid_instance;
    } catch (const InstanceError & e) {
        std::cerr << "invalid instance: " << e.what() << '\n';
        return exit_invalid_instance;
    } catch (const GuardExceeded & e) {
        std::cerr << "guard exceeded: " << e.what() << '\n';
        return exit_not_applicable;
    } catch (const Timeout & e) {
        std::cerr << "timeout: " << e.what() << '\n';
        return exit_not_applicable;
    } catch (const PreconditionError & e) {
        std::cerr << "not applicable: " << e.what() << '\n';
        return exit_not_applicable;
    } catch (const InvalidSolution & e) {
        std::cerr << "internal error, solver returned an invalid solution: " << e.what() << '\n';
        return exit_disagreement;
    } catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
