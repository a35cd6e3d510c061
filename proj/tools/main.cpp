// Command-line front end: catalog listing, experiment runs, similarity
// reports, and score recomputation from persisted traces.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtevo/experiment.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

std::filesystem::path default_output_dir() {
    if (const char* env = std::getenv("MULTITASK_EVO_OUT")) return env;
    return "results";
}

int cmd_list() {
    for (const auto& info : mtevo::list_benchmarks()) {
        std::cout << info.key << "  " << info.name << "  T1: " << info.task1_summary
                  << "  T2: " << info.task2_summary << "  intersection: "
                  << mtevo::intersection_name(info.intersection)
                  << "  band: " << mtevo::band_name(info.similarity_band)
                  << "  reference_r_s: " << info.reference_similarity << "\n";
    }
    return kExitSuccess;
}

struct RunOptions {
    std::vector<std::string> problems;
    std::vector<std::string> algorithms;
    int repetitions = 20;
    long long budget = 100000;
    int population = 100;
    double rmp = 0.3;
    double sbx_eta = 2.0;
    double mutation_eta = 5.0;
    std::uint64_t seed = 0;
    std::string matrix_dir;
    std::string output;
    int jobs = 1;
};

int cmd_run(const RunOptions& options) {
    mtevo::ExperimentConfig config;
    config.problems = options.problems;
    config.algorithms = options.algorithms;
    config.repetitions = options.repetitions;
    config.evolution.population_size = options.population;
    config.evolution.eval_budget = options.budget;
    config.evolution.rmp = options.rmp;
    config.evolution.sbx_eta = options.sbx_eta;
    config.evolution.mutation_eta = options.mutation_eta;
    config.base_seed = options.seed;
    config.jobs = options.jobs;
    config.output_dir =
        options.output.empty() ? default_output_dir() : std::filesystem::path(options.output);
    if (options.matrix_dir.empty()) {
        config.matrix_source = mtevo::GeneratedMatrices{options.seed};
    } else {
        config.matrix_source = mtevo::MatrixDirectory{options.matrix_dir};
    }

    const mtevo::ResultBundle bundle = mtevo::run_experiment(config);
    mtevo::emit_results(bundle, config.output_dir);
    std::cout << "wrote " << bundle.traces.size() << " runs across " << bundle.scores.size()
              << " problems to " << config.output_dir.string() << "\n";
    return kExitSuccess;
}

int cmd_similarity(const std::vector<std::string>& problems, long long samples,
                   std::uint64_t seed) {
    std::vector<std::string> keys;
    if (problems.empty()) {
        for (const auto& info : mtevo::list_benchmarks()) keys.push_back(info.key);
    } else {
        keys = problems;
    }
    std::vector<mtevo::SimilarityReport> reports;
    for (const auto& name : keys) {
        const auto problem = mtevo::build_benchmark(name, mtevo::GeneratedMatrices{seed});
        const std::uint64_t report_seed = seed + mtevo::fnv1a64("similarity|" + problem.key);
        reports.push_back(mtevo::spearman_similarity(problem, samples, report_seed));
    }
    std::cout << mtevo::format_similarity_csv(reports);
    return kExitSuccess;
}

int cmd_score(const std::string& input_dir) {
    const auto scores = mtevo::recompute_scores_from_traces(input_dir);
    std::cout << mtevo::format_scores_csv(scores);
    return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolutionary multitasking benchmark suite"};
    app.set_version_flag("--version",
                         std::string(mtevo::kToolName) + " " + std::string(mtevo::kToolVersion));
    app.require_subcommand(1);

    auto* list_cmd = app.add_subcommand("list", "Show the benchmark catalog");

    RunOptions run_options;
    auto* run_cmd = app.add_subcommand("run", "Run MFEA/SOEA repetitions and write result files");
    run_cmd->add_option("--problems", run_options.problems,
                        "Benchmark names (default: all nine)");
    run_cmd->add_option("--algos", run_options.algorithms, "Algorithms: mfea, soea (default both)");
    run_cmd->add_option("--reps", run_options.repetitions, "Repetitions per problem/algorithm");
    run_cmd->add_option("--budget", run_options.budget, "Function evaluations per run");
    run_cmd->add_option("--pop", run_options.population, "Population size");
    run_cmd->add_option("--rmp", run_options.rmp, "Random mating probability");
    run_cmd->add_option("--sbx-eta", run_options.sbx_eta, "SBX distribution index");
    run_cmd->add_option("--mut-eta", run_options.mutation_eta, "Mutation distribution index");
    run_cmd->add_option("--seed", run_options.seed, "Base seed for all derived run seeds");
    run_cmd->add_option("--matrix-dir", run_options.matrix_dir,
                        "Load rotation matrices from this directory instead of generating them");
    run_cmd->add_option("--out", run_options.output,
                        "Output directory (default: $MULTITASK_EVO_OUT or ./results)");
    run_cmd->add_option("--jobs", run_options.jobs, "Concurrent runs");

    std::vector<std::string> similarity_problems;
    long long similarity_samples = 100000;
    std::uint64_t similarity_seed = 0;
    auto* similarity_cmd =
        app.add_subcommand("similarity", "Compute rank-correlation similarity reports");
    similarity_cmd->add_option("--problems", similarity_problems,
                               "Benchmark names (default: all nine)");
    similarity_cmd->add_option("--samples", similarity_samples, "Unified-space sample count");
    similarity_cmd->add_option("--seed", similarity_seed, "Seed for matrices and sampling");

    std::string score_input;
    auto* score_cmd = app.add_subcommand("score", "Recompute scores from emitted trace files");
    score_cmd->add_option("--input", score_input, "Directory containing trace_*.csv files")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitUsage;
    }

    try {
        if (list_cmd->parsed()) return cmd_list();
        if (run_cmd->parsed()) return cmd_run(run_options);
        if (similarity_cmd->parsed())
            return cmd_similarity(similarity_problems, similarity_samples, similarity_seed);
        if (score_cmd->parsed()) return cmd_score(score_input);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
