#ifndef MTEVO_EXPERIMENT_HPP
#define MTEVO_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mtevo/benchmarks.hpp"
#include "mtevo/evolution.hpp"
#include "mtevo/metrics.hpp"
#include "mtevo/similarity.hpp"

namespace mtevo {

inline constexpr std::string_view kToolName = "multitask-evo";
inline constexpr std::string_view kToolVersion = "1.0.0";

/// Full experiment description. Every run's seed is derived as
/// base_seed + fnv1a64("<problem>|<run>|<rep>") with run one of
/// mfea / soea_t1 / soea_t2, so adding problems or algorithms never
/// shifts the seeds of existing runs.
struct ExperimentConfig {
    std::vector<std::string> problems;    // keys or display names; empty = all nine
    std::vector<std::string> algorithms;  // subset of {"mfea", "soea"}; empty = both
    int repetitions = 20;
    EvolutionConfig evolution;            // per-run seed field is ignored (derived)
    MatrixSource matrix_source = GeneratedMatrices{0};
    std::filesystem::path output_dir;
    std::uint64_t base_seed = 0;
    long long similarity_samples = 100000;
    int jobs = 1;  // concurrent runs; results are keyed, so output is order-independent
};

struct RunResult {
    std::string problem_key;
    std::string run_label;  // mfea, soea_t1, soea_t2
    int repetition = 0;
    RunTrace trace;
};

struct ProblemScores {
    std::string problem_key;
    std::vector<std::string> algorithms;
    ScoreReport report;
};

struct ResultBundle {
    std::vector<RunResult> traces;
    std::vector<SimilarityReport> similarity;
    std::vector<ProblemScores> scores;
    nlohmann::ordered_json manifest;
};

std::uint64_t derive_run_seed(std::uint64_t base_seed, std::string_view problem_key,
                              std::string_view run_label, int repetition);

/// Executes every selected problem x algorithm x repetition. MFEA gets the
/// full shared budget; SOEA runs each task separately on budget / 2. Also
/// computes the similarity report per problem and the per-problem scores
/// from the final best costs.
ResultBundle run_experiment(const ExperimentConfig& config);

/// Writes scores.csv, similarity.csv, one trace CSV per run (SOEA's two
/// single-task runs merge into one file, aligned by generation), and
/// manifest.json. Numeric fields use 17 significant digits so files
/// round-trip bit-exactly.
void emit_results(const ResultBundle& bundle, const std::filesystem::path& output_dir);

/// Rebuilds per-problem scores from trace CSVs previously written by
/// emit_results (the `score` subcommand).
std::vector<ProblemScores> recompute_scores_from_traces(const std::filesystem::path& trace_dir);

/// scores.csv-formatted lines (with header) for printing or writing.
std::string format_scores_csv(const std::vector<ProblemScores>& scores);
std::string format_similarity_csv(const std::vector<SimilarityReport>& reports);

}  // namespace mtevo

#endif
