// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// anything fails. Heavier than the unit tests; the full run takes a couple
// of minutes at desk scale.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mtevo/experiment.hpp"

using namespace mtevo;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, const std::string& label, bool passed, const std::string& detail) {
    std::printf("[%s] criterion %d: %s%s%s\n", passed ? "PASS" : "FAIL", criterion, label.c_str(),
                detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
    if (!passed) ++failures;
}

// ---- criterion 1: analytic optima -----------------------------------------

void criterion_optima() {
    bool ok = true;
    std::string detail;
    for (const auto& info : list_benchmarks()) {
        auto problem = build_benchmark(info.key, GeneratedMatrices{1});
        for (int t = 0; t < 2; ++t) {
            const TaskSpec& task = problem.task(t);
            const double tolerance = task.function_id == BaseFunctionId::Schwefel ? 1e-3 : 1e-6;
            const double cost = eval_task(task, task.optimum);
            if (!(std::abs(cost) < tolerance)) {
                ok = false;
                detail += info.key + " T" + std::to_string(t + 1) + " cost " +
                          std::to_string(cost) + "; ";
            }
        }
    }
    report(1, "each task evaluates to ~0 at its stored optimum", ok, detail);
}

// ---- criterion 2: similarity bands -----------------------------------------

void criterion_similarity_bands() {
    constexpr long long kSamples = 100000;
    constexpr std::uint64_t kBaseSeed = 1;
    int in_band = 0;
    double cihs_value = 0.0;
    std::string detail;
    for (const auto& info : list_benchmarks()) {
        auto problem = build_benchmark(info.key, GeneratedMatrices{kBaseSeed});
        const std::uint64_t seed = kBaseSeed + fnv1a64("similarity|" + problem.key);
        auto computed = spearman_similarity(problem, kSamples, seed);
        const bool match = computed.band == info.similarity_band;
        in_band += match;
        if (info.key == "CIHS") cihs_value = computed.r_s;
        char buffer[64];
        std::snprintf(buffer, sizeof(buffer), "%s=%.4f%s", info.key.c_str(), computed.r_s,
                      match ? "" : "(!)");
        detail += buffer;
        detail += ' ';
    }
    const bool ok = in_band >= 8 && cihs_value >= 0.95;
    report(2, "computed R_s lands in the reference band for >= 8 of 9 problems", ok,
           detail + "| in-band " + std::to_string(in_band) + "/9");
}

// ---- criterion 3: baseline direction ---------------------------------------

void criterion_baseline_direction() {
    // the seven problems where the reference comparison favors multitasking
    const std::vector<std::string> winners = {"CIHS", "CIMS", "CILS", "PIHS",
                                              "PIMS", "NIHS", "NIMS"};
    ExperimentConfig config;
    config.problems = winners;
    config.algorithms = {"mfea", "soea"};
    config.repetitions = 5;
    config.evolution.population_size = 100;
    config.evolution.eval_budget = 100000;
    config.base_seed = 3;
    config.matrix_source = GeneratedMatrices{3};
    config.similarity_samples = 1000;  // similarity is not under test here
    config.jobs = 4;

    auto bundle = run_experiment(config);
    int mfea_wins = 0;
    std::string detail;
    for (const auto& entry : bundle.scores) {
        const auto mfea_at = std::find(entry.algorithms.begin(), entry.algorithms.end(), "mfea") -
                             entry.algorithms.begin();
        const auto soea_at = std::find(entry.algorithms.begin(), entry.algorithms.end(), "soea") -
                             entry.algorithms.begin();
        const double mfea_score = entry.report.scores[static_cast<std::size_t>(mfea_at)];
        const double soea_score = entry.report.scores[static_cast<std::size_t>(soea_at)];
        const bool win = mfea_score < soea_score;
        mfea_wins += win;
        char buffer[96];
        std::snprintf(buffer, sizeof(buffer), "%s mfea=%.2f soea=%.2f%s ",
                      entry.problem_key.c_str(), mfea_score, soea_score, win ? "" : "(!)");
        detail += buffer;
    }
    report(3, "multitasking scores lower than single-task on >= 5 of the 7 favorable problems",
           mfea_wins >= 5, detail + "| wins " + std::to_string(mfea_wins) + "/7");
}

// ---- criterion 4: score zero-sum -------------------------------------------

void criterion_score_zero_sum() {
    Rng rng(404);
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng.bounded(4));
        const int k = 1 + static_cast<int>(rng.bounded(3));
        const int l = 1 + static_cast<int>(rng.bounded(6));
        if (n * l < 2) continue;
        ResultMatrix matrix(n, k, l);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < k; ++j) {
                for (int r = 0; r < l; ++r) matrix.at(i, j, r) = rng.uniform(-1e4, 1e4);
            }
        }
        auto scores = compute_scores(matrix).scores;
        double sum = 0.0;
        for (double s : scores) sum += s;
        if (!(std::abs(sum) < 1e-9)) {
            ok = false;
            detail = "sum " + std::to_string(sum) + " at trial " + std::to_string(trial);
            break;
        }
    }
    report(4, "scores sum to zero over 1000 random result matrices", ok, detail);
}

// ---- criterion 5: spearman oracle equivalence ------------------------------

std::vector<double> oracle_ranks(const std::vector<double>& values) {
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        int smaller = 0;
        for (double other : values) smaller += other < values[i];
        ranks[i] = 1.0 + smaller;
    }
    return ranks;
}

double oracle_spearman(const std::vector<double>& a, const std::vector<double>& b) {
    const auto ra = oracle_ranks(a);
    const auto rb = oracle_ranks(b);
    double mean_a = 0.0;
    double mean_b = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        mean_a += ra[i];
        mean_b += rb[i];
    }
    mean_a /= static_cast<double>(ra.size());
    mean_b /= static_cast<double>(rb.size());
    double cov = 0.0;
    double va = 0.0;
    double vb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        cov += (ra[i] - mean_a) * (rb[i] - mean_b);
        va += (ra[i] - mean_a) * (ra[i] - mean_a);
        vb += (rb[i] - mean_b) * (rb[i] - mean_b);
    }
    return cov / std::sqrt(va * vb);
}

void criterion_spearman_oracle() {
    Rng value_rng(505);
    Rng tie_rng(506);
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + value_rng.bounded(9);
        std::vector<double> a(n);
        std::vector<double> b(n);
        for (auto& v : a) v = value_rng.uniform(-50.0, 50.0);
        for (auto& v : b) v = value_rng.uniform(-50.0, 50.0);
        const double expected = oracle_spearman(a, b);
        const double actual = spearman_from_costs(a, b, tie_rng);
        if (!(std::abs(actual - expected) < 1e-12)) {
            ok = false;
            detail = "trial " + std::to_string(trial) + ": " + std::to_string(actual) + " vs " +
                     std::to_string(expected);
            break;
        }
    }
    report(5, "rank correlation matches the brute-force oracle on 100 random lists", ok, detail);
}

// ---- criterion 6: determinism ----------------------------------------------

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void criterion_determinism() {
    ExperimentConfig config;
    config.problems = {"CIMS"};
    config.repetitions = 2;
    config.evolution.population_size = 20;
    config.evolution.eval_budget = 600;
    config.base_seed = 11;
    config.matrix_source = GeneratedMatrices{11};
    config.similarity_samples = 2000;

    const auto dir1 = fs::temp_directory_path() / "mtevo_accept_det1";
    const auto dir2 = fs::temp_directory_path() / "mtevo_accept_det2";
    fs::remove_all(dir1);
    fs::remove_all(dir2);
    emit_results(run_experiment(config), dir1);
    emit_results(run_experiment(config), dir2);

    bool ok = true;
    std::string detail;
    for (const auto& entry : fs::directory_iterator(dir1)) {
        const auto name = entry.path().filename().string();
        if (name == "manifest.json") continue;  // carries a timestamp
        if (slurp(entry.path()) != slurp(dir2 / name)) {
            ok = false;
            detail += name + " differs; ";
        }
    }
    report(6, "repeated runs produce byte-identical numeric output files", ok, detail);
}

// ---- criterion 7: structural invariants ------------------------------------

void criterion_structural_invariants() {
    auto problem = build_benchmark("CIMS", GeneratedMatrices{2});
    EvolutionConfig config;
    config.population_size = 100;
    config.eval_budget = 2000;
    config.seed = 2;

    bool ok = true;
    std::string detail;
    auto fail = [&](const std::string& what) {
        if (ok) detail = what;
        ok = false;
    };

    auto observer = [&](const Population& pool) {
        std::vector<std::vector<int>> ranks_per_task(2);
        for (const auto& member : pool.members) {
            int defined = 0;
            for (int task = 0; task < 2; ++task) {
                const auto& cost = member.factorial_costs[static_cast<std::size_t>(task)];
                if (cost.has_value()) {
                    ++defined;
                    if (task != member.skill_factor) fail("off-skill factorial cost defined");
                }
                const auto& rank = member.factorial_ranks[static_cast<std::size_t>(task)];
                if (rank.has_value()) ranks_per_task[static_cast<std::size_t>(task)].push_back(*rank);
            }
            if (defined != 1) fail("member evaluated on != 1 task");
            if (!member.scalar_fitness || *member.scalar_fitness <= 0.0 ||
                *member.scalar_fitness > 1.0) {
                fail("scalar fitness outside (0, 1]");
            }
            for (double key : member.chromosome) {
                if (key < 0.0 || key > 1.0) fail("chromosome key outside [0, 1]");
            }
        }
        for (auto& ranks : ranks_per_task) {
            std::sort(ranks.begin(), ranks.end());
            for (std::size_t i = 0; i < ranks.size(); ++i) {
                if (ranks[i] != static_cast<int>(i + 1)) fail("ranks are not a permutation");
            }
        }
    };

    auto trace = run_mfea(problem, config, observer);
    const auto consumed = trace.per_generation.back().evaluations;
    if (consumed > config.eval_budget) fail("budget exceeded");
    if (consumed <= config.eval_budget - config.population_size) fail("budget underused");
    for (std::size_t g = 1; g < trace.per_generation.size(); ++g) {
        for (int task = 0; task < 2; ++task) {
            if (trace.per_generation[g].best_cost[static_cast<std::size_t>(task)] >
                trace.per_generation[g - 1].best_cost[static_cast<std::size_t>(task)]) {
                fail("best-so-far increased");
            }
        }
    }
    report(7, "per-generation structural invariants hold on a 2000-evaluation run", ok, detail);
}

// ---- criterion 8: operator identities --------------------------------------

void criterion_operator_identities() {
    bool ok = true;
    std::string detail;
    auto fail = [&](const std::string& what) {
        if (ok) detail = what;
        ok = false;
    };

    Rng rng(808);
    // u = 0.5 reproduces parents
    const double beta = sbx_spread_factor(0.5, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = rng.uniform();
        const double b = rng.uniform();
        const double c1 = 0.5 * ((1.0 + beta) * a + (1.0 - beta) * b);
        const double c2 = 0.5 * ((1.0 - beta) * a + (1.0 + beta) * b);
        if (std::abs(c1 - a) > 1e-15 || std::abs(c2 - b) > 1e-15) fail("u = 0.5 not identity");
        // mean preservation pre-clamping
        const double spread = sbx_spread_factor(rng.uniform(), 2.0);
        const double d1 = 0.5 * ((1.0 + spread) * a + (1.0 - spread) * b);
        const double d2 = 0.5 * ((1.0 - spread) * a + (1.0 + spread) * b);
        if (std::abs((d1 + d2) - (a + b)) > 1e-12) fail("SBX mean not preserved");
    }

    RandomKeyVector parent1(30);
    RandomKeyVector parent2(30);
    for (std::size_t i = 0; i < parent1.size(); ++i) {
        parent1[i] = rng.uniform();
        parent2[i] = rng.uniform();
    }
    if (polynomial_mutation(parent1, 5.0, 0.0, rng) != parent1) {
        fail("mutation with prob 0 is not the identity");
    }
    for (int trial = 0; trial < 100; ++trial) {
        auto [c1, c2] = sbx_crossover(parent1, parent2, 2.0, rng);
        auto m1 = polynomial_mutation(c1, 5.0, 1.0, rng);
        for (const auto& child : {c1, c2, m1}) {
            for (double key : child) {
                if (key < 0.0 || key > 1.0) fail("child key escaped [0, 1]");
            }
        }
    }
    report(8, "SBX and mutation identities hold and children stay in range", ok, detail);
}

// ---- criterion 9: K = 1 reduction ------------------------------------------

void criterion_k1_reduction() {
    auto problem = build_benchmark("PIHS", GeneratedMatrices{4});
    EvolutionConfig config;
    config.population_size = 50;
    config.eval_budget = 5000;
    config.seed = 99;

    const TaskSpec single[] = {problem.task2};
    auto mfea_trace = run_multitask(single, config, "mfea");
    auto soea_trace = run_soea(problem.task2, config);

    bool ok = mfea_trace.per_generation.size() == soea_trace.per_generation.size() &&
              mfea_trace.final_best == soea_trace.final_best;
    if (ok) {
        for (std::size_t g = 0; g < mfea_trace.per_generation.size(); ++g) {
            ok = ok &&
                 mfea_trace.per_generation[g].evaluations ==
                     soea_trace.per_generation[g].evaluations &&
                 mfea_trace.per_generation[g].best_cost == soea_trace.per_generation[g].best_cost;
        }
    }
    report(9, "single-task multifactorial run equals the SOEA trace exactly", ok, "");
}

}  // namespace

int main() {
    std::printf("acceptance suite (%s %s)\n", std::string(kToolName).c_str(),
                std::string(kToolVersion).c_str());
    criterion_optima();
    criterion_similarity_bands();
    criterion_baseline_direction();
    criterion_score_zero_sum();
    criterion_spearman_oracle();
    criterion_determinism();
    criterion_structural_invariants();
    criterion_operator_identities();
    criterion_k1_reduction();
    if (failures == 0) {
        std::printf("all 9 criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
}
