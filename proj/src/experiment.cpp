#include "mtevo/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mtevo {

namespace {

constexpr int kTaskCount = 2;

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm parts{};
    gmtime_r(&now, &parts);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &parts);
    return buffer;
}

std::vector<std::string> resolve_problems(const std::vector<std::string>& requested) {
    std::vector<std::string> keys;
    if (requested.empty()) {
        for (const auto& info : list_benchmarks()) keys.push_back(info.key);
        return keys;
    }
    for (const auto& name : requested) {
        std::string key = normalize_problem_key(name);
        if (key.empty()) {
            throw std::invalid_argument("unknown benchmark name: " + name);
        }
        keys.push_back(std::move(key));
    }
    return keys;
}

std::vector<std::string> resolve_algorithms(const std::vector<std::string>& requested) {
    if (requested.empty()) return {"mfea", "soea"};
    std::vector<std::string> algos;
    for (const auto& name : requested) {
        if (name != "mfea" && name != "soea") {
            throw std::invalid_argument("unknown algorithm (expected mfea or soea): " + name);
        }
        algos.push_back(name);
    }
    return algos;
}

void run_jobs(std::vector<std::function<void()>>& jobs, int job_limit) {
    const int workers = std::max(1, std::min<int>(job_limit, static_cast<int>(jobs.size())));
    if (workers == 1) {
        for (auto& job : jobs) job();
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t index = next.fetch_add(1);
                if (index >= jobs.size()) return;
                jobs[index]();
            }
        });
    }
    for (auto& thread : pool) thread.join();
}

nlohmann::ordered_json manifest_for(const ExperimentConfig& config,
                                    const std::vector<std::string>& problems,
                                    const std::vector<std::string>& algorithms) {
    nlohmann::ordered_json manifest;
    manifest["tool"] = kToolName;
    manifest["version"] = kToolVersion;
    manifest["created_utc"] = utc_timestamp();
    manifest["base_seed"] = config.base_seed;
    manifest["seed_rule"] =
        "run_seed = base_seed + fnv1a64(\"<problem>|<run>|<rep>\") with run in "
        "{mfea, soea_t1, soea_t2}; similarity_seed = base_seed + "
        "fnv1a64(\"similarity|<problem>\")";
    manifest["problems"] = problems;
    manifest["algorithms"] = algorithms;
    manifest["repetitions"] = config.repetitions;
    if (const auto* generated = std::get_if<GeneratedMatrices>(&config.matrix_source)) {
        manifest["matrix_source"] = {{"mode", "generated"}, {"seed", generated->seed}};
    } else {
        const auto& dir = std::get<MatrixDirectory>(config.matrix_source);
        manifest["matrix_source"] = {{"mode", "directory"}, {"path", dir.path.string()}};
    }
    const auto& evo = config.evolution;
    manifest["evolution"] = {{"population_size", evo.population_size},
                             {"rmp", evo.rmp},
                             {"sbx_eta", evo.sbx_eta},
                             {"mutation_eta", evo.mutation_eta},
                             {"mutation_prob",
                              evo.mutation_prob ? nlohmann::ordered_json(*evo.mutation_prob)
                                                : nlohmann::ordered_json(nullptr)},
                             {"eval_budget", evo.eval_budget},
                             {"penalty_lambda", evo.penalty_lambda}};
    manifest["similarity_samples"] = config.similarity_samples;
    manifest["jobs"] = config.jobs;
    return manifest;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

std::string trace_csv(const RunTrace& trace) {
    std::string csv = "generation,evaluations,best_task1,best_task2\n";
    for (const auto& row : trace.per_generation) {
        csv += std::to_string(row.generation);
        csv += ',';
        csv += std::to_string(row.evaluations);
        for (const double best : row.best_cost) {
            csv += ',';
            csv += format_double(best);
        }
        csv += '\n';
    }
    return csv;
}

std::string merged_soea_csv(const RunTrace& t1, const RunTrace& t2) {
    if (t1.per_generation.size() != t2.per_generation.size()) {
        throw std::runtime_error("soea sub-runs have mismatched generation counts");
    }
    std::string csv = "generation,evaluations,best_task1,best_task2\n";
    for (std::size_t g = 0; g < t1.per_generation.size(); ++g) {
        const auto& r1 = t1.per_generation[g];
        const auto& r2 = t2.per_generation[g];
        csv += std::to_string(r1.generation);
        csv += ',';
        csv += std::to_string(r1.evaluations + r2.evaluations);
        csv += ',';
        csv += format_double(r1.best_cost[0]);
        csv += ',';
        csv += format_double(r2.best_cost[0]);
        csv += '\n';
    }
    return csv;
}

ProblemScores scores_for_problem(const std::string& key, const std::vector<std::string>& algorithms,
                                 const std::vector<std::vector<std::array<double, 2>>>& finals) {
    // finals: [algorithm][repetition][task]
    const int n = static_cast<int>(algorithms.size());
    const int l = static_cast<int>(finals.front().size());
    ProblemScores out;
    out.problem_key = key;
    out.algorithms = algorithms;
    if (n * l == 1) {
        // single run: normalization is degenerate, score is zero by definition
        out.report.scores = {0.0};
        out.report.task_mean = {{finals[0][0][0], finals[0][0][1]}};
        out.report.task_std = {{0.0, 0.0}};
        return out;
    }
    ResultMatrix matrix(n, kTaskCount, l);
    for (int algo = 0; algo < n; ++algo) {
        for (int rep = 0; rep < l; ++rep) {
            for (int task = 0; task < kTaskCount; ++task) {
                matrix.at(algo, task, rep) =
                    finals[static_cast<std::size_t>(algo)][static_cast<std::size_t>(rep)]
                          [static_cast<std::size_t>(task)];
            }
        }
    }
    out.report = compute_scores(matrix);
    return out;
}

}  // namespace

std::uint64_t derive_run_seed(std::uint64_t base_seed, std::string_view problem_key,
                              std::string_view run_label, int repetition) {
    std::string tag;
    tag.reserve(problem_key.size() + run_label.size() + 8);
    tag.append(problem_key);
    tag.push_back('|');
    tag.append(run_label);
    tag.push_back('|');
    tag.append(std::to_string(repetition));
    return base_seed + fnv1a64(tag);
}

ResultBundle run_experiment(const ExperimentConfig& config) {
    const std::vector<std::string> problems = resolve_problems(config.problems);
    const std::vector<std::string> algorithms = resolve_algorithms(config.algorithms);
    if (config.repetitions < 1) {
        throw std::invalid_argument("repetitions must be >= 1");
    }

    std::vector<CompositeProblem> built;
    built.reserve(problems.size());
    for (const auto& key : problems) built.push_back(build_benchmark(key, config.matrix_source));

    // one slot per run so concurrent workers never contend
    struct PendingRun {
        std::size_t problem_index;
        std::string run_label;
        int repetition;
    };
    std::vector<PendingRun> pending;
    for (std::size_t p = 0; p < built.size(); ++p) {
        for (const auto& algo : algorithms) {
            for (int rep = 0; rep < config.repetitions; ++rep) {
                if (algo == "mfea") {
                    pending.push_back({p, "mfea", rep});
                } else {
                    pending.push_back({p, "soea_t1", rep});
                    pending.push_back({p, "soea_t2", rep});
                }
            }
        }
    }

    ResultBundle bundle;
    bundle.traces.resize(pending.size());
    bundle.similarity.resize(built.size());

    std::vector<std::function<void()>> jobs;
    jobs.reserve(pending.size() + built.size());
    for (std::size_t slot = 0; slot < pending.size(); ++slot) {
        jobs.emplace_back([&, slot] {
            const PendingRun& run = pending[slot];
            const CompositeProblem& problem = built[run.problem_index];
            EvolutionConfig evo = config.evolution;
            evo.seed = derive_run_seed(config.base_seed, problem.key, run.run_label,
                                       run.repetition);
            RunTrace trace;
            if (run.run_label == "mfea") {
                trace = run_mfea(problem, evo);
            } else {
                // fairness split: each task gets an equal share of the budget
                evo.eval_budget = config.evolution.eval_budget / kTaskCount;
                const int task_index = run.run_label == "soea_t1" ? 0 : 1;
                trace = run_soea(problem.task(task_index), evo);
                trace.algorithm = run.run_label;
            }
            bundle.traces[slot] = {problem.key, run.run_label, run.repetition, std::move(trace)};
        });
    }
    for (std::size_t p = 0; p < built.size(); ++p) {
        jobs.emplace_back([&, p] {
            const std::uint64_t seed =
                config.base_seed + fnv1a64("similarity|" + built[p].key);
            bundle.similarity[p] =
                spearman_similarity(built[p], config.similarity_samples, seed);
        });
    }
    run_jobs(jobs, config.jobs);

    // assemble final-best matrices per problem: [algorithm][rep][task]
    for (std::size_t p = 0; p < built.size(); ++p) {
        std::vector<std::vector<std::array<double, 2>>> finals(
            algorithms.size(),
            std::vector<std::array<double, 2>>(static_cast<std::size_t>(config.repetitions)));
        for (const auto& result : bundle.traces) {
            if (result.problem_key != built[p].key) continue;
            const auto rep = static_cast<std::size_t>(result.repetition);
            for (std::size_t a = 0; a < algorithms.size(); ++a) {
                if (algorithms[a] == "mfea" && result.run_label == "mfea") {
                    finals[a][rep] = {result.trace.final_best[0], result.trace.final_best[1]};
                } else if (algorithms[a] == "soea" && result.run_label == "soea_t1") {
                    finals[a][rep][0] = result.trace.final_best[0];
                } else if (algorithms[a] == "soea" && result.run_label == "soea_t2") {
                    finals[a][rep][1] = result.trace.final_best[0];
                }
            }
        }
        bundle.scores.push_back(scores_for_problem(built[p].key, algorithms, finals));
    }

    bundle.manifest = manifest_for(config, problems, algorithms);
    return bundle;
}

std::string format_scores_csv(const std::vector<ProblemScores>& scores) {
    std::string csv = "problem,algorithm,task,mean,std,score\n";
    for (const auto& entry : scores) {
        for (std::size_t algo = 0; algo < entry.algorithms.size(); ++algo) {
            for (std::size_t task = 0; task < entry.report.task_mean[algo].size(); ++task) {
                csv += entry.problem_key;
                csv += ',';
                csv += entry.algorithms[algo];
                csv += ',';
                csv += std::to_string(task + 1);
                csv += ',';
                csv += format_double(entry.report.task_mean[algo][task]);
                csv += ',';
                csv += format_double(entry.report.task_std[algo][task]);
                csv += ',';
                csv += format_double(entry.report.scores[algo]);
                csv += '\n';
            }
        }
    }
    return csv;
}

std::string format_similarity_csv(const std::vector<SimilarityReport>& reports) {
    std::string csv = "problem,r_s,band,samples,seed\n";
    for (const auto& report : reports) {
        csv += normalize_problem_key(report.problem_name);
        csv += ',';
        csv += format_double(report.r_s);
        csv += ',';
        csv += band_name(report.band);
        csv += ',';
        csv += std::to_string(report.sample_count);
        csv += ',';
        csv += std::to_string(report.seed);
        csv += '\n';
    }
    return csv;
}

void emit_results(const ResultBundle& bundle, const std::filesystem::path& output_dir) {
    std::error_code ec;
    std::filesystem::create_directories(output_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory " + output_dir.string() + ": " +
                                 ec.message());
    }

    // individual MFEA traces; SOEA task runs merged pairwise
    std::map<std::pair<std::string, int>, const RunTrace*> soea_t1;
    std::map<std::pair<std::string, int>, const RunTrace*> soea_t2;
    for (const auto& result : bundle.traces) {
        if (result.run_label == "mfea") {
            const auto name = "trace_" + result.problem_key + "_mfea_" +
                              std::to_string(result.repetition) + ".csv";
            write_file(output_dir / name, trace_csv(result.trace));
        } else if (result.run_label == "soea_t1") {
            soea_t1[{result.problem_key, result.repetition}] = &result.trace;
        } else {
            soea_t2[{result.problem_key, result.repetition}] = &result.trace;
        }
    }
    for (const auto& [key, trace1] : soea_t1) {
        auto other = soea_t2.find(key);
        if (other == soea_t2.end()) {
            throw std::runtime_error("missing soea_t2 run for " + key.first);
        }
        const auto name = "trace_" + key.first + "_soea_" + std::to_string(key.second) + ".csv";
        write_file(output_dir / name, merged_soea_csv(*trace1, *other->second));
    }

    write_file(output_dir / "scores.csv", format_scores_csv(bundle.scores));
    write_file(output_dir / "similarity.csv", format_similarity_csv(bundle.similarity));
    write_file(output_dir / "manifest.json", bundle.manifest.dump(2) + "\n");
}

std::vector<ProblemScores> recompute_scores_from_traces(const std::filesystem::path& trace_dir) {
    if (!std::filesystem::is_directory(trace_dir)) {
        throw std::runtime_error("not a directory: " + trace_dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(trace_dir)) {
        const std::string name = entry.path().filename().string();
        if (name.starts_with("trace_") && name.ends_with(".csv")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw std::runtime_error("no trace files found in " + trace_dir.string());
    }

    // problem key -> algorithm -> repetition -> (best_task1, best_task2)
    std::map<std::string, std::map<std::string, std::map<int, std::array<double, 2>>>> finals;
    for (const auto& path : files) {
        std::string stem = path.stem().string();  // trace_<key>_<algo>_<rep>
        std::vector<std::string> parts;
        std::istringstream split(stem);
        std::string piece;
        while (std::getline(split, piece, '_')) parts.push_back(piece);
        if (parts.size() != 4) {
            throw std::runtime_error("unrecognized trace filename: " + path.string());
        }
        const std::string& key = parts[1];
        const std::string& algo = parts[2];
        const int rep = std::stoi(parts[3]);

        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path.string());
        std::string line;
        std::string last;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            if (!line.empty()) last = line;
        }
        if (last.empty()) {
            throw std::runtime_error("trace has no data rows: " + path.string());
        }
        std::replace(last.begin(), last.end(), ',', ' ');
        std::istringstream fields(last);
        long long generation = 0;
        long long evaluations = 0;
        double best1 = 0.0;
        double best2 = 0.0;
        if (!(fields >> generation >> evaluations >> best1 >> best2)) {
            throw std::runtime_error("malformed trace row in " + path.string());
        }
        finals[key][algo][rep] = {best1, best2};
    }

    // catalog order first, then anything unknown in lexicographic order
    std::vector<std::string> ordered;
    for (const auto& info : list_benchmarks()) {
        if (finals.count(info.key)) ordered.push_back(info.key);
    }
    for (const auto& [key, _] : finals) {
        if (std::find(ordered.begin(), ordered.end(), key) == ordered.end())
            ordered.push_back(key);
    }

    std::vector<ProblemScores> out;
    for (const auto& key : ordered) {
        const auto& per_algo = finals[key];
        std::vector<std::string> algorithms;
        for (const std::string label : {"mfea", "soea"}) {
            if (per_algo.count(label)) algorithms.push_back(label);
        }
        const int l = static_cast<int>(per_algo.begin()->second.size());
        std::vector<std::vector<std::array<double, 2>>> values(
            algorithms.size(), std::vector<std::array<double, 2>>(static_cast<std::size_t>(l)));
        for (std::size_t a = 0; a < algorithms.size(); ++a) {
            const auto& reps = per_algo.at(algorithms[a]);
            if (static_cast<int>(reps.size()) != l) {
                throw std::runtime_error("uneven repetition counts for " + key);
            }
            std::size_t slot = 0;
            for (const auto& [rep, bests] : reps) values[a][slot++] = bests;
        }
        out.push_back(scores_for_problem(key, algorithms, values));
    }
    return out;
}

}  // namespace mtevo
