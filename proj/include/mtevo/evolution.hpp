#ifndef MTEVO_EVOLUTION_HPP
#define MTEVO_EVOLUTION_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mtevo/benchmarks.hpp"
#include "mtevo/rng.hpp"
#include "mtevo/unified_space.hpp"

namespace mtevo {

/// Population member. Under selective evaluation, the factorial cost (and
/// rank) is defined only for the member's skill task; the other entries
/// stay empty. Task indices are 0-based.
struct Individual {
    RandomKeyVector chromosome;
    int skill_factor = 0;
    std::vector<std::optional<double>> factorial_costs;
    std::vector<std::optional<int>> factorial_ranks;
    std::optional<double> scalar_fitness;

    int task_count() const { return static_cast<int>(factorial_costs.size()); }
};

struct EvolutionConfig {
    int population_size = 100;  // must be even and >= 2 * task count
    double rmp = 0.3;           // random mating probability for mixed-skill pairs
    double sbx_eta = 2.0;
    double mutation_eta = 5.0;
    std::optional<double> mutation_prob;  // per-variable; defaults to 1 / D_multitask
    long long eval_budget = 100000;       // shared across tasks
    double penalty_lambda = 1e10;
    std::uint64_t seed = 0;
};

struct Population {
    std::vector<Individual> members;
    int generation = 0;
};

struct GenerationRecord {
    int generation = 0;
    long long evaluations = 0;         // cumulative objective calls
    std::vector<double> best_cost;     // best-so-far per task
};

struct RunTrace {
    std::string algorithm;
    std::uint64_t seed = 0;
    std::vector<GenerationRecord> per_generation;
    std::vector<double> final_best;
};

/// Called once per generation with the ranked merged pool (parents plus
/// offspring; the initial population at generation 0), before survival
/// selection. Intended for invariant checks and instrumentation.
using GenerationObserver = std::function<void(const Population& ranked_pool)>;

/// Penalized objective: lambda * violation + objective.
double factorial_cost(double objective, double violation, double lambda);

/// Uniform-random chromosomes, round-robin skill factors (member j gets
/// task (j+1) mod K counting 1-based), each member evaluated on its skill
/// task only, ranks and scalar fitness computed. Consumes exactly
/// population_size evaluations.
Population initialize_population(const EvolutionConfig& config, std::span<const TaskSpec> tasks);

/// Spread factor for one SBX coordinate from a uniform draw.
double sbx_spread_factor(double u, double eta);

/// Simulated binary crossover. One spread draw per coordinate, both
/// children from the same draw, no coordinate swapping between children;
/// results clamped to [0, 1].
std::pair<RandomKeyVector, RandomKeyVector> sbx_crossover(const RandomKeyVector& p1,
                                                          const RandomKeyVector& p2, double eta,
                                                          Rng& rng);

/// Signed perturbation of one key under bounded polynomial mutation on
/// [0, 1]; u is the uniform draw.
double polynomial_mutation_delta(double key, double u, double eta);

/// Each coordinate mutates independently with probability prob; result
/// clamped to [0, 1]. prob = 0 returns the input bit-exactly.
RandomKeyVector polynomial_mutation(const RandomKeyVector& chromosome, double eta, double prob,
                                    Rng& rng);

/// Skill-factor imitation branch: 0 when the draw is <= 0.5 (child copies
/// the first parent), 1 otherwise.
int imitation_source(double draw);

/// One generation of offspring (population_size of them), unevaluated,
/// with skill factors assigned. Parents are paired by uniform shuffle;
/// same-skill pairs always cross, mixed-skill pairs cross only when the
/// rmp draw allows, and otherwise each parent yields one mutation-only
/// child that inherits its skill.
std::vector<Individual> generate_offspring(const Population& population,
                                           const EvolutionConfig& config, double mutation_prob,
                                           Rng& mating_rng, Rng& mutation_rng);

/// Ascending factorial ranks per task over the members whose cost is
/// defined there; exact ties are randomly permuted.
void compute_factorial_ranks(Population& population, Rng& tie_rng);

/// phi = 1 / rank on the skill task. Members carrying ranks on several
/// tasks (fully-evaluated mode) first move their skill factor to the
/// task of their best rank.
void compute_scalar_fitness(Population& population);

/// Keeps the n members with highest scalar fitness; ties prefer the lower
/// cost on the member's own skill task, then a random draw.
Population elitist_select(const Population& pool, int n, Rng& tie_rng);

/// Multifactorial EA over any number of tasks under a shared evaluation
/// budget. Deterministic given (tasks, config); the trace carries one
/// record per generation.
RunTrace run_multitask(std::span<const TaskSpec> tasks, const EvolutionConfig& config,
                       std::string algorithm_label, const GenerationObserver& observer = {});

RunTrace run_mfea(const CompositeProblem& problem, const EvolutionConfig& config,
                  const GenerationObserver& observer = {});

/// Single-task baseline: the same engine on one task, where every pair is
/// same-skill and crossover is unconditional.
RunTrace run_soea(const TaskSpec& task, const EvolutionConfig& config,
                  const GenerationObserver& observer = {});

}  // namespace mtevo

#endif
