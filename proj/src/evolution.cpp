#include "mtevo/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mtevo {

namespace {

struct RngStreams {
    Rng init;
    Rng mating;
    Rng mutation;
    Rng ties;
};

RngStreams make_streams(std::uint64_t seed) {
    return {derive_stream(seed, "init"), derive_stream(seed, "mating"),
            derive_stream(seed, "mutation"), derive_stream(seed, "ties")};
}

void validate_config(const EvolutionConfig& config, int task_count) {
    if (config.population_size < 2 * task_count || config.population_size % 2 != 0) {
        throw std::invalid_argument("population_size must be even and >= 2 * task count");
    }
    if (config.eval_budget < config.population_size) {
        throw std::invalid_argument("eval_budget must cover at least the initial population");
    }
    if (config.rmp < 0.0 || config.rmp > 1.0) {
        throw std::invalid_argument("rmp must lie in [0, 1]");
    }
}

double resolve_mutation_prob(const EvolutionConfig& config, int d_multitask) {
    return config.mutation_prob.value_or(1.0 / static_cast<double>(d_multitask));
}

// Shared evaluation accounting: every objective call on any task burns one
// unit of the common budget and updates that task's best-so-far.
struct Evaluator {
    std::span<const TaskSpec> tasks;
    double lambda = 1e10;
    long long evaluations = 0;
    std::vector<double> best;

    explicit Evaluator(std::span<const TaskSpec> tasks_, double lambda_)
        : tasks(tasks_), lambda(lambda_),
          best(tasks_.size(), std::numeric_limits<double>::infinity()) {}

    void evaluate_on_skill_task(Individual& individual) {
        const int task_index = individual.skill_factor;
        const TaskSpec& task = tasks[static_cast<std::size_t>(task_index)];
        const std::vector<double> x = decode(individual.chromosome, task);
        const double objective = eval_task(task, x);
        // the benchmarks are box-constrained only, so the decoded point is
        // always feasible and the violation term is zero
        const double cost = factorial_cost(objective, 0.0, lambda);
        individual.factorial_costs[static_cast<std::size_t>(task_index)] = cost;
        ++evaluations;
        auto& record = best[static_cast<std::size_t>(task_index)];
        record = std::min(record, cost);
    }
};

Individual make_blank(int d_multitask, int task_count) {
    Individual individual;
    individual.chromosome.resize(static_cast<std::size_t>(d_multitask));
    individual.factorial_costs.assign(static_cast<std::size_t>(task_count), std::nullopt);
    individual.factorial_ranks.assign(static_cast<std::size_t>(task_count), std::nullopt);
    return individual;
}

Population init_impl(const EvolutionConfig& config, std::span<const TaskSpec> tasks,
                     RngStreams& streams, Evaluator& evaluator) {
    const int task_count = static_cast<int>(tasks.size());
    int d_multitask = 0;
    for (const auto& task : tasks) d_multitask = std::max(d_multitask, task.dimension);

    Population population;
    population.members.reserve(static_cast<std::size_t>(config.population_size));
    for (int j = 0; j < config.population_size; ++j) {
        Individual individual = make_blank(d_multitask, task_count);
        for (auto& key : individual.chromosome) key = streams.init.uniform();
        individual.skill_factor = (j + 1) % task_count;  // mod(j, K) + 1 with 1-based j
        evaluator.evaluate_on_skill_task(individual);
        population.members.push_back(std::move(individual));
    }
    compute_factorial_ranks(population, streams.ties);
    compute_scalar_fitness(population);
    return population;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

double factorial_cost(double objective, double violation, double lambda) {
    if (violation < 0.0) {
        throw std::invalid_argument("factorial_cost: constraint violation must be non-negative");
    }
    return lambda * violation + objective;
}

Population initialize_population(const EvolutionConfig& config, std::span<const TaskSpec> tasks) {
    if (tasks.empty()) throw std::invalid_argument("initialize_population: no tasks");
    validate_config(config, static_cast<int>(tasks.size()));
    RngStreams streams = make_streams(config.seed);
    Evaluator evaluator(tasks, config.penalty_lambda);
    return init_impl(config, tasks, streams, evaluator);
}

double sbx_spread_factor(double u, double eta) {
    if (u <= 0.5) {
        return std::pow(2.0 * u, 1.0 / (eta + 1.0));
    }
    return std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
}

std::pair<RandomKeyVector, RandomKeyVector> sbx_crossover(const RandomKeyVector& p1,
                                                          const RandomKeyVector& p2, double eta,
                                                          Rng& rng) {
    if (p1.size() != p2.size()) {
        throw std::invalid_argument("sbx_crossover: parent length mismatch");
    }
    RandomKeyVector c1(p1.size());
    RandomKeyVector c2(p1.size());
    for (std::size_t i = 0; i < p1.size(); ++i) {
        const double beta = sbx_spread_factor(rng.uniform(), eta);
        // same algebra as 0.5*((1 +/- beta) p1 + (1 -/+ beta) p2), arranged
        // so that beta = 1 and p1 = p2 reproduce the parents bit-exactly
        const double half_gap = 0.5 * (1.0 - beta);
        c1[i] = clamp01(p1[i] + half_gap * (p2[i] - p1[i]));
        c2[i] = clamp01(p2[i] + half_gap * (p1[i] - p2[i]));
    }
    return {std::move(c1), std::move(c2)};
}

double polynomial_mutation_delta(double key, double u, double eta) {
    // bounded polynomial mutation on [0, 1]: the perturbation shrinks as
    // the key approaches the boundary it would cross
    const double mut_pow = 1.0 / (eta + 1.0);
    if (u <= 0.5) {
        const double xy = 1.0 - key;  // 1 - delta1, delta1 = key - 0
        const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta + 1.0);
        return std::pow(val, mut_pow) - 1.0;
    }
    const double xy = key;  // 1 - delta2, delta2 = 1 - key
    const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta + 1.0);
    return 1.0 - std::pow(val, mut_pow);
}

RandomKeyVector polynomial_mutation(const RandomKeyVector& chromosome, double eta, double prob,
                                    Rng& rng) {
    if (prob < 0.0 || prob > 1.0) {
        throw std::invalid_argument("polynomial_mutation: prob must lie in [0, 1]");
    }
    RandomKeyVector mutated = chromosome;
    for (auto& key : mutated) {
        if (rng.uniform() < prob) {
            key = clamp01(key + polynomial_mutation_delta(key, rng.uniform(), eta));
        }
    }
    return mutated;
}

int imitation_source(double draw) { return draw <= 0.5 ? 0 : 1; }

std::vector<Individual> generate_offspring(const Population& population,
                                           const EvolutionConfig& config, double mutation_prob,
                                           Rng& mating_rng, Rng& mutation_rng) {
    const auto& members = population.members;
    if (members.size() < 2) {
        throw std::invalid_argument("generate_offspring: need at least two parents");
    }
    const int task_count = members.front().task_count();
    const int d_multitask = static_cast<int>(members.front().chromosome.size());

    std::vector<std::size_t> order(members.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    shuffle_in_place(order, mating_rng);

    std::vector<Individual> offspring;
    offspring.reserve(members.size());

    auto emit = [&](RandomKeyVector chromosome, int skill) {
        Individual child = make_blank(d_multitask, task_count);
        child.chromosome = std::move(chromosome);
        child.skill_factor = skill;
        offspring.push_back(std::move(child));
    };

    for (std::size_t pair = 0; pair + 1 < order.size(); pair += 2) {
        const Individual& p1 = members[order[pair]];
        const Individual& p2 = members[order[pair + 1]];
        const bool same_skill = p1.skill_factor == p2.skill_factor;
        const bool transfer = same_skill || mating_rng.uniform() < config.rmp;
        if (transfer) {
            auto [c1, c2] = sbx_crossover(p1.chromosome, p2.chromosome, config.sbx_eta, mating_rng);
            c1 = polynomial_mutation(c1, config.mutation_eta, mutation_prob, mutation_rng);
            c2 = polynomial_mutation(c2, config.mutation_eta, mutation_prob, mutation_rng);
            // vertical cultural transmission: each child imitates one parent
            for (auto& chromosome : {&c1, &c2}) {
                const int source = imitation_source(mating_rng.uniform());
                emit(std::move(*chromosome), source == 0 ? p1.skill_factor : p2.skill_factor);
            }
        } else {
            emit(polynomial_mutation(p1.chromosome, config.mutation_eta, mutation_prob,
                                     mutation_rng),
                 p1.skill_factor);
            emit(polynomial_mutation(p2.chromosome, config.mutation_eta, mutation_prob,
                                     mutation_rng),
                 p2.skill_factor);
        }
    }
    return offspring;
}

void compute_factorial_ranks(Population& population, Rng& tie_rng) {
    auto& members = population.members;
    if (members.empty()) return;
    const int task_count = members.front().task_count();

    for (auto& member : members) {
        bool evaluated = false;
        for (const auto& cost : member.factorial_costs) evaluated = evaluated || cost.has_value();
        if (!evaluated) {
            throw std::logic_error("compute_factorial_ranks: member with no evaluated task");
        }
        member.factorial_ranks.assign(static_cast<std::size_t>(task_count), std::nullopt);
    }

    struct Entry {
        double cost;
        std::uint64_t tie_key;
        std::size_t index;
    };
    for (int task = 0; task < task_count; ++task) {
        std::vector<Entry> entries;
        for (std::size_t i = 0; i < members.size(); ++i) {
            const auto& cost = members[i].factorial_costs[static_cast<std::size_t>(task)];
            if (cost) entries.push_back({*cost, tie_rng.raw(), i});
        }
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            if (a.cost != b.cost) return a.cost < b.cost;
            if (a.tie_key != b.tie_key) return a.tie_key < b.tie_key;
            return a.index < b.index;
        });
        for (std::size_t pos = 0; pos < entries.size(); ++pos) {
            members[entries[pos].index].factorial_ranks[static_cast<std::size_t>(task)] =
                static_cast<int>(pos + 1);
        }
    }
}

void compute_scalar_fitness(Population& population) {
    for (auto& member : population.members) {
        int ranked_tasks = 0;
        int best_task = -1;
        int best_rank = std::numeric_limits<int>::max();
        for (int task = 0; task < member.task_count(); ++task) {
            const auto& rank = member.factorial_ranks[static_cast<std::size_t>(task)];
            if (!rank) continue;
            ++ranked_tasks;
            if (*rank < best_rank) {
                best_rank = *rank;
                best_task = task;
            }
        }
        const auto& skill_rank = member.factorial_ranks[static_cast<std::size_t>(member.skill_factor)];
        if (ranked_tasks == 1 && skill_rank) {
            // selective evaluation: the assigned skill factor stays
            member.scalar_fitness = 1.0 / static_cast<double>(*skill_rank);
        } else if (ranked_tasks > 1) {
            // fully-evaluated mode: skill moves to the best-ranked task
            member.skill_factor = best_task;
            member.scalar_fitness = 1.0 / static_cast<double>(best_rank);
        } else {
            throw std::logic_error("compute_scalar_fitness: member lacks a rank on its skill task");
        }
    }
}

Population elitist_select(const Population& pool, int n, Rng& tie_rng) {
    if (static_cast<int>(pool.members.size()) < n) {
        throw std::invalid_argument("elitist_select: pool smaller than requested survivors");
    }
    struct Entry {
        double fitness;
        double own_cost;
        std::uint64_t tie_key;
        std::size_t index;
    };
    std::vector<Entry> entries;
    entries.reserve(pool.members.size());
    for (std::size_t i = 0; i < pool.members.size(); ++i) {
        const auto& member = pool.members[i];
        if (!member.scalar_fitness) {
            throw std::invalid_argument("elitist_select: scalar fitness not computed");
        }
        const auto& own = member.factorial_costs[static_cast<std::size_t>(member.skill_factor)];
        entries.push_back({*member.scalar_fitness,
                           own ? *own : std::numeric_limits<double>::infinity(), tie_rng.raw(), i});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.fitness != b.fitness) return a.fitness > b.fitness;
        if (a.own_cost != b.own_cost) return a.own_cost < b.own_cost;
        if (a.tie_key != b.tie_key) return a.tie_key < b.tie_key;
        return a.index < b.index;
    });

    Population next;
    next.generation = pool.generation;
    next.members.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        next.members.push_back(pool.members[entries[static_cast<std::size_t>(i)].index]);
    }
    return next;
}

RunTrace run_multitask(std::span<const TaskSpec> tasks, const EvolutionConfig& config,
                       std::string algorithm_label, const GenerationObserver& observer) {
    if (tasks.empty()) throw std::invalid_argument("run_multitask: no tasks");
    validate_config(config, static_cast<int>(tasks.size()));

    int d_multitask = 0;
    for (const auto& task : tasks) d_multitask = std::max(d_multitask, task.dimension);
    const double mutation_prob = resolve_mutation_prob(config, d_multitask);

    RngStreams streams = make_streams(config.seed);
    Evaluator evaluator(tasks, config.penalty_lambda);

    RunTrace trace;
    trace.algorithm = std::move(algorithm_label);
    trace.seed = config.seed;

    Population population = init_impl(config, tasks, streams, evaluator);
    if (observer) observer(population);
    trace.per_generation.push_back({0, evaluator.evaluations, evaluator.best});

    while (evaluator.evaluations + config.population_size <= config.eval_budget) {
        std::vector<Individual> offspring =
            generate_offspring(population, config, mutation_prob, streams.mating, streams.mutation);
        for (auto& child : offspring) evaluator.evaluate_on_skill_task(child);

        Population pool;
        pool.generation = population.generation;
        pool.members = std::move(population.members);
        pool.members.insert(pool.members.end(), std::make_move_iterator(offspring.begin()),
                            std::make_move_iterator(offspring.end()));
        compute_factorial_ranks(pool, streams.ties);
        compute_scalar_fitness(pool);
        if (observer) observer(pool);

        population = elitist_select(pool, config.population_size, streams.ties);
        ++population.generation;
        trace.per_generation.push_back(
            {population.generation, evaluator.evaluations, evaluator.best});
    }

    trace.final_best = evaluator.best;
    return trace;
}

RunTrace run_mfea(const CompositeProblem& problem, const EvolutionConfig& config,
                  const GenerationObserver& observer) {
    const TaskSpec tasks[] = {problem.task1, problem.task2};
    return run_multitask(tasks, config, "mfea", observer);
}

RunTrace run_soea(const TaskSpec& task, const EvolutionConfig& config,
                  const GenerationObserver& observer) {
    return run_multitask({&task, 1}, config, "soea", observer);
}

}  // namespace mtevo
