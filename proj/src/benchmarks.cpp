#include "mtevo/benchmarks.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "mtevo/rng.hpp"

namespace mtevo {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sphere(std::span<const double> z) {
    double sum = 0.0;
    for (double v : z) sum += v * v;
    return sum;
}

double rosenbrock(std::span<const double> z) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        double a = z[i] * z[i] - z[i + 1];
        double b = z[i] - 1.0;
        sum += 100.0 * a * a + b * b;
    }
    return sum;
}

double ackley(std::span<const double> z) {
    const double d = static_cast<double>(z.size());
    double sq = 0.0;
    double cs = 0.0;
    for (double v : z) {
        sq += v * v;
        cs += std::cos(2.0 * kPi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / d)) - std::exp(cs / d) + 20.0 + std::exp(1.0);
}

double rastrigin(std::span<const double> z) {
    double sum = 0.0;
    for (double v : z) sum += v * v - 10.0 * std::cos(2.0 * kPi * v) + 10.0;
    return sum;
}

double griewank(std::span<const double> z) {
    double sum = 0.0;
    double prod = 1.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        sum += z[i] * z[i];
        prod *= std::cos(z[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return 1.0 + sum / 4000.0 - prod;
}

// a = 0.5, b = 3, k_max = 20; the x-independent term is precomputed once
double weierstrass(std::span<const double> z) {
    constexpr int kMax = 20;
    constexpr double a = 0.5;
    constexpr double b = 3.0;
    struct Tables {
        std::array<double, kMax + 1> a_pow;
        std::array<double, kMax + 1> b_pow;
        double center_term;
    };
    static const Tables tables = [] {
        Tables t{};
        t.center_term = 0.0;
        for (int k = 0; k <= kMax; ++k) {
            t.a_pow[k] = std::pow(a, k);
            t.b_pow[k] = std::pow(b, k);
            t.center_term += t.a_pow[k] * std::cos(2.0 * kPi * t.b_pow[k] * 0.5);
        }
        return t;
    }();

    double sum = 0.0;
    for (double v : z) {
        for (int k = 0; k <= kMax; ++k) {
            sum += tables.a_pow[k] * std::cos(2.0 * kPi * tables.b_pow[k] * (v + 0.5));
        }
    }
    return sum - static_cast<double>(z.size()) * tables.center_term;
}

double schwefel(std::span<const double> z) {
    double sum = 0.0;
    for (double v : z) sum += v * std::sin(std::sqrt(std::abs(v)));
    return 418.9829 * static_cast<double>(z.size()) - sum;
}

struct ProblemRecipe {
    const char* key;
    const char* name;
    IntersectionDegree intersection;
    SimilarityBand band;
    double reference_similarity;
    struct TaskRecipe {
        BaseFunctionId function;
        int dimension;
        double lower;
        double upper;
        bool rotated;
        // shift patterns: none, constant, half-and-half
        enum class Shift { None, Constant, HalfHalf } shift_kind;
        double shift_a;  // constant value, or first-half value
        double shift_b;  // second-half value (HalfHalf only)
    } task1, task2;
};

using Shift = ProblemRecipe::TaskRecipe::Shift;

// The nine problem definitions: function, dimension, box, rotation
// presence, and optimum shift per task.
constexpr std::array<ProblemRecipe, 9> kRecipes{{
    {"CIHS", "CI+HS", IntersectionDegree::Complete, SimilarityBand::High, 1.0000,
     {BaseFunctionId::Griewank, 50, -100.0, 100.0, true, Shift::None, 0.0, 0.0},
     {BaseFunctionId::Rastrigin, 50, -50.0, 50.0, true, Shift::None, 0.0, 0.0}},
    {"CIMS", "CI+MS", IntersectionDegree::Complete, SimilarityBand::Medium, 0.2261,
     {BaseFunctionId::Ackley, 50, -50.0, 50.0, true, Shift::None, 0.0, 0.0},
     {BaseFunctionId::Rastrigin, 50, -50.0, 50.0, true, Shift::None, 0.0, 0.0}},
    {"CILS", "CI+LS", IntersectionDegree::Complete, SimilarityBand::Low, 0.0002,
     {BaseFunctionId::Ackley, 50, -50.0, 50.0, true, Shift::Constant, 42.0969, 0.0},
     {BaseFunctionId::Schwefel, 50, -500.0, 500.0, false, Shift::None, 0.0, 0.0}},
    {"PIHS", "PI+HS", IntersectionDegree::Partial, SimilarityBand::High, 0.8670,
     {BaseFunctionId::Rastrigin, 50, -50.0, 50.0, true, Shift::None, 0.0, 0.0},
     {BaseFunctionId::Sphere, 50, -100.0, 100.0, false, Shift::HalfHalf, 0.0, 20.0}},
    {"PIMS", "PI+MS", IntersectionDegree::Partial, SimilarityBand::Medium, 0.2154,
     {BaseFunctionId::Ackley, 50, -50.0, 50.0, true, Shift::HalfHalf, 0.0, 1.0},
     {BaseFunctionId::Rosenbrock, 50, -50.0, 50.0, false, Shift::None, 0.0, 0.0}},
    {"PILS", "PI+LS", IntersectionDegree::Partial, SimilarityBand::Low, 0.0725,
     {BaseFunctionId::Ackley, 50, -50.0, 50.0, true, Shift::None, 0.0, 0.0},
     {BaseFunctionId::Weierstrass, 25, -0.5, 0.5, true, Shift::None, 0.0, 0.0}},
    {"NIHS", "NI+HS", IntersectionDegree::None, SimilarityBand::High, 0.9434,
     {BaseFunctionId::Rosenbrock, 50, -50.0, 50.0, false, Shift::None, 0.0, 0.0},
     {BaseFunctionId::Rastrigin, 50, -50.0, 50.0, true, Shift::None, 0.0, 0.0}},
    {"NIMS", "NI+MS", IntersectionDegree::None, SimilarityBand::Medium, 0.3669,
     {BaseFunctionId::Griewank, 50, -100.0, 100.0, true, Shift::Constant, 10.0, 0.0},
     {BaseFunctionId::Weierstrass, 50, -0.5, 0.5, true, Shift::None, 0.0, 0.0}},
    {"NILS", "NI+LS", IntersectionDegree::None, SimilarityBand::Low, 0.0016,
     {BaseFunctionId::Rastrigin, 50, -50.0, 50.0, true, Shift::None, 0.0, 0.0},
     {BaseFunctionId::Schwefel, 50, -500.0, 500.0, false, Shift::None, 0.0, 0.0}},
}};

std::vector<double> make_shift(const ProblemRecipe::TaskRecipe& recipe) {
    std::vector<double> shift(static_cast<std::size_t>(recipe.dimension), recipe.shift_a);
    if (recipe.shift_kind == Shift::HalfHalf) {
        for (std::size_t i = shift.size() / 2; i < shift.size(); ++i) shift[i] = recipe.shift_b;
    }
    return shift;
}

TaskSpec make_task(const ProblemRecipe::TaskRecipe& recipe, const std::string& problem_key,
                   int task_index, const MatrixSource& source) {
    TaskSpec task;
    task.function_id = recipe.function;
    task.dimension = recipe.dimension;
    task.lower_bound = recipe.lower;
    task.upper_bound = recipe.upper;

    if (recipe.shift_kind != Shift::None) {
        task.shift = make_shift(recipe);
    }

    if (recipe.rotated) {
        const std::string matrix_id = problem_key + "_T" + std::to_string(task_index);
        if (const auto* generated = std::get_if<GeneratedMatrices>(&source)) {
            std::uint64_t seed = splitmix64(generated->seed ^ fnv1a64("matrix|" + matrix_id));
            task.rotation = generate_rotation_matrix(recipe.dimension, seed);
        } else {
            const auto& dir = std::get<MatrixDirectory>(source);
            task.rotation = load_rotation_matrix(dir.path / (matrix_id + ".txt"), recipe.dimension);
        }
    }

    // x* in task space: the function's canonical minimizer plus the shift
    double base_opt = recipe.function == BaseFunctionId::Rosenbrock ? 1.0
                      : recipe.function == BaseFunctionId::Schwefel ? 420.9687
                                                                    : 0.0;
    task.optimum.assign(static_cast<std::size_t>(recipe.dimension), base_opt);
    if (task.shift) {
        for (std::size_t i = 0; i < task.optimum.size(); ++i) task.optimum[i] += (*task.shift)[i];
    }
    return task;
}

}  // namespace

std::string_view intersection_name(IntersectionDegree degree) {
    switch (degree) {
        case IntersectionDegree::Complete: return "complete";
        case IntersectionDegree::Partial: return "partial";
        case IntersectionDegree::None: return "none";
    }
    return "unknown";
}

std::string_view band_name(SimilarityBand band) {
    switch (band) {
        case SimilarityBand::Low: return "low";
        case SimilarityBand::Medium: return "medium";
        case SimilarityBand::High: return "high";
    }
    return "unknown";
}

double eval_base_function(BaseFunctionId id, std::span<const double> z) {
    if (z.empty()) {
        throw std::invalid_argument("eval_base_function: empty input vector");
    }
    switch (id) {
        case BaseFunctionId::Sphere: return sphere(z);
        case BaseFunctionId::Rosenbrock: return rosenbrock(z);
        case BaseFunctionId::Ackley: return ackley(z);
        case BaseFunctionId::Rastrigin: return rastrigin(z);
        case BaseFunctionId::Griewank: return griewank(z);
        case BaseFunctionId::Weierstrass: return weierstrass(z);
        case BaseFunctionId::Schwefel: return schwefel(z);
    }
    throw std::invalid_argument("eval_base_function: unknown function id");
}

double eval_task(const TaskSpec& task, std::span<const double> x) {
    if (x.size() != static_cast<std::size_t>(task.dimension)) {
        throw std::invalid_argument("eval_task: input length does not match task dimension");
    }
    std::vector<double> z = transform_input(x, task.rotation, task.shift);
    return eval_base_function(task.function_id, z);
}

std::string normalize_problem_key(std::string_view name) {
    std::string key;
    key.reserve(name.size());
    for (char c : name) {
        if (c == '+' || c == ' ') continue;
        key.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    for (const auto& recipe : kRecipes) {
        if (key == recipe.key) return key;
    }
    return {};
}

CompositeProblem build_benchmark(std::string_view name, const MatrixSource& source) {
    const std::string key = normalize_problem_key(name);
    if (key.empty()) {
        throw std::invalid_argument("unknown benchmark name: " + std::string(name));
    }
    const ProblemRecipe* recipe = nullptr;
    for (const auto& r : kRecipes) {
        if (key == r.key) recipe = &r;
    }

    CompositeProblem problem;
    problem.key = recipe->key;
    problem.name = recipe->name;
    problem.intersection = recipe->intersection;
    problem.similarity_band = recipe->band;
    problem.reference_similarity = recipe->reference_similarity;
    problem.task1 = make_task(recipe->task1, problem.key, 1, source);
    problem.task2 = make_task(recipe->task2, problem.key, 2, source);
    return problem;
}

std::vector<BenchmarkInfo> list_benchmarks() {
    std::vector<BenchmarkInfo> catalog;
    catalog.reserve(kRecipes.size());
    for (const auto& recipe : kRecipes) {
        auto summary = [](const ProblemRecipe::TaskRecipe& t) {
            std::string s = std::to_string(t.dimension) + "D ";
            if (t.rotated && t.shift_kind != Shift::None) {
                s += "rotated+shifted ";
            } else if (t.rotated) {
                s += "rotated ";
            } else if (t.shift_kind != Shift::None) {
                s += "shifted ";
            }
            s += base_function_name(t.function);
            return s;
        };
        catalog.push_back({recipe.name, recipe.key, summary(recipe.task1), summary(recipe.task2),
                           recipe.intersection, recipe.band, recipe.reference_similarity});
    }
    return catalog;
}

}  // namespace mtevo
