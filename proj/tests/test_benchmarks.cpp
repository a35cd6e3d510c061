#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "mtevo/benchmarks.hpp"
#include "mtevo/rng.hpp"

using namespace mtevo;

namespace {

std::vector<double> constant_vector(int n, double v) {
    return std::vector<double>(static_cast<std::size_t>(n), v);
}

const MatrixSource kGenerated = GeneratedMatrices{7};

}  // namespace

TEST_CASE("base functions hit their known values") {
    CHECK(eval_base_function(BaseFunctionId::Sphere, std::vector<double>{3.0, 4.0}) ==
          doctest::Approx(25.0));
    CHECK(eval_base_function(BaseFunctionId::Rosenbrock, constant_vector(50, 1.0)) ==
          doctest::Approx(0.0));
    CHECK(std::abs(eval_base_function(BaseFunctionId::Ackley, constant_vector(10, 0.0))) < 1e-12);
    CHECK(eval_base_function(BaseFunctionId::Rastrigin, constant_vector(10, 0.0)) ==
          doctest::Approx(0.0));
    CHECK(eval_base_function(BaseFunctionId::Griewank, constant_vector(10, 0.0)) ==
          doctest::Approx(0.0));
    CHECK(std::abs(eval_base_function(BaseFunctionId::Weierstrass, constant_vector(25, 0.0))) <
          1e-9);
    // four-decimal truncation of the Schwefel optimum leaves a small residual
    CHECK(std::abs(eval_base_function(BaseFunctionId::Schwefel, constant_vector(50, 420.9687))) <
          1e-3);
}

TEST_CASE("base functions reject empty input") {
    CHECK_THROWS_AS(eval_base_function(BaseFunctionId::Sphere, std::vector<double>{}),
                    std::invalid_argument);
}

TEST_CASE("separable functions are permutation invariant") {
    Rng rng(11);
    for (auto id : {BaseFunctionId::Sphere, BaseFunctionId::Rastrigin}) {
        std::vector<double> z(20);
        for (auto& v : z) v = rng.uniform(-5.0, 5.0);
        const double before = eval_base_function(id, z);
        auto shuffled = z;
        shuffle_in_place(shuffled, rng);
        CHECK(eval_base_function(id, shuffled) == doctest::Approx(before).epsilon(1e-9));
    }
}

TEST_CASE("eval_task composes shift, rotation, and base function") {
    auto cihs = build_benchmark("CI+HS", kGenerated);
    CHECK(eval_task(cihs.task2, constant_vector(50, 0.0)) == doctest::Approx(0.0));

    auto pihs = build_benchmark("PIHS", kGenerated);
    REQUIRE(pihs.task2.shift.has_value());
    CHECK(eval_task(pihs.task2, *pihs.task2.shift) == doctest::Approx(0.0));

    auto nihs = build_benchmark("NIHS", kGenerated);
    CHECK(eval_task(nihs.task1, constant_vector(50, 1.0)) == doctest::Approx(0.0));

    CHECK_THROWS_AS(eval_task(cihs.task1, constant_vector(10, 0.0)), std::invalid_argument);
}

TEST_CASE("the catalog lists nine problems in order and they all build") {
    auto catalog = list_benchmarks();
    REQUIRE(catalog.size() == 9);
    CHECK(catalog.front().key == "CIHS");
    CHECK(catalog.back().key == "NILS");

    int complete = 0;
    int partial = 0;
    int none = 0;
    int low = 0;
    int medium = 0;
    int high = 0;
    for (const auto& info : catalog) {
        auto problem = build_benchmark(info.key, kGenerated);
        CHECK(problem.key == info.key);
        complete += problem.intersection == IntersectionDegree::Complete;
        partial += problem.intersection == IntersectionDegree::Partial;
        none += problem.intersection == IntersectionDegree::None;
        low += problem.similarity_band == SimilarityBand::Low;
        medium += problem.similarity_band == SimilarityBand::Medium;
        high += problem.similarity_band == SimilarityBand::High;
    }
    CHECK(complete == 3);
    CHECK(partial == 3);
    CHECK(none == 3);
    CHECK(low == 3);
    CHECK(medium == 3);
    CHECK(high == 3);
}

TEST_CASE("build_benchmark wires the full problem definitions") {
    auto cihs = build_benchmark("CIHS", kGenerated);
    CHECK(cihs.name == "CI+HS");
    CHECK(cihs.d_multitask() == 50);
    CHECK(cihs.task1.function_id == BaseFunctionId::Griewank);
    CHECK(cihs.task1.lower_bound == -100.0);
    CHECK(cihs.task1.rotation.has_value());
    CHECK_FALSE(cihs.task1.shift.has_value());
    CHECK(cihs.task2.function_id == BaseFunctionId::Rastrigin);
    CHECK(cihs.intersection == IntersectionDegree::Complete);
    CHECK(cihs.reference_similarity == doctest::Approx(1.0));

    auto cils = build_benchmark("CILS", kGenerated);
    CHECK(cils.task1.function_id == BaseFunctionId::Ackley);
    REQUIRE(cils.task1.shift.has_value());
    CHECK((*cils.task1.shift)[0] == doctest::Approx(42.0969));
    CHECK(cils.task2.function_id == BaseFunctionId::Schwefel);
    CHECK_FALSE(cils.task2.rotation.has_value());
    CHECK(cils.task2.lower_bound == -500.0);

    auto pihs = build_benchmark("PIHS", kGenerated);
    REQUIRE(pihs.task2.shift.has_value());
    CHECK((*pihs.task2.shift)[0] == 0.0);
    CHECK((*pihs.task2.shift)[24] == 0.0);
    CHECK((*pihs.task2.shift)[25] == 20.0);
    CHECK((*pihs.task2.shift)[49] == 20.0);

    // the shifted optimum location requires an explicit shift term
    auto pims = build_benchmark("PIMS", kGenerated);
    REQUIRE(pims.task1.shift.has_value());
    CHECK((*pims.task1.shift)[0] == 0.0);
    CHECK((*pims.task1.shift)[49] == 1.0);
    CHECK_FALSE(pims.task2.rotation.has_value());

    auto pils = build_benchmark("PILS", kGenerated);
    CHECK(pils.task2.dimension == 25);
    CHECK(pils.d_multitask() == 50);
    CHECK(pils.task2.lower_bound == -0.5);

    auto nims = build_benchmark("NIMS", kGenerated);
    CHECK(nims.task2.dimension == 50);
    CHECK(nims.task2.function_id == BaseFunctionId::Weierstrass);
    REQUIRE(nims.task1.shift.has_value());
    CHECK((*nims.task1.shift)[0] == 10.0);

    // NI+LS task 1 gets its own matrix rather than sharing PI+HS's
    auto nils = build_benchmark("NILS", kGenerated);
    REQUIRE(nils.task1.rotation.has_value());
    REQUIRE(pihs.task1.rotation.has_value());
    CHECK(nils.task1.rotation->entries() != pihs.task1.rotation->entries());

    CHECK_THROWS_AS(build_benchmark("XXYZ", kGenerated), std::invalid_argument);
}

TEST_CASE("every task evaluates to ~zero at its stored optimum") {
    for (const auto& info : list_benchmarks()) {
        auto problem = build_benchmark(info.key, kGenerated);
        for (int t = 0; t < 2; ++t) {
            const TaskSpec& task = problem.task(t);
            const double tolerance =
                task.function_id == BaseFunctionId::Schwefel ? 1e-3 : 1e-6;
            const double cost = eval_task(task, task.optimum);
            INFO(info.key, " task ", t + 1);
            CHECK(std::abs(cost) < tolerance);
            for (double v : task.optimum) {
                CHECK(v >= task.lower_bound);
                CHECK(v <= task.upper_bound);
            }
        }
    }
}

TEST_CASE("CI+LS optima intersect in the unified space at printed precision") {
    auto cils = build_benchmark("CILS", kGenerated);
    RandomKeyVector shared_key(50, 0.9209687);
    auto x1 = decode(shared_key, cils.task1);
    auto x2 = decode(shared_key, cils.task2);
    CHECK(x1[0] == doctest::Approx(42.0969).epsilon(1e-4));
    CHECK(x2[0] == doctest::Approx(420.9687).epsilon(1e-12));
}

TEST_CASE("sampled costs never drop below the optimum floor") {
    Rng rng(23);
    for (const auto& info : list_benchmarks()) {
        auto problem = build_benchmark(info.key, kGenerated);
        for (int t = 0; t < 2; ++t) {
            const TaskSpec& task = problem.task(t);
            RandomKeyVector keys(static_cast<std::size_t>(problem.d_multitask()));
            for (int trial = 0; trial < 50; ++trial) {
                for (auto& k : keys) k = rng.uniform();
                CHECK(eval_task(task, decode(keys, task)) > -1e-6);
            }
        }
    }
}

TEST_CASE("deterministic evaluation and matrix generation") {
    auto a = build_benchmark("CIMS", GeneratedMatrices{99});
    auto b = build_benchmark("CIMS", GeneratedMatrices{99});
    CHECK(a.task1.rotation->entries() == b.task1.rotation->entries());

    Rng rng(3);
    RandomKeyVector keys(50);
    for (auto& k : keys) k = rng.uniform();
    auto x = decode(keys, a.task1);
    CHECK(eval_task(a.task1, x) == eval_task(b.task1, x));  // bit-identical
}

TEST_CASE("matrix directory source loads and validates files") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "mtevo_matrices";
    fs::create_directories(dir);

    // write the generated CIMS matrices out, then rebuild from disk
    auto generated = build_benchmark("CIMS", GeneratedMatrices{5});
    for (int t = 1; t <= 2; ++t) {
        const auto& m = t == 1 ? *generated.task1.rotation : *generated.task2.rotation;
        std::ofstream out(dir / ("CIMS_T" + std::to_string(t) + ".txt"));
        out.precision(17);
        for (int r = 0; r < m.dimension(); ++r) {
            for (int c = 0; c < m.dimension(); ++c) {
                out << m.at(r, c) << (c + 1 == m.dimension() ? '\n' : ' ');
            }
        }
    }
    auto loaded = build_benchmark("CIMS", MatrixDirectory{dir});
    CHECK(loaded.task1.rotation->orthogonality_residual() < 1e-9);
    CHECK(std::abs(loaded.task1.rotation->at(0, 0) - generated.task1.rotation->at(0, 0)) < 1e-16);

    // missing file for a rotated task
    CHECK_THROWS_AS(build_benchmark("CIHS", MatrixDirectory{dir}), std::runtime_error);
}
