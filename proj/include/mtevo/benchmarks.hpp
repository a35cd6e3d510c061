#ifndef MTEVO_BENCHMARKS_HPP
#define MTEVO_BENCHMARKS_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mtevo/unified_space.hpp"

namespace mtevo {

enum class IntersectionDegree { Complete, Partial, None };
enum class SimilarityBand { Low, Medium, High };

std::string_view intersection_name(IntersectionDegree degree);
std::string_view band_name(SimilarityBand band);

/// A two-task benchmark plus its catalog metadata. reference_similarity is
/// the reference rank-correlation value carried as catalog metadata; the
/// similarity module recomputes the live value for whatever matrices are in
/// use.
struct CompositeProblem {
    std::string name;  // display form, e.g. "CI+HS"
    std::string key;   // file-safe form, e.g. "CIHS"
    TaskSpec task1;
    TaskSpec task2;
    IntersectionDegree intersection = IntersectionDegree::Complete;
    SimilarityBand similarity_band = SimilarityBand::High;
    double reference_similarity = 0.0;

    int d_multitask() const { return std::max(task1.dimension, task2.dimension); }
    const TaskSpec& task(int index) const { return index == 0 ? task1 : task2; }
};

/// Rotation matrices are either generated from a seed or loaded from a
/// directory holding one `<problem>_<task>.txt` file per rotated task
/// (e.g. CIHS_T1.txt) in the plain-text matrix format.
struct GeneratedMatrices {
    std::uint64_t seed = 0;
};
struct MatrixDirectory {
    std::filesystem::path path;
};
using MatrixSource = std::variant<GeneratedMatrices, MatrixDirectory>;

/// Objective value of one base function at z, exactly as defined.
double eval_base_function(BaseFunctionId id, std::span<const double> z);

/// Applies the task's shift/rotation and evaluates its base function.
double eval_task(const TaskSpec& task, std::span<const double> x);

/// Accepts either the display name ("CI+HS") or the key ("CIHS"),
/// case-insensitively. Throws std::invalid_argument for unknown names.
CompositeProblem build_benchmark(std::string_view name, const MatrixSource& source);

struct BenchmarkInfo {
    std::string name;
    std::string key;
    std::string task1_summary;
    std::string task2_summary;
    IntersectionDegree intersection;
    SimilarityBand similarity_band;
    double reference_similarity;
};

/// The nine problems in catalog order, CI+HS first, NI+LS last.
std::vector<BenchmarkInfo> list_benchmarks();

/// "ci+hs" / "CIHS" / "CI+HS" -> "CIHS"; returns empty if unknown.
std::string normalize_problem_key(std::string_view name);

}  // namespace mtevo

#endif
