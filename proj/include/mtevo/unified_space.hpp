#ifndef MTEVO_UNIFIED_SPACE_HPP
#define MTEVO_UNIFIED_SPACE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mtevo/base_function.hpp"

namespace mtevo {

/// A chromosome in the unified genotype space: random keys in [0, 1].
/// Genetic operators are responsible for clamping children back into range.
using RandomKeyVector = std::vector<double>;

/// Maximum allowed max-norm of Mᵀ·M − I for a matrix to count as a rotation.
inline constexpr double kOrthogonalityTolerance = 1e-9;

/// Square orthogonal matrix, validated at construction.
class RotationMatrix {
  public:
    RotationMatrix() = default;

    /// Takes dimension x dimension entries in row-major order.
    /// Throws std::invalid_argument if the size is wrong or the matrix
    /// fails the orthogonality check.
    RotationMatrix(int dimension, std::vector<double> row_major);

    int dimension() const { return dim_; }
    double at(int row, int col) const { return entries_[static_cast<std::size_t>(row) * dim_ + col]; }
    const std::vector<double>& entries() const { return entries_; }

    /// M · v
    std::vector<double> apply(std::span<const double> v) const;

    /// max-norm of Mᵀ·M − I
    double orthogonality_residual() const;

  private:
    int dim_ = 0;
    std::vector<double> entries_;
};

/// One optimization task: base function plus search-space geometry.
/// All benchmark boxes use the same bound on every axis. The stored
/// optimum is the task-space minimizer, kept for verification only.
struct TaskSpec {
    BaseFunctionId function_id = BaseFunctionId::Sphere;
    int dimension = 0;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    std::optional<RotationMatrix> rotation;
    std::optional<std::vector<double>> shift;
    std::vector<double> optimum;
};

/// Linearly maps the first `task.dimension` keys into the task's box:
/// x_i = lower + y_i * (upper - lower).
std::vector<double> decode(const RandomKeyVector& keys, const TaskSpec& task);

/// z = M · (x − o). Missing rotation acts as identity, missing shift as
/// zero; with both absent the input is returned bit-exactly.
std::vector<double> transform_input(std::span<const double> x,
                                    const std::optional<RotationMatrix>& rotation,
                                    const std::optional<std::vector<double>>& shift);

/// Deterministic orthogonal matrix: QR-style orthonormalization of a
/// seeded standard-normal matrix, with the sign convention that makes the
/// factorization unique. Same (dimension, seed) gives bit-identical output.
RotationMatrix generate_rotation_matrix(int dimension, std::uint64_t seed);

/// Reads a plain-text matrix: `dimension` lines of `dimension` fields,
/// separated by commas or whitespace. Throws std::runtime_error on parse
/// problems and std::invalid_argument if the content is not orthogonal.
RotationMatrix load_rotation_matrix(const std::filesystem::path& path, int dimension);

}  // namespace mtevo

#endif
