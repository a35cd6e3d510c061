#include "mtevo/unified_space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mtevo/rng.hpp"

namespace mtevo {

RotationMatrix::RotationMatrix(int dimension, std::vector<double> row_major)
    : dim_(dimension), entries_(std::move(row_major)) {
    if (dimension < 1) {
        throw std::invalid_argument("rotation matrix dimension must be >= 1");
    }
    if (entries_.size() != static_cast<std::size_t>(dimension) * dimension) {
        throw std::invalid_argument("rotation matrix entry count does not match dimension");
    }
    double residual = orthogonality_residual();
    if (!(residual < kOrthogonalityTolerance)) {
        std::ostringstream msg;
        msg << "matrix is not orthogonal: max-norm of M'M - I is " << residual;
        throw std::invalid_argument(msg.str());
    }
}

std::vector<double> RotationMatrix::apply(std::span<const double> v) const {
    if (v.size() != static_cast<std::size_t>(dim_)) {
        throw std::invalid_argument("rotation dimension mismatch");
    }
    std::vector<double> out(static_cast<std::size_t>(dim_), 0.0);
    for (int r = 0; r < dim_; ++r) {
        const double* row = entries_.data() + static_cast<std::size_t>(r) * dim_;
        double acc = 0.0;
        for (int c = 0; c < dim_; ++c) acc += row[c] * v[static_cast<std::size_t>(c)];
        out[static_cast<std::size_t>(r)] = acc;
    }
    return out;
}

double RotationMatrix::orthogonality_residual() const {
    // columns of M are rows of Mᵀ; residual = max |<col_i, col_j> - delta_ij|
    double worst = 0.0;
    for (int i = 0; i < dim_; ++i) {
        for (int j = i; j < dim_; ++j) {
            double dot = 0.0;
            for (int r = 0; r < dim_; ++r) {
                dot += at(r, i) * at(r, j);
            }
            double target = (i == j) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(dot - target));
        }
    }
    return worst;
}

std::vector<double> decode(const RandomKeyVector& keys, const TaskSpec& task) {
    if (task.dimension < 0 || static_cast<std::size_t>(task.dimension) > keys.size()) {
        throw std::invalid_argument("decode: task dimension exceeds chromosome length");
    }
    std::vector<double> x(static_cast<std::size_t>(task.dimension));
    const double span = task.upper_bound - task.lower_bound;
    for (int i = 0; i < task.dimension; ++i) {
        x[static_cast<std::size_t>(i)] = task.lower_bound + keys[static_cast<std::size_t>(i)] * span;
    }
    return x;
}

std::vector<double> transform_input(std::span<const double> x,
                                    const std::optional<RotationMatrix>& rotation,
                                    const std::optional<std::vector<double>>& shift) {
    if (shift && shift->size() != x.size()) {
        throw std::invalid_argument("transform_input: shift length mismatch");
    }
    if (rotation && rotation->dimension() != static_cast<int>(x.size())) {
        throw std::invalid_argument("transform_input: rotation dimension mismatch");
    }
    std::vector<double> shifted(x.begin(), x.end());
    if (shift) {
        for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] -= (*shift)[i];
    }
    if (!rotation) return shifted;
    return rotation->apply(shifted);
}

RotationMatrix generate_rotation_matrix(int dimension, std::uint64_t seed) {
    if (dimension < 1) {
        throw std::invalid_argument("generate_rotation_matrix: dimension must be >= 1");
    }
    const auto n = static_cast<std::size_t>(dimension);
    Rng rng(splitmix64(seed ^ fnv1a64("rotation-matrix")));

    // columns of a standard-normal matrix, filled column by column
    std::vector<std::vector<double>> cols(n, std::vector<double>(n));
    for (auto& col : cols) {
        for (auto& v : col) v = rng.normal();
    }

    // modified Gram-Schmidt; residual norms are positive, which fixes the
    // sign convention and makes the result the unique positive-diagonal
    // QR factor (Haar-distributed for normal input)
    for (std::size_t j = 0; j < n; ++j) {
        auto& q = cols[j];
        for (std::size_t k = 0; k < j; ++k) {
            const auto& prev = cols[k];
            double proj = 0.0;
            for (std::size_t i = 0; i < n; ++i) proj += prev[i] * q[i];
            for (std::size_t i = 0; i < n; ++i) q[i] -= proj * prev[i];
        }
        double norm = 0.0;
        for (double v : q) norm += v * v;
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            throw std::runtime_error("generate_rotation_matrix: degenerate sample");
        }
        for (auto& v : q) v /= norm;
    }

    std::vector<double> row_major(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) row_major[r * n + c] = cols[c][r];
    }
    return RotationMatrix(dimension, std::move(row_major));
}

RotationMatrix load_rotation_matrix(const std::filesystem::path& path, int dimension) {
    if (dimension < 1) {
        throw std::invalid_argument("load_rotation_matrix: dimension must be >= 1");
    }
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open rotation matrix file: " + path.string());
    }

    std::vector<double> entries;
    entries.reserve(static_cast<std::size_t>(dimension) * dimension);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        // tolerate CRLF and comma separators
        std::replace(line.begin(), line.end(), ',', ' ');
        std::replace(line.begin(), line.end(), '\r', ' ');
        std::istringstream fields(line);
        std::vector<double> row;
        double v;
        while (fields >> v) row.push_back(v);
        if (!fields.eof()) {
            throw std::runtime_error("matrix format error: non-numeric field in " + path.string());
        }
        if (row.empty()) continue;  // blank line
        if (static_cast<int>(row.size()) != dimension) {
            std::ostringstream msg;
            msg << "matrix format error: row " << rows + 1 << " of " << path.string() << " has "
                << row.size() << " fields, expected " << dimension;
            throw std::runtime_error(msg.str());
        }
        entries.insert(entries.end(), row.begin(), row.end());
        ++rows;
    }
    if (rows != dimension) {
        std::ostringstream msg;
        msg << "matrix format error: " << path.string() << " has " << rows << " rows, expected "
            << dimension;
        throw std::runtime_error(msg.str());
    }
    return RotationMatrix(dimension, std::move(entries));
}

}  // namespace mtevo
