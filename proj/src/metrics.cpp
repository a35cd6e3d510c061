#include "mtevo/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mtevo {

ResultMatrix::ResultMatrix(int algorithm_count, int task_count, int repetition_count)
    : algorithms_(algorithm_count), tasks_(task_count), repetitions_(repetition_count) {
    if (algorithm_count < 1 || task_count < 1 || repetition_count < 1) {
        throw std::invalid_argument("ResultMatrix: all extents must be >= 1");
    }
    cells_.assign(static_cast<std::size_t>(algorithm_count) * task_count * repetition_count, 0.0);
}

double& ResultMatrix::at(int algorithm, int task, int repetition) {
    return cells_[(static_cast<std::size_t>(algorithm) * tasks_ + task) * repetitions_ +
                  repetition];
}

double ResultMatrix::at(int algorithm, int task, int repetition) const {
    return cells_[(static_cast<std::size_t>(algorithm) * tasks_ + task) * repetitions_ +
                  repetition];
}

ResultMatrix normalize_results(const ResultMatrix& matrix) {
    const int n = matrix.algorithm_count();
    const int k = matrix.task_count();
    const int l = matrix.repetition_count();
    ResultMatrix normalized(n, k, l);

    for (int task = 0; task < k; ++task) {
        const double count = static_cast<double>(n) * l;
        double mean = 0.0;
        for (int algo = 0; algo < n; ++algo) {
            for (int rep = 0; rep < l; ++rep) mean += matrix.at(algo, task, rep);
        }
        mean /= count;
        double variance = 0.0;
        for (int algo = 0; algo < n; ++algo) {
            for (int rep = 0; rep < l; ++rep) {
                const double d = matrix.at(algo, task, rep) - mean;
                variance += d * d;
            }
        }
        variance /= count;  // population form
        const double sigma = std::sqrt(variance);
        if (sigma == 0.0) {
            throw std::runtime_error("normalize_results: task " + std::to_string(task + 1) +
                                     " has zero variance across all algorithms and repetitions");
        }
        for (int algo = 0; algo < n; ++algo) {
            for (int rep = 0; rep < l; ++rep) {
                normalized.at(algo, task, rep) = (matrix.at(algo, task, rep) - mean) / sigma;
            }
        }
    }
    return normalized;
}

ScoreReport compute_scores(const ResultMatrix& matrix) {
    const int n = matrix.algorithm_count();
    const int k = matrix.task_count();
    const int l = matrix.repetition_count();
    const ResultMatrix normalized = normalize_results(matrix);

    ScoreReport report;
    report.scores.assign(static_cast<std::size_t>(n), 0.0);
    report.task_mean.assign(static_cast<std::size_t>(n), std::vector<double>(k, 0.0));
    report.task_std.assign(static_cast<std::size_t>(n), std::vector<double>(k, 0.0));

    for (int algo = 0; algo < n; ++algo) {
        for (int task = 0; task < k; ++task) {
            double mean = 0.0;
            for (int rep = 0; rep < l; ++rep) {
                report.scores[static_cast<std::size_t>(algo)] += normalized.at(algo, task, rep);
                mean += matrix.at(algo, task, rep);
            }
            mean /= static_cast<double>(l);
            double variance = 0.0;
            for (int rep = 0; rep < l; ++rep) {
                const double d = matrix.at(algo, task, rep) - mean;
                variance += d * d;
            }
            variance /= static_cast<double>(l);
            report.task_mean[static_cast<std::size_t>(algo)][static_cast<std::size_t>(task)] = mean;
            report.task_std[static_cast<std::size_t>(algo)][static_cast<std::size_t>(task)] =
                std::sqrt(variance);
        }
    }
    return report;
}

}  // namespace mtevo
