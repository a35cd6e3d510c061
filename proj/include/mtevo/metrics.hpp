#ifndef MTEVO_METRICS_HPP
#define MTEVO_METRICS_HPP

#include <vector>

namespace mtevo {

/// Best-obtained costs indexed by (algorithm, task, repetition). Complete
/// by construction: every cell exists and defaults to zero until filled.
class ResultMatrix {
  public:
    ResultMatrix(int algorithm_count, int task_count, int repetition_count);

    int algorithm_count() const { return algorithms_; }
    int task_count() const { return tasks_; }
    int repetition_count() const { return repetitions_; }

    double& at(int algorithm, int task, int repetition);
    double at(int algorithm, int task, int repetition) const;

  private:
    int algorithms_ = 0;
    int tasks_ = 0;
    int repetitions_ = 0;
    std::vector<double> cells_;
};

/// Per-task normalization across all algorithms and repetitions:
/// (value - mu_j) / sigma_j with the population standard deviation.
/// Throws std::runtime_error naming the task when sigma_j is zero.
ResultMatrix normalize_results(const ResultMatrix& matrix);

struct ScoreReport {
    std::vector<double> scores;                   // per algorithm; lower is better
    std::vector<std::vector<double>> task_mean;   // [algorithm][task], raw costs
    std::vector<std::vector<double>> task_std;    // population std over repetitions
};

/// score_i = sum over tasks and repetitions of the normalized cells; the
/// per-task raw mean/std columns mirror the usual results-table layout.
ScoreReport compute_scores(const ResultMatrix& matrix);

}  // namespace mtevo

#endif
