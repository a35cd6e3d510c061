#include "mtevo/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mtevo {

std::vector<int> rank_with_ties(std::span<const double> values, Rng& rng) {
    if (values.empty()) {
        throw std::invalid_argument("rank_with_ties: empty input");
    }
    struct Entry {
        double value;
        std::uint64_t tie_key;
        std::size_t index;
    };
    std::vector<Entry> entries;
    entries.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        entries.push_back({values[i], rng.raw(), i});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.tie_key != b.tie_key) return a.tie_key < b.tie_key;
        return a.index < b.index;
    });
    std::vector<int> ranks(values.size());
    for (std::size_t pos = 0; pos < entries.size(); ++pos) {
        ranks[entries[pos].index] = static_cast<int>(pos + 1);
    }
    return ranks;
}

namespace {

double pearson_of_ranks(const std::vector<int>& r1, const std::vector<int>& r2) {
    const std::size_t n = r1.size();
    const double mean = (static_cast<double>(n) + 1.0) / 2.0;  // ranks are a permutation of 1..n
    double cov = 0.0;
    double var1 = 0.0;
    double var2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d1 = static_cast<double>(r1[i]) - mean;
        const double d2 = static_cast<double>(r2[i]) - mean;
        cov += d1 * d2;
        var1 += d1 * d1;
        var2 += d2 * d2;
    }
    const double denom = std::sqrt(var1 * var2);
    if (denom == 0.0 || !std::isfinite(denom)) {
        throw std::runtime_error("spearman: degenerate rank variance");
    }
    return std::clamp(cov / denom, -1.0, 1.0);
}

}  // namespace

double spearman_from_costs(std::span<const double> costs1, std::span<const double> costs2,
                           Rng& rng) {
    if (costs1.size() != costs2.size()) {
        throw std::invalid_argument("spearman_from_costs: length mismatch");
    }
    if (costs1.size() < 2) {
        throw std::invalid_argument("spearman_from_costs: need at least two samples");
    }
    const std::vector<int> r1 = rank_with_ties(costs1, rng);
    const std::vector<int> r2 = rank_with_ties(costs2, rng);
    return pearson_of_ranks(r1, r2);
}

SimilarityReport spearman_similarity(const CompositeProblem& problem, long long sample_count,
                                     std::uint64_t seed) {
    if (sample_count < 2) {
        throw std::invalid_argument("spearman_similarity: sample_count must be >= 2");
    }
    Rng sample_rng = derive_stream(seed, "similarity-samples");
    Rng tie_rng = derive_stream(seed, "similarity-ties");

    const auto n = static_cast<std::size_t>(sample_count);
    const auto d = static_cast<std::size_t>(problem.d_multitask());
    std::vector<double> costs1(n);
    std::vector<double> costs2(n);
    RandomKeyVector point(d);
    for (std::size_t s = 0; s < n; ++s) {
        for (auto& key : point) key = sample_rng.uniform();
        costs1[s] = eval_task(problem.task1, decode(point, problem.task1));
        costs2[s] = eval_task(problem.task2, decode(point, problem.task2));
    }

    SimilarityReport report;
    report.problem_name = problem.name;
    report.sample_count = sample_count;
    report.seed = seed;
    report.r_s = spearman_from_costs(costs1, costs2, tie_rng);
    report.band = classify_similarity(report.r_s);
    return report;
}

SimilarityBand classify_similarity(double r_s) {
    if (!(r_s >= -1.0 && r_s <= 1.0)) {
        throw std::invalid_argument("classify_similarity: value outside [-1, 1]");
    }
    if (r_s < 0.2) return SimilarityBand::Low;
    if (r_s < 0.8) return SimilarityBand::Medium;
    return SimilarityBand::High;
}

}  // namespace mtevo
