#ifndef MTEVO_SIMILARITY_HPP
#define MTEVO_SIMILARITY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mtevo/benchmarks.hpp"
#include "mtevo/rng.hpp"

namespace mtevo {

struct SimilarityReport {
    std::string problem_name;
    double r_s = 0.0;
    long long sample_count = 0;
    std::uint64_t seed = 0;
    SimilarityBand band = SimilarityBand::Low;
};

/// Ascending ranks 1..n; exact ties are randomly permuted among the tied
/// positions. Throws std::invalid_argument on empty input.
std::vector<int> rank_with_ties(std::span<const double> values, Rng& rng);

/// Spearman's rank correlation of two cost lists: rank both, then take the
/// Pearson correlation of the rank sequences. Result clamped to [-1, 1].
double spearman_from_costs(std::span<const double> costs1, std::span<const double> costs2,
                           Rng& rng);

/// Draws sample_count uniform points in the unified space, decodes and
/// evaluates both tasks at every point, and correlates the two cost
/// rankings. Deterministic given the seed.
SimilarityReport spearman_similarity(const CompositeProblem& problem, long long sample_count,
                                     std::uint64_t seed);

/// Low: r_s < 0.2; Medium: 0.2 <= r_s < 0.8; High: r_s >= 0.8.
SimilarityBand classify_similarity(double r_s);

}  // namespace mtevo

#endif
