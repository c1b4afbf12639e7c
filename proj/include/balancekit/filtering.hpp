#pragma once

#include <utility>
#include <vector>

#include "balancekit/similarity.hpp"

namespace balancekit {

struct FilterThresholds {
    double theta_minus = 0.0; // in [-1,0]
    double theta_plus = 0.0;  // in [0,+1]
};

// 1-D 2-means with centroids initialized at the extremes, Lloyd iterations to
// a fixed point. Needs at least two distinct values; returns (low centroid,
// high centroid).
std::pair<double, double> two_means(const std::vector<double>& values);

// Runs 2-means separately on the strictly negative and strictly positive
// defined entries; each threshold is the midpoint of that side's centroids.
// A side with fewer than two distinct values filters nothing (threshold 0).
FilterThresholds compute_thresholds(const SimilarityMatrix& matrix);

// Zeroes defined values strictly inside ]theta_minus, 0[ or [0, theta_plus[;
// everything else, undefined entries included, is untouched.
SimilarityMatrix apply_filter(const SimilarityMatrix& matrix, const FilterThresholds& thresholds);

} // namespace balancekit
