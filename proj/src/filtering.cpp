#include "balancekit/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace balancekit {

std::pair<double, double> two_means(const std::vector<double>& values) {
    if (values.empty())
        throw std::invalid_argument("two_means needs values");
    auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    if (*mn == *mx)
        throw std::invalid_argument("two_means needs two distinct values");

    double lo = *mn, hi = *mx;
    std::vector<bool> in_hi(values.size(), false);
    for (int iter = 0; iter < 1000; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < values.size(); ++i) {
            // Midpoint ties go to the low cluster, keeping runs reproducible.
            bool hi_side = std::abs(values[i] - hi) < std::abs(values[i] - lo);
            if (hi_side != in_hi[i]) {
                in_hi[i] = hi_side;
                changed = true;
            }
        }
        if (!changed && iter > 0)
            break;
        double lo_sum = 0, hi_sum = 0;
        int lo_n = 0, hi_n = 0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (in_hi[i]) {
                hi_sum += values[i];
                ++hi_n;
            } else {
                lo_sum += values[i];
                ++lo_n;
            }
        }
        if (lo_n > 0)
            lo = lo_sum / lo_n;
        if (hi_n > 0)
            hi = hi_sum / hi_n;
    }
    if (lo > hi)
        std::swap(lo, hi);
    return {lo, hi};
}

namespace {

double side_threshold(const std::vector<double>& values) {
    std::vector<double> distinct = values;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2)
        return 0.0;
    auto [lo, hi] = two_means(values);
    return (lo + hi) / 2.0;
}

} // namespace

FilterThresholds compute_thresholds(const SimilarityMatrix& matrix) {
    std::vector<double> negatives, positives;
    for (int i = 0; i < matrix.size(); ++i)
        for (int j = i + 1; j < matrix.size(); ++j) {
            auto v = matrix.at(i, j);
            if (!v)
                continue;
            if (*v < 0)
                negatives.push_back(*v);
            else if (*v > 0)
                positives.push_back(*v);
        }
    return {side_threshold(negatives), side_threshold(positives)};
}

SimilarityMatrix apply_filter(const SimilarityMatrix& matrix, const FilterThresholds& thresholds) {
    if (!(thresholds.theta_minus <= 0.0 && thresholds.theta_plus >= 0.0))
        throw std::invalid_argument("thresholds must straddle zero");
    SimilarityMatrix out = matrix;
    for (int i = 0; i < matrix.size(); ++i)
        for (int j = i + 1; j < matrix.size(); ++j) {
            auto v = matrix.at(i, j);
            if (!v)
                continue;
            bool weak_neg = *v < 0 && *v > thresholds.theta_minus;
            bool weak_pos = *v >= 0 && *v < thresholds.theta_plus;
            if (weak_neg || weak_pos)
                out.set(i, j, 0.0);
        }
    return out;
}

} // namespace balancekit
