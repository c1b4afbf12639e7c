#pragma once

#include <vector>

#include "balancekit/partition.hpp"

namespace balancekit {

// Cluster overlap counts between two partitions of the same vertex set.
struct ConfusionTable {
    std::vector<std::vector<long long>> counts; // [cluster of a][cluster of b]
    std::vector<long long> row_sums;
    std::vector<long long> col_sums;
    long long total = 0;
};

ConfusionTable confusion_table(const Partition& a, const Partition& b);

// Normalized mutual information with natural logs and arithmetic-mean
// normalization: 2 MI / (H(a) + H(b)). Both entropies zero gives 1, exactly
// one zero gives 0; always in [0,1] and symmetric.
double nmi(const Partition& a, const Partition& b);

} // namespace balancekit
