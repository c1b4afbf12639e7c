#include "balancekit/nmi.hpp"

#include <cmath>
#include <stdexcept>

namespace balancekit {

ConfusionTable confusion_table(const Partition& a, const Partition& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("partitions cover different vertex sets");
    ConfusionTable t;
    t.total = a.size();
    t.counts.assign(a.cluster_count(), std::vector<long long>(b.cluster_count(), 0));
    t.row_sums.assign(a.cluster_count(), 0);
    t.col_sums.assign(b.cluster_count(), 0);
    for (int v = 0; v < a.size(); ++v) {
        int i = a.cluster_of(v);
        int j = b.cluster_of(v);
        ++t.counts[i][j];
        ++t.row_sums[i];
        ++t.col_sums[j];
    }
    return t;
}

namespace {

double entropy(const std::vector<long long>& sums, long long n) {
    double h = 0.0;
    for (long long s : sums)
        if (s > 0) {
            double p = static_cast<double>(s) / n;
            h -= p * std::log(p);
        }
    return h;
}

} // namespace

double nmi(const Partition& a, const Partition& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("partitions cover different vertex sets");
    // Canonical form makes equality the same as identical vertex equivalences.
    if (a == b)
        return 1.0;
    ConfusionTable t = confusion_table(a, b);
    double ha = entropy(t.row_sums, t.total);
    double hb = entropy(t.col_sums, t.total);
    if (ha == 0.0 && hb == 0.0)
        return 1.0;
    if (ha == 0.0 || hb == 0.0)
        return 0.0;
    double mi = 0.0;
    const double n = static_cast<double>(t.total);
    for (std::size_t i = 0; i < t.counts.size(); ++i)
        for (std::size_t j = 0; j < t.counts[i].size(); ++j) {
            long long c = t.counts[i][j];
            if (c == 0)
                continue;
            double pij = c / n;
            mi += pij * std::log(n * c / (static_cast<double>(t.row_sums[i]) * t.col_sums[j]));
        }
    double value = 2.0 * mi / (ha + hb);
    // Rounding can push the ratio a hair outside [0,1]; clamp to the contract.
    if (value < 0.0)
        return 0.0;
    if (value > 1.0)
        return 1.0;
    return value;
}

} // namespace balancekit
