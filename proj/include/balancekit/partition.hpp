#pragma once

#include <vector>

namespace balancekit {

/// Assignment of every vertex 0..n-1 to exactly one cluster 0..k-1, with all
/// clusters non-empty. Always stored in canonical form: clusters are
/// renumbered in order of first appearance when scanning vertices by id, so
/// two partitions inducing the same vertex equivalence compare equal.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> raw_assignment);

    static Partition single_cluster(int n);
    static Partition singletons(int n);

    int size() const { return static_cast<int>(assignment_.size()); }
    int cluster_count() const { return cluster_count_; }
    int cluster_of(int v) const { return assignment_[v]; }
    const std::vector<int>& assignment() const { return assignment_; }

    /// Member lists, indexed by cluster; vertices ascending within each.
    std::vector<std::vector<int>> clusters() const;

    bool operator==(const Partition&) const = default;

private:
    std::vector<int> assignment_;
    int cluster_count_ = 0;
};

} // namespace balancekit
