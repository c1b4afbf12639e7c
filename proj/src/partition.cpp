#include "balancekit/partition.hpp"

#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace balancekit {

Partition::Partition(std::vector<int> raw_assignment)
    : assignment_(std::move(raw_assignment)) {
    std::unordered_map<int, int> relabel;
    relabel.reserve(assignment_.size());
    for (int& c : assignment_) {
        auto [it, inserted] = relabel.try_emplace(c, static_cast<int>(relabel.size()));
        c = it->second;
        (void)inserted;
    }
    cluster_count_ = static_cast<int>(relabel.size());
}

Partition Partition::single_cluster(int n) {
    if (n < 0)
        throw std::invalid_argument("negative vertex count");
    return Partition(std::vector<int>(n, 0));
}

Partition Partition::singletons(int n) {
    if (n < 0)
        throw std::invalid_argument("negative vertex count");
    std::vector<int> a(n);
    std::iota(a.begin(), a.end(), 0);
    return Partition(std::move(a));
}

std::vector<std::vector<int>> Partition::clusters() const {
    std::vector<std::vector<int>> out(cluster_count_);
    for (int v = 0; v < size(); ++v)
        out[assignment_[v]].push_back(v);
    return out;
}

} // namespace balancekit
