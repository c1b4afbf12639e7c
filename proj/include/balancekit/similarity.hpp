#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "balancekit/votes.hpp"

namespace balancekit {

// Per-text agreement: +1 both For or both Against, -1 opposing, 0 when a cast
// abstention is involved, nullopt when either side is Absent (the text is
// excluded from the pair's average).
std::optional<int> text_similarity(VoteValue u, VoteValue v);

// Symmetric pairwise mean agreement in [-1,+1]. Pairs with no commonly voted
// text are undefined, which is distinct from a measured 0.
class SimilarityMatrix {
public:
    SimilarityMatrix() = default;
    SimilarityMatrix(std::vector<int> mep_ids, std::vector<std::string> labels);

    int size() const { return static_cast<int>(mep_ids_.size()); }
    const std::vector<int>& mep_ids() const { return mep_ids_; }
    const std::vector<std::string>& labels() const { return labels_; }

    std::optional<double> at(int i, int j) const;
    void set(int i, int j, double value);
    void clear(int i, int j);

private:
    std::vector<int> mep_ids_;
    std::vector<std::string> labels_;
    std::vector<double> values_; // NaN marks undefined entries
};

SimilarityMatrix similarity_matrix(const VoteTable& table);

// CSV export: first row/column are mep ids, undefined entries (and the unused
// diagonal) are NA.
void write_similarity_csv(std::ostream& out, const SimilarityMatrix& matrix);
void write_similarity_csv_file(const std::string& path, const SimilarityMatrix& matrix);

} // namespace balancekit
