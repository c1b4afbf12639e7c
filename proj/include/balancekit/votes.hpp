#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace balancekit {

enum class VoteValue { For, Against, Abstention, Absent };

std::string to_string(VoteValue v);

struct MepRecord {
    int mep_id;
    std::string name;
    std::string country;
    std::string group;
};

struct TextRecord {
    std::string text_id;
    std::string domain;
    std::string date; // ISO-8601, so string order is date order
};

// Roll-call records: MEP metadata, text metadata, and a dense vote matrix.
// Pairs never seen in the input are Absent.
class VoteTable {
public:
    VoteTable() = default;
    VoteTable(std::vector<MepRecord> meps, std::vector<TextRecord> texts,
              std::vector<VoteValue> votes);

    const std::vector<MepRecord>& meps() const { return meps_; }
    const std::vector<TextRecord>& texts() const { return texts_; }
    int mep_count() const { return static_cast<int>(meps_.size()); }
    int text_count() const { return static_cast<int>(texts_.size()); }

    // Row-major over (mep index, text index).
    VoteValue vote(int mep_index, int text_index) const;

    std::vector<std::string> domains() const;
    std::vector<std::string> groups() const;
    std::vector<std::string> countries() const;

private:
    std::vector<MepRecord> meps_;   // sorted by mep_id
    std::vector<TextRecord> texts_; // sorted by text_id
    std::vector<VoteValue> votes_;  // mep_count * text_count
};

// CSV schema (header required):
//   mep_id,name,country,group,text_id,domain,date,vote
// with vote one of FOR, AGAINST, ABSTENTION, ABSENT. Fields may be quoted.
// Inconsistent metadata or duplicate (mep, text) rows are rejected with the
// offending line number.
VoteTable load_vote_csv(std::istream& in, const std::string& name);
VoteTable load_vote_csv_file(const std::string& path);

// Empty vectors mean "no restriction on this dimension"; the date range is
// inclusive on both ends.
struct SelectionFilter {
    std::vector<std::string> domains;
    std::vector<std::string> groups;
    std::vector<std::string> countries;
    std::optional<std::pair<std::string, std::string>> date_range;
};

// Restricts the table along the four dimensions, then drops MEPs without a
// single cast vote (For/Against/Abstention) among the kept texts. Unknown
// labels raise an error listing the table's own vocabulary.
VoteTable select(const VoteTable& table, const SelectionFilter& filter);

} // namespace balancekit
