#include "balancekit/votes.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "balancekit/numio.hpp"

namespace balancekit {

std::string to_string(VoteValue v) {
    switch (v) {
    case VoteValue::For: return "FOR";
    case VoteValue::Against: return "AGAINST";
    case VoteValue::Abstention: return "ABSTENTION";
    case VoteValue::Absent: return "ABSENT";
    }
    throw std::logic_error("unreachable vote value");
}

VoteTable::VoteTable(std::vector<MepRecord> meps, std::vector<TextRecord> texts,
                     std::vector<VoteValue> votes)
    : meps_(std::move(meps)), texts_(std::move(texts)), votes_(std::move(votes)) {
    if (votes_.size() != meps_.size() * texts_.size())
        throw std::invalid_argument("vote matrix shape does not match mep/text counts");
    for (std::size_t i = 1; i < meps_.size(); ++i)
        if (meps_[i - 1].mep_id >= meps_[i].mep_id)
            throw std::invalid_argument("mep records must be strictly sorted by id");
    for (std::size_t i = 1; i < texts_.size(); ++i)
        if (texts_[i - 1].text_id >= texts_[i].text_id)
            throw std::invalid_argument("text records must be strictly sorted by id");
}

VoteValue VoteTable::vote(int mep_index, int text_index) const {
    if (mep_index < 0 || mep_index >= mep_count() || text_index < 0 || text_index >= text_count())
        throw std::out_of_range("vote index out of range");
    return votes_[static_cast<std::size_t>(mep_index) * texts_.size() + text_index];
}

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

} // namespace

std::vector<std::string> VoteTable::domains() const {
    std::vector<std::string> out;
    out.reserve(texts_.size());
    for (const auto& t : texts_)
        out.push_back(t.domain);
    return sorted_unique(std::move(out));
}

std::vector<std::string> VoteTable::groups() const {
    std::vector<std::string> out;
    out.reserve(meps_.size());
    for (const auto& m : meps_)
        out.push_back(m.group);
    return sorted_unique(std::move(out));
}

std::vector<std::string> VoteTable::countries() const {
    std::vector<std::string> out;
    out.reserve(meps_.size());
    for (const auto& m : meps_)
        out.push_back(m.country);
    return sorted_unique(std::move(out));
}

namespace {

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
    throw std::runtime_error(name + ":" + std::to_string(line) + ": " + msg);
}

// RFC-4180 style fields: optional double-quote wrapping, "" escapes a quote.
std::vector<std::string> split_csv(const std::string& name, int lineno, const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            if (!cur.empty())
                fail(name, lineno, "quote inside unquoted field");
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (quoted)
        fail(name, lineno, "unterminated quoted field");
    fields.push_back(std::move(cur));
    return fields;
}

bool valid_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-')
        return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (s[i] < '0' || s[i] > '9')
            return false;
    int month = (s[5] - '0') * 10 + (s[6] - '0');
    int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

VoteValue parse_vote(const std::string& name, int lineno, const std::string& s) {
    if (s == "FOR")
        return VoteValue::For;
    if (s == "AGAINST")
        return VoteValue::Against;
    if (s == "ABSTENTION")
        return VoteValue::Abstention;
    if (s == "ABSENT")
        return VoteValue::Absent;
    fail(name, lineno, "unknown vote value '" + s + "' (expected FOR, AGAINST, ABSTENTION or ABSENT)");
}

} // namespace

VoteTable load_vote_csv(std::istream& in, const std::string& name) {
    std::string raw;
    int lineno = 0;
    if (!std::getline(in, raw))
        fail(name, 1, "empty file, expected header");
    ++lineno;
    if (!raw.empty() && raw.back() == '\r')
        raw.pop_back();
    static const std::string kHeader = "mep_id,name,country,group,text_id,domain,date,vote";
    if (raw != kHeader)
        fail(name, lineno, "bad header, expected '" + kHeader + "'");

    std::map<int, MepRecord> meps;
    std::map<std::string, TextRecord> texts;
    std::map<std::pair<int, std::string>, VoteValue> votes;

    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        if (raw.empty())
            continue;
        auto f = split_csv(name, lineno, raw);
        if (f.size() != 8)
            fail(name, lineno, "expected 8 fields, got " + std::to_string(f.size()));
        int mep_id;
        try {
            mep_id = parse_int(f[0]);
        } catch (const std::exception&) {
            fail(name, lineno, "malformed mep_id '" + f[0] + "'");
        }
        if (f[4].empty())
            fail(name, lineno, "empty text_id");
        if (!valid_iso_date(f[6]))
            fail(name, lineno, "malformed date '" + f[6] + "' (expected YYYY-MM-DD)");
        VoteValue vote = parse_vote(name, lineno, f[7]);

        MepRecord mep{mep_id, f[1], f[2], f[3]};
        auto [mit, mfresh] = meps.emplace(mep_id, mep);
        if (!mfresh && (mit->second.name != mep.name || mit->second.country != mep.country ||
                        mit->second.group != mep.group))
            fail(name, lineno, "mep " + std::to_string(mep_id) + " metadata conflicts with an earlier row");

        TextRecord text{f[4], f[5], f[6]};
        auto [tit, tfresh] = texts.emplace(text.text_id, text);
        if (!tfresh && (tit->second.domain != text.domain || tit->second.date != text.date))
            fail(name, lineno, "text " + text.text_id + " metadata conflicts with an earlier row");

        if (!votes.emplace(std::make_pair(mep_id, text.text_id), vote).second)
            fail(name, lineno, "duplicate vote for mep " + std::to_string(mep_id) + " on text " + text.text_id);
    }

    std::vector<MepRecord> mep_list;
    mep_list.reserve(meps.size());
    for (auto& [id, rec] : meps)
        mep_list.push_back(std::move(rec));
    std::vector<TextRecord> text_list;
    text_list.reserve(texts.size());
    for (auto& [id, rec] : texts)
        text_list.push_back(std::move(rec));

    std::vector<VoteValue> matrix(mep_list.size() * text_list.size(), VoteValue::Absent);
    std::map<std::string, int> text_index;
    for (std::size_t j = 0; j < text_list.size(); ++j)
        text_index[text_list[j].text_id] = static_cast<int>(j);
    std::map<int, int> mep_index;
    for (std::size_t i = 0; i < mep_list.size(); ++i)
        mep_index[mep_list[i].mep_id] = static_cast<int>(i);
    for (const auto& [key, v] : votes)
        matrix[static_cast<std::size_t>(mep_index[key.first]) * text_list.size() +
               text_index[key.second]] = v;

    return VoteTable(std::move(mep_list), std::move(text_list), std::move(matrix));
}

VoteTable load_vote_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open vote file '" + path + "'");
    return load_vote_csv(in, path);
}

namespace {

std::string join(const std::vector<std::string>& values) {
    std::string out;
    for (const auto& v : values) {
        if (!out.empty())
            out += ", ";
        out += v;
    }
    return out;
}

void check_labels(const std::vector<std::string>& wanted, const std::vector<std::string>& known,
                  const std::string& dimension) {
    for (const auto& w : wanted)
        if (!std::binary_search(known.begin(), known.end(), w))
            throw std::invalid_argument("unknown " + dimension + " '" + w + "' (known: " +
                                        join(known) + ")");
}

bool wanted(const std::vector<std::string>& selection, const std::string& value) {
    return selection.empty() ||
           std::find(selection.begin(), selection.end(), value) != selection.end();
}

} // namespace

VoteTable select(const VoteTable& table, const SelectionFilter& filter) {
    check_labels(filter.domains, table.domains(), "domain");
    check_labels(filter.groups, table.groups(), "group");
    check_labels(filter.countries, table.countries(), "country");
    if (filter.date_range && filter.date_range->first > filter.date_range->second)
        throw std::invalid_argument("date range start is after its end");

    std::vector<int> text_keep;
    for (int j = 0; j < table.text_count(); ++j) {
        const TextRecord& t = table.texts()[j];
        if (!wanted(filter.domains, t.domain))
            continue;
        if (filter.date_range &&
            (t.date < filter.date_range->first || t.date > filter.date_range->second))
            continue;
        text_keep.push_back(j);
    }

    std::vector<int> mep_keep;
    for (int i = 0; i < table.mep_count(); ++i) {
        const MepRecord& m = table.meps()[i];
        if (!wanted(filter.groups, m.group) || !wanted(filter.countries, m.country))
            continue;
        bool active = false;
        for (int j : text_keep)
            if (table.vote(i, j) != VoteValue::Absent) {
                active = true;
                break;
            }
        if (active)
            mep_keep.push_back(i);
    }

    std::vector<MepRecord> meps;
    meps.reserve(mep_keep.size());
    for (int i : mep_keep)
        meps.push_back(table.meps()[i]);
    std::vector<TextRecord> texts;
    texts.reserve(text_keep.size());
    for (int j : text_keep)
        texts.push_back(table.texts()[j]);

    std::vector<VoteValue> matrix;
    matrix.reserve(meps.size() * texts.size());
    for (int i : mep_keep)
        for (int j : text_keep)
            matrix.push_back(table.vote(i, j));

    return VoteTable(std::move(meps), std::move(texts), std::move(matrix));
}

} // namespace balancekit
