#include "balancekit/similarity.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "balancekit/numio.hpp"

namespace balancekit {

std::optional<int> text_similarity(VoteValue u, VoteValue v) {
    if (u == VoteValue::Absent || v == VoteValue::Absent)
        return std::nullopt;
    if (u == VoteValue::Abstention || v == VoteValue::Abstention)
        return 0;
    return u == v ? 1 : -1;
}

SimilarityMatrix::SimilarityMatrix(std::vector<int> mep_ids, std::vector<std::string> labels)
    : mep_ids_(std::move(mep_ids)), labels_(std::move(labels)) {
    if (labels_.size() != mep_ids_.size())
        throw std::invalid_argument("one label per mep id required");
    values_.assign(mep_ids_.size() * mep_ids_.size(),
                   std::numeric_limits<double>::quiet_NaN());
}

std::optional<double> SimilarityMatrix::at(int i, int j) const {
    if (i < 0 || i >= size() || j < 0 || j >= size())
        throw std::out_of_range("similarity index out of range");
    double v = values_[static_cast<std::size_t>(i) * size() + j];
    if (std::isnan(v))
        return std::nullopt;
    return v;
}

void SimilarityMatrix::set(int i, int j, double value) {
    if (i < 0 || i >= size() || j < 0 || j >= size() || i == j)
        throw std::out_of_range("similarity index out of range");
    if (!(value >= -1.0 && value <= 1.0))
        throw std::invalid_argument("similarity outside [-1,1]");
    values_[static_cast<std::size_t>(i) * size() + j] = value;
    values_[static_cast<std::size_t>(j) * size() + i] = value;
}

void SimilarityMatrix::clear(int i, int j) {
    if (i < 0 || i >= size() || j < 0 || j >= size() || i == j)
        throw std::out_of_range("similarity index out of range");
    values_[static_cast<std::size_t>(i) * size() + j] = std::numeric_limits<double>::quiet_NaN();
    values_[static_cast<std::size_t>(j) * size() + i] = std::numeric_limits<double>::quiet_NaN();
}

SimilarityMatrix similarity_matrix(const VoteTable& table) {
    std::vector<int> ids;
    std::vector<std::string> labels;
    ids.reserve(table.mep_count());
    labels.reserve(table.mep_count());
    for (const MepRecord& m : table.meps()) {
        ids.push_back(m.mep_id);
        labels.push_back(m.name + " (" + m.group + ")");
    }
    SimilarityMatrix matrix(std::move(ids), std::move(labels));
    for (int i = 0; i < table.mep_count(); ++i) {
        for (int j = i + 1; j < table.mep_count(); ++j) {
            long long sum = 0;
            int considered = 0;
            for (int t = 0; t < table.text_count(); ++t) {
                auto s = text_similarity(table.vote(i, t), table.vote(j, t));
                if (!s)
                    continue;
                sum += *s;
                ++considered;
            }
            if (considered > 0)
                matrix.set(i, j, static_cast<double>(sum) / considered);
        }
    }
    return matrix;
}

void write_similarity_csv(std::ostream& out, const SimilarityMatrix& matrix) {
    out << "mep_id";
    for (int id : matrix.mep_ids())
        out << "," << id;
    out << "\n";
    for (int i = 0; i < matrix.size(); ++i) {
        out << matrix.mep_ids()[i];
        for (int j = 0; j < matrix.size(); ++j) {
            out << ",";
            if (i == j) {
                out << "NA";
                continue;
            }
            auto v = matrix.at(i, j);
            out << (v ? format_double(*v) : "NA");
        }
        out << "\n";
    }
}

void write_similarity_csv_file(const std::string& path, const SimilarityMatrix& matrix) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write similarity file '" + path + "'");
    write_similarity_csv(out, matrix);
}

} // namespace balancekit
