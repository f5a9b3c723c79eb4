#include "qdwalk/weight.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qdwalk {

namespace {

void check_partition(const std::vector<int>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] < 0)
            throw std::domain_error("DominantWeight: negative row");
        if (i > 0 && rows[i] > rows[i - 1])
            throw std::domain_error("DominantWeight: rows not non-increasing");
    }
}

void strip_trailing_zeros(std::vector<int>& rows) {
    while (!rows.empty() && rows.back() == 0) rows.pop_back();
}

}  // namespace

DominantWeight::DominantWeight(std::vector<int> rows, int rank)
    : rows_(std::move(rows)), rank_(rank) {
    if (rank_ < 2) throw std::domain_error("DominantWeight: rank must be >= 2");
    check_partition(rows_);
    strip_trailing_zeros(rows_);
    if (static_cast<int>(rows_.size()) >= rank_)
        throw std::domain_error("DominantWeight: partition not reduced for this rank");
}

DominantWeight DominantWeight::reduce(std::vector<int> partition, int rank) {
    if (rank < 2) throw std::domain_error("reduce: rank must be >= 2");
    check_partition(partition);
    strip_trailing_zeros(partition);
    if (static_cast<int>(partition.size()) > rank)
        throw std::domain_error("reduce: more than rank rows");
    if (static_cast<int>(partition.size()) == rank) {
        const int last = partition.back();
        for (int& r : partition) r -= last;
    }
    return DominantWeight(std::move(partition), rank);
}

DominantWeight DominantWeight::su2_spin(int two_s) {
    if (two_s < 0) throw std::domain_error("su2_spin: negative twice-spin");
    if (two_s == 0) return trivial(2);
    return DominantWeight({two_s}, 2);
}

int DominantWeight::size() const {
    return std::accumulate(rows_.begin(), rows_.end(), 0);
}

std::vector<int> DominantWeight::padded() const {
    std::vector<int> out(rows_);
    out.resize(static_cast<std::size_t>(rank_), 0);
    return out;
}

DominantWeight DominantWeight::conjugate() const {
    if (is_trivial()) return *this;
    const std::vector<int> p = padded();
    std::vector<int> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        out[i] = p[0] - p[p.size() - 1 - i];
    return reduce(std::move(out), rank_);
}

int DominantWeight::two_spin() const {
    if (rank_ != 2) throw std::logic_error("two_spin: weight is not rank 2");
    return rows_.empty() ? 0 : rows_[0];
}

std::string DominantWeight::encode() const {
    if (rows_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(rows_[i]);
    }
    return out;
}

DominantWeight DominantWeight::decode(const std::string& text, int rank) {
    std::vector<int> rows;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t used = 0;
        const int v = std::stoi(text.substr(pos), &used);
        rows.push_back(v);
        pos += used;
        if (pos < text.size()) {
            if (text[pos] != ',')
                throw std::invalid_argument("DominantWeight: bad encoding '" + text + "'");
            ++pos;
        }
    }
    if (rows.empty())
        throw std::invalid_argument("DominantWeight: empty encoding");
    return reduce(std::move(rows), rank);
}

std::strong_ordering operator<=>(const DominantWeight& a, const DominantWeight& b) {
    if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    return a.rows_ <=> b.rows_;
}

namespace {

void enumerate_rows(int rank, int radius, std::vector<int>& rows, int remaining,
                    int max_row, std::vector<DominantWeight>& out) {
    out.emplace_back(rows, rank);
    if (static_cast<int>(rows.size()) == rank - 1) return;
    for (int r = 1; r <= std::min(remaining, max_row); ++r) {
        rows.push_back(r);
        enumerate_rows(rank, radius, rows, remaining - r, r, out);
        rows.pop_back();
    }
}

}  // namespace

std::vector<DominantWeight> weights_in_ball(int rank, int radius) {
    if (radius < 0) throw std::domain_error("weights_in_ball: negative radius");
    std::vector<DominantWeight> out;
    std::vector<int> rows;
    enumerate_rows(rank, radius, rows, radius, radius, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace qdwalk
