// Dominant weights of SU(n) as reduced partitions.
//
// Irr(SU(n)) is identified with partitions of fewer than n rows: a column
// of height n is the determinant representation, which is trivial, so
// partitions are stored reduced (min row subtracted, trailing zeros
// stripped). SU(2) spins s live in (1/2)Z+ and are encoded as the
// twice-spin partition (2s).

#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace qdwalk {

class DominantWeight {
public:
    /// Rows must already be reduced: non-increasing, non-negative, fewer
    /// than rank entries once trailing zeros are stripped.
    DominantWeight(std::vector<int> rows, int rank);

    /// Strips full columns: for a length-n partition, subtracts the last
    /// row from every row. Throws on non-monotone or negative input.
    static DominantWeight reduce(std::vector<int> partition, int rank);

    static DominantWeight trivial(int rank) { return DominantWeight({}, rank); }

    /// SU(2) codec: spin s maps to the partition (2s).
    static DominantWeight su2_spin(int two_s);

    int rank() const { return rank_; }
    const std::vector<int>& rows() const { return rows_; }

    /// |lambda|: number of boxes of the reduced partition.
    int size() const;

    bool is_trivial() const { return rows_.empty(); }

    /// Rows padded with zeros to length rank (the weight vector).
    std::vector<int> padded() const;

    /// Contragredient weight: complement rule applied to the padded rows.
    DominantWeight conjugate() const;

    /// Twice the spin for rank-2 weights; throws otherwise.
    int two_spin() const;

    /// Comma-joined reduced partition; the trivial weight encodes as "0".
    std::string encode() const;
    static DominantWeight decode(const std::string& text, int rank);

    friend bool operator==(const DominantWeight& a, const DominantWeight& b) {
        return a.rank_ == b.rank_ && a.rows_ == b.rows_;
    }
    friend std::strong_ordering operator<=>(const DominantWeight& a,
                                            const DominantWeight& b);

private:
    std::vector<int> rows_;
    int rank_;
};

/// All reduced weights of the given rank with |lambda| <= radius, ordered
/// by (|lambda|, rows).
std::vector<DominantWeight> weights_in_ball(int rank, int radius);

}  // namespace qdwalk
