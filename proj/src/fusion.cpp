#include "qdwalk/fusion.hpp"

#include "qdwalk/qarith.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>

namespace qdwalk {

FusionResult::FusionResult(Table entries) : entries_(std::move(entries)) {
    for (const auto& [nu, m] : entries_)
        if (m < 1) throw std::domain_error("FusionResult: multiplicities must be >= 1");
}

long FusionResult::mult(const DominantWeight& nu) const {
    const auto it = entries_.find(nu);
    return it == entries_.end() ? 0 : it->second;
}

void FusionResult::add(const DominantWeight& nu, long count) {
    if (count == 0) return;
    entries_[nu] += count;
}

namespace {

// ---------------------------------------------------------------------
// Littlewood-Richardson enumeration.
//
// A term nu of lambda (x) mu corresponds to a chain of shapes
//
//   lambda = s^0 c s^1 c ... c s^m = nu,
//
// where s^i / s^{i-1} is a horizontal strip of mu_i boxes of letter i
// (the strip condition s^i_r <= s^{i-1}_{r-1} keeps columns strict), and
// the reverse reading word is a lattice word: for every letter i >= 2 and
// row r,
//
//   #(letter i in rows 1..r) <= #(letter i-1 in rows 1..r-1).
//
// The enumeration places letters in order, distributing each strip row by
// row with the lattice bound enforced incrementally.
// ---------------------------------------------------------------------

struct LrState {
    int rank;
    std::vector<int> shape;        // current s^i, padded to rank rows
    std::vector<int> prev_letter;  // per-row box count of letter i-1
    std::vector<int> cur_letter;   // per-row box count of letter i
    FusionResult out;
};

void finish_letter(LrState& st, const std::vector<int>& mu, std::size_t letter);

// Distribute the remaining boxes of the current letter over rows row..rank.
// above_old is the pre-strip length of the row above (the strip condition
// bounds the new row length by it, which keeps columns strict); prev_above
// is the cumulative letter-(i-1) count in rows above, the lattice bound for
// the cumulative letter-i count through this row.
void place_strip(LrState& st, const std::vector<int>& mu, std::size_t letter,
                 int row, int remaining, int placed_so_far, int prev_above,
                 int above_old) {
    const int n = st.rank;
    if (remaining == 0) {
        finish_letter(st, mu, letter);
        return;
    }
    if (row >= n) return;

    int cap = row == 0 ? remaining
                       : std::min(remaining, above_old - st.shape[row]);
    if (letter > 0)
        cap = std::min(cap, prev_above - placed_so_far);  // lattice bound
    if (cap < 0) cap = 0;

    const int saved = st.shape[row];
    const int next_prev_above =
        letter > 0 ? prev_above + st.prev_letter[row] : 0;
    for (int k = 0; k <= cap; ++k) {
        st.shape[row] = saved + k;
        st.cur_letter[row] = k;
        place_strip(st, mu, letter, row + 1, remaining - k, placed_so_far + k,
                    next_prev_above, saved);
    }
    st.shape[row] = saved;
    st.cur_letter[row] = 0;
}

void finish_letter(LrState& st, const std::vector<int>& mu, std::size_t letter) {
    if (letter + 1 == mu.size()) {
        std::vector<int> nu(st.shape);
        st.out.add(DominantWeight::reduce(std::move(nu), st.rank), 1);
        return;
    }
    std::vector<int> done = st.cur_letter;
    std::swap(st.prev_letter, done);
    std::fill(st.cur_letter.begin(), st.cur_letter.end(), 0);
    place_strip(st, mu, letter + 1, 0, mu[letter + 1], 0, 0, 0);
    std::swap(st.prev_letter, done);
    st.cur_letter = done;
}

FusionResult lr_enumerate(const DominantWeight& lam, const DominantWeight& mu) {
    LrState st;
    st.rank = lam.rank();
    st.shape = lam.padded();
    st.prev_letter.assign(st.rank, 0);
    st.cur_letter.assign(st.rank, 0);
    const std::vector<int>& parts = mu.rows();
    if (parts.empty()) {
        st.out.add(lam, 1);
        return st.out;
    }
    place_strip(st, parts, 0, 0, parts[0], 0, 0, 0);
    return st.out;
}

struct PairKey {
    DominantWeight a, b;
    friend std::strong_ordering operator<=>(const PairKey&, const PairKey&) = default;
    friend bool operator==(const PairKey&, const PairKey&) = default;
};

std::shared_mutex g_lr_mutex;
std::map<PairKey, FusionResult> g_lr_cache;

}  // namespace

FusionResult lr_coeffs(const DominantWeight& lam, const DominantWeight& mu) {
    if (lam.rank() != mu.rank())
        throw std::domain_error("lr_coeffs: rank mismatch");
    PairKey key{std::min(lam, mu), std::max(lam, mu)};
    {
        std::shared_lock lock(g_lr_mutex);
        const auto it = g_lr_cache.find(key);
        if (it != g_lr_cache.end()) return it->second;
    }
    FusionResult result = lr_enumerate(key.a, key.b);
    std::unique_lock lock(g_lr_mutex);
    return g_lr_cache.emplace(std::move(key), std::move(result)).first->second;
}

namespace {

// Gelfand-Tsetlin recursion: row r-1 interlaces row r and its sum is
// pinned by the prescribed content.
long gt_count(const std::vector<int>& row, int level, const std::vector<int>& prefix_sums) {
    if (level == 1) return 1;  // row of length 1 already fixed by its sum

    // Enumerate rows of length level-1 interlacing `row` with the pinned sum.
    struct Rec {
        const std::vector<int>& row;
        std::vector<int> next;
        const std::vector<int>& prefix_sums;
        int len;
        long total = 0;
        void go(int idx, int remaining) {
            if (idx == len) {
                if (remaining == 0)
                    total += gt_count(next, len, prefix_sums);
                return;
            }
            const int hi = std::min(row[idx], remaining);
            // Remaining entries are bounded above by row[idx+1..]; prune on
            // the maximum still reachable.
            for (int v = row[idx + 1]; v <= hi; ++v) {
                int max_rest = 0;
                for (int j = idx + 1; j < len; ++j)
                    max_rest += std::min(row[j], v);
                if (remaining - v > max_rest) continue;
                next[idx] = v;
                go(idx + 1, remaining - v);
            }
        }
    } rec{row, std::vector<int>(static_cast<std::size_t>(level) - 1),
          prefix_sums, level - 1};
    rec.go(0, prefix_sums[level - 2]);
    return rec.total;
}

}  // namespace

long weight_multiplicity(const DominantWeight& lam, const std::vector<int>& content) {
    const int n = lam.rank();
    if (static_cast<int>(content.size()) != n)
        throw std::domain_error("weight_multiplicity: content length must equal rank");
    for (int c : content)
        if (c < 0) return 0;
    if (std::accumulate(content.begin(), content.end(), 0) != lam.size()) return 0;

    std::vector<int> prefix_sums(content.size());
    std::partial_sum(content.begin(), content.end(), prefix_sums.begin());
    return gt_count(lam.padded(), n, prefix_sums);
}

long zero_weight_dim(const DominantWeight& lam) {
    const int n = lam.rank();
    if (lam.size() % n != 0) return 0;
    return weight_multiplicity(lam, std::vector<int>(n, lam.size() / n));
}

long mult_in_self_tensor(const DominantWeight& U, const DominantWeight& V) {
    return lr_coeffs(U, V).mult(U);
}

bool equality_criterion(const DominantWeight& U, const DominantWeight& V) {
    if (U.rank() != V.rank())
        throw std::domain_error("equality_criterion: rank mismatch");
    const std::vector<int> u = U.padded();
    std::vector<int> v = V.padded();
    std::sort(v.begin(), v.end());
    do {
        bool dominant = true;
        for (std::size_t i = 0; i + 1 < u.size(); ++i)
            if (u[i] + v[i] < u[i + 1] + v[i + 1]) {
                dominant = false;
                break;
            }
        if (!dominant) return false;
    } while (std::next_permutation(v.begin(), v.end()));
    return true;
}

bool fusion_sum_rule_classical(const DominantWeight& lam, const DominantWeight& mu,
                               const FusionResult& prod) {
    long lhs = 0;
    for (const auto& [nu, m] : prod.entries()) lhs += m * dim_sun(nu);
    return lhs == static_cast<long>(dim_sun(lam)) * dim_sun(mu);
}

bool fusion_sum_rule_quantum(const DominantWeight& lam, const DominantWeight& mu,
                             const FusionResult& prod, const QParam& q) {
    Scalar lhs = Scalar::zero(q.mode());
    for (const auto& [nu, m] : prod.entries())
        lhs += qdim_sun(nu, q) * q.scalar(m);
    const Scalar rhs = qdim_sun(lam, q) * qdim_sun(mu, q);
    return q.mode() == Mode::exact ? lhs == rhs : approx_equal(lhs, rhs);
}

}  // namespace qdwalk
