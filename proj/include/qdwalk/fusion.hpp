// The fusion ring R(SU(n)): Littlewood-Richardson products, weight
// multiplicities, zero-weight dimensions and the multiplicity bound
// N^U_{U,V} <= m_0(V).

#pragma once

#include "qdwalk/scalar.hpp"
#include "qdwalk/weight.hpp"

#include <map>
#include <vector>

namespace qdwalk {

/// A finite fusion decomposition: weight -> multiplicity, absent = 0.
class FusionResult {
public:
    using Table = std::map<DominantWeight, long>;

    FusionResult() = default;
    explicit FusionResult(Table entries);

    long mult(const DominantWeight& nu) const;
    const Table& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    void add(const DominantWeight& nu, long count);

private:
    Table entries_;
};

/// lambda (x) mu decomposed by the Littlewood-Richardson rule, reduced mod
/// rank. Symmetric in its arguments; results are memoized process-wide.
FusionResult lr_coeffs(const DominantWeight& lam, const DominantWeight& mu);

/// Multiplicity of the content vector (length rank, entries summing to
/// |lambda| mod nothing -- a GL(n) weight of V_lambda) as a weight of
/// V_lambda; 0 if the content cannot occur. Invariant under permutations
/// of the content.
long weight_multiplicity(const DominantWeight& lam, const std::vector<int>& content);

/// m_0(lambda): dimension of the zero-weight space of V_lambda. Zero
/// unless rank divides |lambda|.
long zero_weight_dim(const DominantWeight& lam);

/// N^U_{U,V}: multiplicity of U in U (x) V.
long mult_in_self_tensor(const DominantWeight& U, const DominantWeight& V);

/// True iff U + wV is dominant for every Weyl-group element w (acting by
/// permutation on the padded weight vector). A sufficient condition for
/// N^U_{U,V} = m_0(V).
bool equality_criterion(const DominantWeight& U, const DominantWeight& V);

/// Classical and quantum dimension sum rules for a single product:
/// sum_nu N^nu d_nu == d_lambda d_mu, exactly.
bool fusion_sum_rule_classical(const DominantWeight& lam, const DominantWeight& mu,
                               const FusionResult& prod);
bool fusion_sum_rule_quantum(const DominantWeight& lam, const DominantWeight& mu,
                             const FusionResult& prod, const QParam& q);

}  // namespace qdwalk
