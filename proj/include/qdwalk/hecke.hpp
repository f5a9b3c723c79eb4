// Tensor-chain representations of the Hecke algebra H_inf(q),
//
//   g_i^2 = (q - q^{-1}) g_i + 1,
//   g_i g_{i+1} g_i = g_{i+1} g_i g_{i+1},
//   g_i g_j = g_j g_i  for |i-j| >= 2,
//
// in the variants
//
//   pi(g_1)     = q sum_i E_ii(x)E_ii + (q-q^{-1}) sum_{i<j} E_ii(x)E_jj
//                 + sum_{i!=j} E_ij(x)E_ji,
//   pi_pm(g_1)  = q sum_i E_ii(x)E_ii + (q-q^{-1}) sum_{i>j} E_ii(x)E_jj
//                 +- sum_{i!=j} E_ij(x)E_ji,
//
// together with the invariant density diag weights c q^{2(n-i)} and the
// conditional expectation contracting the last tensor slot against it.
// E pi_+(g_1) and E pi_-(g_1) come out scalar while E pi(g_1) does not;
// that dichotomy pins the orientation conventions.

#pragma once

#include "qdwalk/scalar.hpp"

#include <string>
#include <vector>

namespace qdwalk {

enum class HeckeVariant { pi, pi_plus, pi_minus };

const char* variant_name(HeckeVariant v);
HeckeVariant parse_variant(const std::string& name);

/// Dense operator on (C^n)^(x m) with mode-matched entries. All displayed
/// coefficients are real, so real scalars suffice.
class ChainOperator {
public:
    ChainOperator(int site_dim, int sites, Mode mode);
    static ChainOperator identity(int site_dim, int sites, Mode mode);

    int site_dim() const { return site_dim_; }
    int sites() const { return sites_; }
    Mode mode() const { return mode_; }
    std::size_t dim() const { return dim_; }

    const Scalar& at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, Scalar v);

    ChainOperator operator*(const ChainOperator& o) const;
    ChainOperator operator+(const ChainOperator& o) const;
    ChainOperator operator-(const ChainOperator& o) const;
    ChainOperator scaled(const Scalar& s) const;

    Scalar max_abs_diff(const ChainOperator& o) const;
    std::vector<Scalar> diagonal() const;

    /// True iff the operator equals value * identity; fills *value when so.
    bool is_scalar(Scalar* value = nullptr) const;

private:
    int site_dim_;
    int sites_;
    Mode mode_;
    std::size_t dim_;
    std::vector<Scalar> coeff_;  // row-major dim_ x dim_
};

/// The two-site generator for the chosen variant.
ChainOperator g1_matrix(int n, const QParam& q, HeckeVariant variant);

/// g_k on m sites: identity everywhere except sites (k, k+1); 1 <= k <= m-1.
ChainOperator embed_gk(const ChainOperator& g1, int k, int m);

struct HeckeReport {
    HeckeVariant variant;
    int n = 0;
    int m = 0;
    bool quadratic_ok = false;
    bool braid_ok = false;
    bool commute_ok = false;
    Scalar max_residual;

    bool all_ok() const { return quadratic_ok && braid_ok && commute_ok; }
};

/// Exact verification of the quadratic, braid and distant-commutation
/// relations on m sites; needs m >= 3 for the braid part.
HeckeReport check_hecke(int n, int m, const QParam& q, HeckeVariant variant);

/// Diagonal weights w_i = c q^{2(n-i)}, c = (1-q^2)/(1-q^{2n}); the unique
/// left-invariant state on B(C^n). Sums to 1 exactly.
struct InvariantDensity {
    std::vector<Scalar> weights;
};

InvariantDensity invariant_density(int n, const QParam& q);

/// Contraction of the last tensor slot against the density: the state-
/// preserving conditional expectation onto the first m-1 sites.
ChainOperator cond_expect_last(const ChainOperator& x, const InvariantDensity& density);

/// Closed form c q^{2n-1} for the scalar value of E pi_pm(g_1).
Scalar cond_expect_plus_scalar(int n, const QParam& q);

}  // namespace qdwalk
