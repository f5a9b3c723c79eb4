// The double-coset Markov operator of SU_q(2) on C(I_{q^2}), where
// I_{q^2} = {0} u {q^{2k}} is the spectrum of gamma*gamma. For the
// single-spin-1/2 state the action on functions is
//
//   (A h)(t) = (1/[2]_q) ( q^{-1}((1-q^2 t) h(q^2 t) + q^2 t h(t))
//                        + q (t h(t) + (1-t) h(q^{-2} t)) ),
//
// a birth-death chain on the grid points with absorbing 0. The sequence
// a_k defined by a_0 = 1 and
//
//   2 (1-q^{2k+1}) a_k = q^{-1} (1-q^{2k+2}) a_{k+1} + q (1-q^{2k}) a_{k-1}
//
// gives a strictly positive eigenvector f(q^{2k}) = a_k, f(0) = 0, with
// eigenvalue 2/[2]_q < 1: the transience certificate. General spins act
// through the polynomials p_{2s} with p_{2s}(A_{1/2}) = A_s.

#pragma once

#include "qdwalk/scalar.hpp"

#include <vector>

namespace qdwalk {

/// Truncated spectrum: points t_k = q^{2k}, k = 0..K, plus the cemetery 0.
struct Grid {
    QParam q;
    int K;

    Grid(const QParam& q_in, int K_in);
    Scalar point(int k) const;  // q^{2k}
};

/// Values h(t_0..t_K) plus h(0).
struct GridFunction {
    std::vector<Scalar> values;
    Scalar at_zero;

    static GridFunction constant(const Scalar& c, int K);
};

/// Masses on the grid points plus the atom at 0; total exactly 1.
struct GridMeasure {
    std::vector<Scalar> mass;
    Scalar at_zero;

    static GridMeasure delta_point(int k, int K, Mode mode);
    Scalar total() const;
};

struct EigenCertificate {
    QParam q;
    int K;
    GridFunction f;        // f(t_k) = a_k, f(0) = 0
    Scalar lambda;         // 2/[2]_q
    Scalar residual;       // max |(A f)(t_k) - lambda a_k| over k = 0..K-1
    Scalar min_f;          // min a_k over k <= K
    bool geometric_bound;  // a_k >= q^k for all k
    bool diff_nonneg;      // a_{k+1} - q a_k >= 0 for all k < K
};

/// One application of the spin-1/2 operator. At t_0 the h(q^{-2}t) term
/// has coefficient zero; at t_K the h(q^2 t) read uses h(0), the walk's
/// a.s. destination (truncation error O(q^{2K}) in that one coefficient).
GridFunction apply_A_half(const GridFunction& h, const Grid& grid);

/// Runs the forward recurrence for a_k and packages the certificate; the
/// residual field is computed through apply_A_half, not the recurrence.
EigenCertificate eigen_sequence(const QParam& q, int K);

/// Verifies the rewritten recurrence
///   q^{-1}(1-q^{2k+2})(a_{k+1} - q a_k)
///       = (1-q^{2k})(a_k - q a_{k-1}) + q^{2k}(1-q)^2 a_k
/// exactly for all k < K, plus a_{k+1} - q a_k >= 0.
bool positivity_rewrite_check(const EigenCertificate& cert);

/// Generating function g(z) = sum a_k z^k as the truncated product
/// prod_j ((1-q^{2j+2}z)/(1-q^{2j+1}z))^2; poles at z = q^{-2j-1} are
/// rejected with margin 1e-6.
Scalar gen_fun(const Scalar& z, const QParam& q, int terms);

/// Coefficients (degree-ascending) of p_{2s}, the polynomial carrying
/// spin s to powers of the spin-1/2 operator: p_0 = 1, p_1 = x,
///   [m+2] p_{m+1}(x) = [m+1][2] x p_m(x) - [m] p_{m-1}(x).
std::vector<Scalar> chebyshev_p(int two_s, const QParam& q);

Scalar eval_poly(const std::vector<Scalar>& coeffs, const Scalar& x);

/// A finitely supported probability measure on spins, stored as
/// (twice-spin, mass) pairs.
class SpinMeasure {
public:
    using Entry = std::pair<int, Scalar>;

    SpinMeasure(std::vector<Entry> entries, Mode mode);
    static SpinMeasure delta(int two_s, Mode mode);

    const std::vector<Entry>& entries() const { return entries_; }
    Mode mode() const { return mode_; }
    bool non_trivial() const { return non_trivial_; }

private:
    std::vector<Entry> entries_;
    Mode mode_;
    bool non_trivial_;
};

/// lambda(omega) = sum_s lambda_s (2s+1)/[2s+1]_q; < 1 iff mass off spin 0.
Scalar levy_eigenvalue(const SpinMeasure& levy, const QParam& q);

/// f(t_k1) f(t_k2)^{-1} lambda^n, the ceiling on the n-step visiting
/// probability from t_k1 to t_k2.
Scalar transience_bound(const EigenCertificate& cert, int k1, int k2, long n);

/// n applications of the dual (measure-side) action of the spin-1/2
/// operator. Mass stepping past t_K is routed to the atom at 0, which is
/// absorbing; total mass is conserved exactly.
GridMeasure push_measure(const GridMeasure& nu, const Grid& grid, int n);

/// n-step walk probability from grid index k1 to k2 on the truncated grid
/// (matrix-power oracle for the transience bound).
Scalar nstep_probability(const Grid& grid, int k1, int k2, int n);

/// nu(t): the measure's mean coordinate. Since t generates C(I_{q^2}),
/// nu_n -> delta_0 weak-* iff nu_n(t) -> 0; 1 - nu(t) is the certified
/// proximity to the counit, and it increases strictly along push_measure.
Scalar measure_mean_coordinate(const GridMeasure& nu, const Grid& grid);

}  // namespace qdwalk
