// Random walk on the center l^inf(Irr(SU(n))) induced by a left-invariant
// state with Levy measure {lambda_nu}:
//
//   p(s,t) = sum_nu lambda_nu N^t_{nu,s} d_t / (d_nu d_s).
//
// Row-stochasticity is exactly the quantum-dimension sum rule, so every
// interior row sums to 1 with no rounding in exact mode. The ratio
// h(s) = dim(s)/d_s is an eigenfunction with eigenvalue
// sum_nu lambda_nu dim(nu)/d_nu < 1 off the trivial measure, which is the
// transience certificate driving everything downstream.

#pragma once

#include "qdwalk/fusion.hpp"
#include "qdwalk/scalar.hpp"
#include "qdwalk/weight.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace qdwalk {

class LevyMeasure {
public:
    using Entry = std::pair<DominantWeight, Scalar>;

    /// Entries must have non-negative masses summing to exactly 1 in exact
    /// mode (within tol in floating mode).
    LevyMeasure(std::vector<Entry> entries, int rank, Mode mode);

    static LevyMeasure delta(const DominantWeight& nu, Mode mode);

    const std::vector<Entry>& entries() const { return entries_; }
    int rank() const { return rank_; }
    Mode mode() const { return mode_; }

    /// Some mass sits off the trivial representation.
    bool non_trivial() const { return non_trivial_; }

private:
    std::vector<Entry> entries_;
    int rank_;
    Mode mode_;
    bool non_trivial_;
};

using WeightRow = std::vector<std::pair<DominantWeight, Scalar>>;

/// One row of the transition kernel; entries are non-negative and sum to
/// exactly 1 in exact mode.
WeightRow transition_row(const DominantWeight& s, const LevyMeasure& levy,
                         const QParam& q);

/// Kernel truncated to the ball |lambda| <= radius. Mass leaving the ball
/// is routed to an absorbing cemetery coordinate, kept separate so that
/// escape mass stays observable and rows stay exactly stochastic.
class TransitionKernel {
public:
    static constexpr std::int32_t kCemetery = -1;

    TransitionKernel(int ball, const LevyMeasure& levy, const QParam& q);

    const std::vector<DominantWeight>& states() const { return states_; }
    int ball() const { return ball_; }
    const QParam& q() const { return q_; }
    const LevyMeasure& levy() const { return levy_; }

    /// Index of a state, or -1 if outside the ball.
    std::int32_t index_of(const DominantWeight& w) const;

    /// Stored transitions of state s (cemetery excluded).
    const std::vector<std::pair<std::int32_t, Scalar>>& row(std::int32_t s) const;
    const Scalar& cemetery_mass(std::int32_t s) const;

    /// True when no mass of the row leaves the ball.
    bool interior(std::int32_t s) const;

    /// Float cumulative rows, fixed at construction, used for sampling.
    const std::vector<double>& sampling_cdf(std::int32_t s) const;
    const std::vector<std::int32_t>& sampling_targets(std::int32_t s) const;

private:
    int ball_;
    QParam q_;
    LevyMeasure levy_;
    std::vector<DominantWeight> states_;
    std::vector<std::vector<std::pair<std::int32_t, Scalar>>> rows_;
    std::vector<Scalar> cemetery_;
    std::vector<std::vector<double>> cdf_;
    std::vector<std::vector<std::int32_t>> cdf_targets_;
};

TransitionKernel build_kernel(int ball, const LevyMeasure& levy, const QParam& q);

/// Distribution over kernel states plus the cemetery coordinate.
struct Distribution {
    std::vector<Scalar> mass;  // aligned with kernel.states()
    Scalar cemetery;
    Scalar total() const;
};

/// n-step law started at the trivial weight.
Distribution distribution_after(const TransitionKernel& kernel, int steps);

/// One sampled trajectory; states are kernel indices (kCemetery once the
/// path has left the ball, absorbing). states[0] is the successor of the
/// trivial weight.
struct PathSample {
    std::uint64_t seed;
    std::vector<std::int32_t> states;
};

/// RNG: mt19937-64 seeded per path from (seed, path index), so results do
/// not depend on scheduling.
inline constexpr const char* kRngId = "mt19937-64";

std::vector<PathSample> sample_paths(const TransitionKernel& kernel, int count,
                                     int length, std::uint64_t seed);

struct EigenCheck {
    Scalar lambda;        // sum_nu lambda_nu dim(nu)/d_nu
    Scalar residual;      // sup over interior states |(Ph)(s) - lambda h(s)|
    int interior_states;  // rows entering the residual
};

/// Verifies P h = lambda h for h = dim/qdim on the truncated kernel.
EigenCheck dim_ratio_eigencheck(const LevyMeasure& levy, const QParam& q, int ball);

struct MartingaleTrace {
    std::vector<std::vector<double>> values;  // h along each path
    std::vector<double> tail_oscillation;     // max-min over the tail window
    double converged_fraction;                // paths with oscillation <= threshold
    int tail_window;
    double threshold;
};

/// Evaluates h(s_k) along sampled paths; h_at_cemetery extends h to the
/// escaped state.
MartingaleTrace martingale_trace(
    const TransitionKernel& kernel, const std::vector<PathSample>& paths,
    const std::function<double(const DominantWeight&)>& h, double h_at_cemetery,
    int tail_window, double threshold);

}  // namespace qdwalk
