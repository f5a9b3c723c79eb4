#include "qdwalk/centerwalk.hpp"

#include "qdwalk/qarith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace qdwalk {

LevyMeasure::LevyMeasure(std::vector<Entry> entries, int rank, Mode mode)
    : entries_(std::move(entries)), rank_(rank), mode_(mode), non_trivial_(false) {
    if (entries_.empty()) throw std::domain_error("LevyMeasure: empty measure");
    Scalar total = Scalar::zero(mode_);
    for (const auto& [nu, mass] : entries_) {
        if (nu.rank() != rank_) throw std::domain_error("LevyMeasure: rank mismatch");
        if (mass.mode() != mode_) throw std::logic_error("LevyMeasure: mode mismatch");
        if (mass.sign() < 0) throw std::domain_error("LevyMeasure: negative mass");
        total += mass;
        if (!nu.is_trivial() && mass.sign() > 0) non_trivial_ = true;
    }
    if (!approx_equal(total, Scalar::one(mode_)))
        throw std::domain_error("LevyMeasure: masses must sum to 1");
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
}

LevyMeasure LevyMeasure::delta(const DominantWeight& nu, Mode mode) {
    return LevyMeasure({{nu, Scalar::one(mode)}}, nu.rank(), mode);
}

WeightRow transition_row(const DominantWeight& s, const LevyMeasure& levy,
                         const QParam& q) {
    if (s.rank() != levy.rank())
        throw std::domain_error("transition_row: rank mismatch");
    const Scalar d_s = qdim_sun(s, q);
    std::map<DominantWeight, Scalar> acc;
    for (const auto& [nu, mass] : levy.entries()) {
        if (mass.sign() == 0) continue;
        const Scalar d_nu = qdim_sun(nu, q);
        const Scalar scale = mass / (d_nu * d_s);
        for (const auto& [t, n_mult] : lr_coeffs(nu, s).entries()) {
            const Scalar p = scale * q.scalar(n_mult) * qdim_sun(t, q);
            const auto it = acc.find(t);
            if (it == acc.end())
                acc.emplace(t, p);
            else
                it->second += p;
        }
    }
    return WeightRow(acc.begin(), acc.end());
}

TransitionKernel::TransitionKernel(int ball, const LevyMeasure& levy, const QParam& q)
    : ball_(ball), q_(q), levy_(levy) {
    if (ball < 1) throw std::domain_error("TransitionKernel: ball must be >= 1");
    states_ = weights_in_ball(levy.rank(), ball);
    rows_.resize(states_.size());
    cemetery_.assign(states_.size(), Scalar::zero(levy.mode()));
    cdf_.resize(states_.size());
    cdf_targets_.resize(states_.size());

    for (std::size_t i = 0; i < states_.size(); ++i) {
        const WeightRow full = transition_row(states_[i], levy, q);
        for (const auto& [t, p] : full) {
            if (t.size() <= ball_) {
                rows_[i].emplace_back(index_of(t), p);
            } else {
                cemetery_[i] += p;
            }
        }
        // Cumulative float row for sampling; built once so that exact and
        // sampled dynamics share the same kernel object.
        double run = 0.0;
        for (const auto& [j, p] : rows_[i]) {
            run += p.to_double();
            cdf_[i].push_back(run);
            cdf_targets_[i].push_back(j);
        }
        if (cemetery_[i].sign() > 0) {
            run += cemetery_[i].to_double();
            cdf_[i].push_back(run);
            cdf_targets_[i].push_back(kCemetery);
        }
        if (!cdf_[i].empty()) cdf_[i].back() = std::nextafter(run >= 1.0 ? run : 1.0, 2.0);
    }
}

std::int32_t TransitionKernel::index_of(const DominantWeight& w) const {
    const auto it = std::lower_bound(states_.begin(), states_.end(), w);
    if (it == states_.end() || !(*it == w)) return -1;
    return static_cast<std::int32_t>(it - states_.begin());
}

const std::vector<std::pair<std::int32_t, Scalar>>& TransitionKernel::row(
    std::int32_t s) const {
    return rows_.at(static_cast<std::size_t>(s));
}

const Scalar& TransitionKernel::cemetery_mass(std::int32_t s) const {
    return cemetery_.at(static_cast<std::size_t>(s));
}

bool TransitionKernel::interior(std::int32_t s) const {
    return cemetery_.at(static_cast<std::size_t>(s)).sign() == 0;
}

const std::vector<double>& TransitionKernel::sampling_cdf(std::int32_t s) const {
    return cdf_.at(static_cast<std::size_t>(s));
}

const std::vector<std::int32_t>& TransitionKernel::sampling_targets(
    std::int32_t s) const {
    return cdf_targets_.at(static_cast<std::size_t>(s));
}

TransitionKernel build_kernel(int ball, const LevyMeasure& levy, const QParam& q) {
    return TransitionKernel(ball, levy, q);
}

Scalar Distribution::total() const {
    Scalar t = cemetery;
    for (const Scalar& m : mass) t += m;
    return t;
}

Distribution distribution_after(const TransitionKernel& kernel, int steps) {
    if (steps < 0) throw std::domain_error("distribution_after: negative steps");
    const Mode mode = kernel.levy().mode();
    const std::int32_t start = kernel.index_of(DominantWeight::trivial(kernel.levy().rank()));
    Distribution dist;
    dist.mass.assign(kernel.states().size(), Scalar::zero(mode));
    dist.cemetery = Scalar::zero(mode);
    dist.mass[static_cast<std::size_t>(start)] = Scalar::one(mode);

    for (int step = 0; step < steps; ++step) {
        std::vector<Scalar> next(dist.mass.size(), Scalar::zero(mode));
        for (std::size_t i = 0; i < dist.mass.size(); ++i) {
            if (dist.mass[i].sign() == 0) continue;
            for (const auto& [j, p] : kernel.row(static_cast<std::int32_t>(i)))
                next[static_cast<std::size_t>(j)] += dist.mass[i] * p;
            dist.cemetery += dist.mass[i] * kernel.cemetery_mass(static_cast<std::int32_t>(i));
        }
        dist.mass = std::move(next);
    }
    return dist;
}

std::vector<PathSample> sample_paths(const TransitionKernel& kernel, int count,
                                     int length, std::uint64_t seed) {
    if (count < 1 || length < 1)
        throw std::domain_error("sample_paths: count and length must be >= 1");
    const std::int32_t start =
        kernel.index_of(DominantWeight::trivial(kernel.levy().rank()));

    std::vector<PathSample> paths(static_cast<std::size_t>(count));
    for (int p = 0; p < count; ++p) {
        std::seed_seq seq{seed, static_cast<std::uint64_t>(p)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        PathSample& sample = paths[static_cast<std::size_t>(p)];
        sample.seed = seed;
        sample.states.reserve(static_cast<std::size_t>(length));
        std::int32_t cur = start;
        for (int k = 0; k < length; ++k) {
            if (cur == TransitionKernel::kCemetery) {
                sample.states.push_back(cur);  // absorbing
                continue;
            }
            const auto& cdf = kernel.sampling_cdf(cur);
            const auto& targets = kernel.sampling_targets(cur);
            const double u = unit(rng);
            const std::size_t idx = static_cast<std::size_t>(
                std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
            cur = targets[std::min(idx, targets.size() - 1)];
            sample.states.push_back(cur);
        }
    }
    return paths;
}

EigenCheck dim_ratio_eigencheck(const LevyMeasure& levy, const QParam& q, int ball) {
    const TransitionKernel kernel(ball, levy, q);
    const Mode mode = levy.mode();

    Scalar lambda = Scalar::zero(mode);
    for (const auto& [nu, mass] : levy.entries())
        lambda += mass * q.scalar(dim_sun(nu)) / qdim_sun(nu, q);

    std::vector<Scalar> h;
    h.reserve(kernel.states().size());
    for (const DominantWeight& s : kernel.states())
        h.push_back(q.scalar(dim_sun(s)) / qdim_sun(s, q));

    EigenCheck check{lambda, Scalar::zero(mode), 0};
    for (std::size_t i = 0; i < kernel.states().size(); ++i) {
        if (!kernel.interior(static_cast<std::int32_t>(i))) continue;
        ++check.interior_states;
        Scalar acc = Scalar::zero(mode);
        for (const auto& [j, p] : kernel.row(static_cast<std::int32_t>(i)))
            acc += p * h[static_cast<std::size_t>(j)];
        const Scalar residual = (acc - lambda * h[i]).abs();
        if (residual > check.residual) check.residual = residual;
    }
    return check;
}

MartingaleTrace martingale_trace(
    const TransitionKernel& kernel, const std::vector<PathSample>& paths,
    const std::function<double(const DominantWeight&)>& h, double h_at_cemetery,
    int tail_window, double threshold) {
    if (tail_window < 1)
        throw std::domain_error("martingale_trace: tail window must be >= 1");

    MartingaleTrace trace;
    trace.tail_window = tail_window;
    trace.threshold = threshold;
    trace.values.reserve(paths.size());
    trace.tail_oscillation.reserve(paths.size());

    std::size_t converged = 0;
    for (const PathSample& path : paths) {
        std::vector<double> vals;
        vals.reserve(path.states.size());
        for (std::int32_t s : path.states)
            vals.push_back(s == TransitionKernel::kCemetery
                               ? h_at_cemetery
                               : h(kernel.states()[static_cast<std::size_t>(s)]));
        const std::size_t window =
            std::min<std::size_t>(vals.size(), static_cast<std::size_t>(tail_window));
        double lo = vals.back(), hi = vals.back();
        for (std::size_t k = vals.size() - window; k < vals.size(); ++k) {
            lo = std::min(lo, vals[k]);
            hi = std::max(hi, vals[k]);
        }
        const double osc = hi - lo;
        if (osc <= threshold) ++converged;
        trace.tail_oscillation.push_back(osc);
        trace.values.push_back(std::move(vals));
    }
    trace.converged_fraction =
        paths.empty() ? 1.0 : static_cast<double>(converged) / static_cast<double>(paths.size());
    return trace;
}

}  // namespace qdwalk
