#include "qdwalk/cosetwalk.hpp"

#include "qdwalk/qarith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdwalk {

Grid::Grid(const QParam& q_in, int K_in) : q(q_in), K(K_in) {
    if (K < 1) throw std::domain_error("Grid: K must be >= 1");
}

Scalar Grid::point(int k) const {
    if (k < 0 || k > K) throw std::domain_error("Grid: index out of range");
    return q.power(2L * k);
}

GridFunction GridFunction::constant(const Scalar& c, int K) {
    GridFunction h;
    h.values.assign(static_cast<std::size_t>(K) + 1, c);
    h.at_zero = c;
    return h;
}

GridMeasure GridMeasure::delta_point(int k, int K, Mode mode) {
    GridMeasure nu;
    nu.mass.assign(static_cast<std::size_t>(K) + 1, Scalar::zero(mode));
    nu.at_zero = Scalar::zero(mode);
    nu.mass.at(static_cast<std::size_t>(k)) = Scalar::one(mode);
    return nu;
}

Scalar GridMeasure::total() const {
    Scalar t = at_zero;
    for (const Scalar& m : mass) t += m;
    return t;
}

namespace {

// Transition weights of the walk at grid row k: the coefficients the
// function-side formula attaches to h(t_{k+1}), h(t_k), h(t_{k-1}).
struct RowCoeffs {
    Scalar up;    // to t_{k+1} (to the atom at 0 when k = K)
    Scalar stay;  // at t_k
    Scalar down;  // to t_{k-1} (zero when k = 0)
};

RowCoeffs row_coeffs(const Grid& grid, int k) {
    const QParam& q = grid.q;
    const Scalar one = Scalar::one(q.mode());
    const Scalar inv_norm = q_int(2, q).inv();  // 1/[2]_q
    const Scalar t = grid.point(k);
    const Scalar q2t = q.power(2) * t;
    RowCoeffs c{
        q.power(-1) * (one - q2t) * inv_norm,
        (q.power(-1) * q2t + q.power(1) * t) * inv_norm,
        q.power(1) * (one - t) * inv_norm,
    };
    return c;
}

}  // namespace

GridFunction apply_A_half(const GridFunction& h, const Grid& grid) {
    const std::size_t points = static_cast<std::size_t>(grid.K) + 1;
    if (h.values.size() != points)
        throw std::domain_error("apply_A_half: grid/function size mismatch");

    const QParam& q = grid.q;
    const Scalar one = Scalar::one(q.mode());
    const Scalar inv_norm = q_int(2, q).inv();

    GridFunction out;
    out.values.reserve(points);
    out.at_zero = h.at_zero;  // 0 is absorbing
    for (int k = 0; k <= grid.K; ++k) {
        const Scalar t = grid.point(k);
        const Scalar q2t = q.power(2) * t;
        // h(q^2 t): next grid point, or the boundary read of h(0) at k = K.
        const Scalar& h_next = k < grid.K
                                   ? h.values[static_cast<std::size_t>(k) + 1]
                                   : h.at_zero;
        Scalar acc = q.power(-1) * ((one - q2t) * h_next +
                                    q2t * h.values[static_cast<std::size_t>(k)]);
        acc += q.power(1) * t * h.values[static_cast<std::size_t>(k)];
        if (k > 0) {
            // (1-t) h(q^{-2} t); the coefficient vanishes identically at t_0 = 1.
            acc += q.power(1) * (one - t) * h.values[static_cast<std::size_t>(k) - 1];
        }
        out.values.push_back(acc * inv_norm);
    }
    return out;
}

EigenCertificate eigen_sequence(const QParam& q, int K) {
    if (K < 1) throw std::domain_error("eigen_sequence: K must be >= 1");
    const Mode mode = q.mode();
    const Scalar one = Scalar::one(mode);
    const Scalar two = Scalar::integer(2, mode);

    std::vector<Scalar> a;
    a.reserve(static_cast<std::size_t>(K) + 1);
    a.push_back(one);
    for (int k = 0; k + 1 <= K; ++k) {
        // a_{k+1} = q (2(1-q^{2k+1}) a_k - q(1-q^{2k}) a_{k-1}) / (1-q^{2k+2})
        Scalar rhs = two * (one - q.power(2L * k + 1)) * a[static_cast<std::size_t>(k)];
        if (k >= 1)
            rhs -= q.power(1) * (one - q.power(2L * k)) * a[static_cast<std::size_t>(k) - 1];
        a.push_back(q.power(1) * rhs / (one - q.power(2L * k + 2)));
    }

    EigenCertificate cert{q, K, GridFunction{}, two / q_int(2, q),
                          Scalar::zero(mode), a[0], true, true};
    cert.f.values = std::move(a);
    cert.f.at_zero = Scalar::zero(mode);

    Scalar qpow = one;
    for (int k = 0; k <= K; ++k) {
        const Scalar& ak = cert.f.values[static_cast<std::size_t>(k)];
        if (ak < cert.min_f) cert.min_f = ak;
        if (ak < qpow) cert.geometric_bound = false;
        if (k < K) {
            const Scalar diff =
                cert.f.values[static_cast<std::size_t>(k) + 1] - q.power(1) * ak;
            if (diff.sign() < 0) cert.diff_nonneg = false;
        }
        qpow *= q.value();
    }

    // Residual through the operator itself, on the rows that read no
    // boundary value.
    const Grid grid(q, K);
    const GridFunction af = apply_A_half(cert.f, grid);
    for (int k = 0; k < K; ++k) {
        const Scalar r = (af.values[static_cast<std::size_t>(k)] -
                          cert.lambda * cert.f.values[static_cast<std::size_t>(k)])
                             .abs();
        if (r > cert.residual) cert.residual = r;
    }
    return cert;
}

bool positivity_rewrite_check(const EigenCertificate& cert) {
    const QParam& q = cert.q;
    const Mode mode = q.mode();
    const Scalar one = Scalar::one(mode);
    const auto& a = cert.f.values;

    for (int k = 0; k + 1 <= cert.K; ++k) {
        const Scalar diff_up = a[static_cast<std::size_t>(k) + 1] - q.power(1) * a[static_cast<std::size_t>(k)];
        if (diff_up.sign() < 0) return false;
        const Scalar lhs = q.power(-1) * (one - q.power(2L * k + 2)) * diff_up;
        Scalar rhs = q.power(2L * k) * (one - q.power(1)) * (one - q.power(1)) *
                     a[static_cast<std::size_t>(k)];
        if (k >= 1) {
            const Scalar diff_dn =
                a[static_cast<std::size_t>(k)] - q.power(1) * a[static_cast<std::size_t>(k) - 1];
            rhs += (one - q.power(2L * k)) * diff_dn;
        }
        if (!approx_equal(lhs, rhs)) return false;
    }
    return true;
}

Scalar gen_fun(const Scalar& z, const QParam& q, int terms) {
    if (terms < 1) throw std::domain_error("gen_fun: terms must be >= 1");
    const Scalar one = Scalar::one(q.mode());
    const double margin = 1e-6;
    for (int j = 0; j < terms; ++j) {
        const Scalar denom_factor = one - q.power(2L * j + 1) * z;
        if (std::fabs(denom_factor.to_double()) < margin)
            throw std::domain_error("gen_fun: z within margin of a pole");
    }
    Scalar acc = one;
    for (int j = 0; j < terms; ++j) {
        const Scalar ratio =
            (one - q.power(2L * j + 2) * z) / (one - q.power(2L * j + 1) * z);
        acc *= ratio * ratio;
    }
    return acc;
}

std::vector<Scalar> chebyshev_p(int two_s, const QParam& q) {
    if (two_s < 0) throw std::domain_error("chebyshev_p: negative twice-spin");
    const Mode mode = q.mode();
    std::vector<Scalar> prev{Scalar::one(mode)};            // p_0
    if (two_s == 0) return prev;
    std::vector<Scalar> cur{Scalar::zero(mode), Scalar::one(mode)};  // p_1 = x
    for (int m = 1; m < two_s; ++m) {
        // [m+2] p_{m+1} = [m+1][2] x p_m - [m] p_{m-1}
        const Scalar lead = q_int(m + 1, q) * q_int(2, q);
        const Scalar trail = q_int(m, q);
        const Scalar denom = q_int(m + 2, q);
        std::vector<Scalar> next(cur.size() + 1, Scalar::zero(mode));
        for (std::size_t i = 0; i < cur.size(); ++i)
            next[i + 1] += lead * cur[i];
        for (std::size_t i = 0; i < prev.size(); ++i)
            next[i] -= trail * prev[i];
        for (Scalar& c : next) c /= denom;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Scalar eval_poly(const std::vector<Scalar>& coeffs, const Scalar& x) {
    if (coeffs.empty()) throw std::domain_error("eval_poly: empty polynomial");
    Scalar acc = coeffs.back();
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

SpinMeasure::SpinMeasure(std::vector<Entry> entries, Mode mode)
    : entries_(std::move(entries)), mode_(mode), non_trivial_(false) {
    if (entries_.empty()) throw std::domain_error("SpinMeasure: empty measure");
    Scalar total = Scalar::zero(mode_);
    for (const auto& [two_s, mass] : entries_) {
        if (two_s < 0) throw std::domain_error("SpinMeasure: negative twice-spin");
        if (mass.mode() != mode_) throw std::logic_error("SpinMeasure: mode mismatch");
        if (mass.sign() < 0) throw std::domain_error("SpinMeasure: negative mass");
        if (two_s > 0 && mass.sign() > 0) non_trivial_ = true;
    }
    for (const auto& e : entries_) total += e.second;
    if (!approx_equal(total, Scalar::one(mode_)))
        throw std::domain_error("SpinMeasure: masses must sum to 1");
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
}

SpinMeasure SpinMeasure::delta(int two_s, Mode mode) {
    return SpinMeasure({{two_s, Scalar::one(mode)}}, mode);
}

Scalar levy_eigenvalue(const SpinMeasure& levy, const QParam& q) {
    Scalar acc = Scalar::zero(q.mode());
    for (const auto& [two_s, mass] : levy.entries())
        acc += mass * q.scalar(two_s + 1) / q_int(two_s + 1, q);
    return acc;
}

Scalar transience_bound(const EigenCertificate& cert, int k1, int k2, long n) {
    if (k1 < 0 || k1 > cert.K || k2 < 0 || k2 > cert.K)
        throw std::domain_error("transience_bound: index out of range");
    if (n < 0) throw std::domain_error("transience_bound: negative n");
    return cert.f.values[static_cast<std::size_t>(k1)] /
           cert.f.values[static_cast<std::size_t>(k2)] * cert.lambda.pow(n);
}

GridMeasure push_measure(const GridMeasure& nu, const Grid& grid, int n) {
    const std::size_t points = static_cast<std::size_t>(grid.K) + 1;
    if (nu.mass.size() != points)
        throw std::domain_error("push_measure: grid/measure size mismatch");
    if (n < 0) throw std::domain_error("push_measure: negative n");

    GridMeasure cur = nu;
    const Mode mode = grid.q.mode();
    for (int step = 0; step < n; ++step) {
        GridMeasure next;
        next.mass.assign(points, Scalar::zero(mode));
        next.at_zero = cur.at_zero;  // absorbing
        for (int k = 0; k <= grid.K; ++k) {
            const Scalar& m = cur.mass[static_cast<std::size_t>(k)];
            if (m.sign() == 0) continue;
            const RowCoeffs c = row_coeffs(grid, k);
            next.mass[static_cast<std::size_t>(k)] += m * c.stay;
            if (k < grid.K)
                next.mass[static_cast<std::size_t>(k) + 1] += m * c.up;
            else
                next.at_zero += m * c.up;  // steps past t_K land on 0
            if (k > 0) next.mass[static_cast<std::size_t>(k) - 1] += m * c.down;
        }
        cur = std::move(next);
    }
    return cur;
}

Scalar nstep_probability(const Grid& grid, int k1, int k2, int n) {
    GridMeasure start = GridMeasure::delta_point(k1, grid.K, grid.q.mode());
    const GridMeasure end = push_measure(start, grid, n);
    return end.mass.at(static_cast<std::size_t>(k2));
}

Scalar measure_mean_coordinate(const GridMeasure& nu, const Grid& grid) {
    Scalar acc = Scalar::zero(grid.q.mode());
    for (int k = 0; k <= grid.K; ++k)
        acc += nu.mass[static_cast<std::size_t>(k)] * grid.point(k);
    return acc;  // the atom at 0 contributes t = 0
}

}  // namespace qdwalk
