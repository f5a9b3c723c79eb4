#include "qdwalk/hecke.hpp"

#include <stdexcept>

namespace qdwalk {

const char* variant_name(HeckeVariant v) {
    switch (v) {
        case HeckeVariant::pi: return "pi";
        case HeckeVariant::pi_plus: return "pi_plus";
        case HeckeVariant::pi_minus: return "pi_minus";
    }
    return "?";
}

HeckeVariant parse_variant(const std::string& name) {
    if (name == "pi") return HeckeVariant::pi;
    if (name == "pi_plus") return HeckeVariant::pi_plus;
    if (name == "pi_minus") return HeckeVariant::pi_minus;
    throw std::invalid_argument("unknown Hecke variant '" + name + "'");
}

namespace {

std::size_t ipow(int base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
    return r;
}

}  // namespace

ChainOperator::ChainOperator(int site_dim, int sites, Mode mode)
    : site_dim_(site_dim), sites_(sites), mode_(mode), dim_(ipow(site_dim, sites)) {
    if (site_dim < 2) throw std::domain_error("ChainOperator: site dimension must be >= 2");
    if (sites < 1 || sites > 5 || site_dim > 4)
        throw std::domain_error("ChainOperator: desk-scale caps are m <= 5, n <= 4");
    coeff_.assign(dim_ * dim_, Scalar::zero(mode));
}

ChainOperator ChainOperator::identity(int site_dim, int sites, Mode mode) {
    ChainOperator id(site_dim, sites, mode);
    for (std::size_t i = 0; i < id.dim_; ++i)
        id.coeff_[i * id.dim_ + i] = Scalar::one(mode);
    return id;
}

const Scalar& ChainOperator::at(std::size_t r, std::size_t c) const {
    return coeff_.at(r * dim_ + c);
}

void ChainOperator::set(std::size_t r, std::size_t c, Scalar v) {
    coeff_.at(r * dim_ + c) = std::move(v);
}

ChainOperator ChainOperator::operator*(const ChainOperator& o) const {
    if (dim_ != o.dim_ || mode_ != o.mode_)
        throw std::domain_error("ChainOperator: shape/mode mismatch in product");
    ChainOperator out(site_dim_, sites_, mode_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t k = 0; k < dim_; ++k) {
            const Scalar& a = coeff_[i * dim_ + k];
            if (a.sign() == 0) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                const Scalar& b = o.coeff_[k * dim_ + j];
                if (b.sign() == 0) continue;
                out.coeff_[i * dim_ + j] += a * b;
            }
        }
    return out;
}

ChainOperator ChainOperator::operator+(const ChainOperator& o) const {
    if (dim_ != o.dim_ || mode_ != o.mode_)
        throw std::domain_error("ChainOperator: shape/mode mismatch in sum");
    ChainOperator out = *this;
    for (std::size_t i = 0; i < coeff_.size(); ++i) out.coeff_[i] += o.coeff_[i];
    return out;
}

ChainOperator ChainOperator::operator-(const ChainOperator& o) const {
    if (dim_ != o.dim_ || mode_ != o.mode_)
        throw std::domain_error("ChainOperator: shape/mode mismatch in difference");
    ChainOperator out = *this;
    for (std::size_t i = 0; i < coeff_.size(); ++i) out.coeff_[i] -= o.coeff_[i];
    return out;
}

ChainOperator ChainOperator::scaled(const Scalar& s) const {
    ChainOperator out = *this;
    for (Scalar& c : out.coeff_) c *= s;
    return out;
}

Scalar ChainOperator::max_abs_diff(const ChainOperator& o) const {
    if (dim_ != o.dim_ || mode_ != o.mode_)
        throw std::domain_error("ChainOperator: shape/mode mismatch in comparison");
    Scalar worst = Scalar::zero(mode_);
    for (std::size_t i = 0; i < coeff_.size(); ++i) {
        const Scalar d = (coeff_[i] - o.coeff_[i]).abs();
        if (d > worst) worst = d;
    }
    return worst;
}

std::vector<Scalar> ChainOperator::diagonal() const {
    std::vector<Scalar> d;
    d.reserve(dim_);
    for (std::size_t i = 0; i < dim_; ++i) d.push_back(coeff_[i * dim_ + i]);
    return d;
}

bool ChainOperator::is_scalar(Scalar* value) const {
    const Scalar& first = coeff_[0];
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) {
            const Scalar& v = coeff_[r * dim_ + c];
            if (r == c ? !(v == first) : v.sign() != 0) return false;
        }
    if (value) *value = first;
    return true;
}

ChainOperator g1_matrix(int n, const QParam& q, HeckeVariant variant) {
    if (n < 2) throw std::domain_error("g1_matrix: n must be >= 2");
    const Mode mode = q.mode();
    const Scalar qv = q.value();
    const Scalar q_diff = qv - q.power(-1);
    const Scalar flip_sign = variant == HeckeVariant::pi_minus
                                 ? -Scalar::one(mode)
                                 : Scalar::one(mode);

    ChainOperator g(n, 2, mode);
    const auto idx = [n](int a, int b) {
        return static_cast<std::size_t>(a) * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(b);
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                g.set(idx(i, i), idx(i, i), qv);
                continue;
            }
            // Diagonal part (q - q^{-1}) E_ii (x) E_jj: i<j for pi, i>j for pi_pm.
            const bool carries = variant == HeckeVariant::pi ? i < j : i > j;
            if (carries) g.set(idx(i, j), idx(i, j), q_diff);
            // Flip part E_ij (x) E_ji maps e_j (x) e_i to e_i (x) e_j.
            g.set(idx(i, j), idx(j, i), flip_sign);
        }
    return g;
}

ChainOperator embed_gk(const ChainOperator& g1, int k, int m) {
    if (g1.sites() != 2) throw std::domain_error("embed_gk: generator must act on 2 sites");
    if (k < 1 || k > m - 1) throw std::domain_error("embed_gk: k out of range");
    const int n = g1.site_dim();
    ChainOperator out(n, m, g1.mode());

    const std::size_t left = ipow(n, k - 1);     // sites before the pair
    const std::size_t mid = ipow(n, 2);          // the pair
    const std::size_t right = ipow(n, m - k - 1);  // sites after the pair
    for (std::size_t l = 0; l < left; ++l)
        for (std::size_t a = 0; a < mid; ++a)
            for (std::size_t b = 0; b < mid; ++b) {
                const Scalar& v = g1.at(a, b);
                if (v.sign() == 0) continue;
                for (std::size_t r = 0; r < right; ++r) {
                    const std::size_t row = (l * mid + a) * right + r;
                    const std::size_t col = (l * mid + b) * right + r;
                    out.set(row, col, v);
                }
            }
    return out;
}

HeckeReport check_hecke(int n, int m, const QParam& q, HeckeVariant variant) {
    if (m < 3) throw std::domain_error("check_hecke: need m >= 3 for braid relations");
    const Mode mode = q.mode();
    HeckeReport report;
    report.variant = variant;
    report.n = n;
    report.m = m;
    report.max_residual = Scalar::zero(mode);

    const ChainOperator g1 = g1_matrix(n, q, variant);
    std::vector<ChainOperator> g;
    g.reserve(static_cast<std::size_t>(m) - 1);
    for (int k = 1; k <= m - 1; ++k) g.push_back(embed_gk(g1, k, m));

    const ChainOperator id = ChainOperator::identity(n, m, mode);
    const Scalar q_diff = q.value() - q.power(-1);

    const auto track = [&report](const Scalar& r) {
        if (r > report.max_residual) report.max_residual = r;
    };

    report.quadratic_ok = true;
    for (const ChainOperator& gi : g) {
        const Scalar r = (gi * gi).max_abs_diff(gi.scaled(q_diff) + id);
        track(r);
        if (r.sign() != 0) report.quadratic_ok = false;
    }

    report.braid_ok = true;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        const Scalar r = (g[i] * g[i + 1] * g[i]).max_abs_diff(g[i + 1] * g[i] * g[i + 1]);
        track(r);
        if (r.sign() != 0) report.braid_ok = false;
    }

    report.commute_ok = true;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 2; j < g.size(); ++j) {
            const Scalar r = (g[i] * g[j]).max_abs_diff(g[j] * g[i]);
            track(r);
            if (r.sign() != 0) report.commute_ok = false;
        }
    return report;
}

InvariantDensity invariant_density(int n, const QParam& q) {
    if (n < 2) throw std::domain_error("invariant_density: n must be >= 2");
    const Scalar one = Scalar::one(q.mode());
    const Scalar c = (one - q.power(2)) / (one - q.power(2L * n));
    InvariantDensity d;
    d.weights.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) d.weights.push_back(c * q.power(2L * (n - i)));
    return d;
}

ChainOperator cond_expect_last(const ChainOperator& x, const InvariantDensity& density) {
    const int n = x.site_dim();
    if (static_cast<int>(density.weights.size()) != n)
        throw std::domain_error("cond_expect_last: density rank mismatch");
    if (x.sites() < 2)
        throw std::domain_error("cond_expect_last: need at least 2 sites");

    ChainOperator out(n, x.sites() - 1, x.mode());
    const std::size_t outer = out.dim();
    for (std::size_t r = 0; r < outer; ++r)
        for (std::size_t c = 0; c < outer; ++c) {
            Scalar acc = Scalar::zero(x.mode());
            for (int a = 0; a < n; ++a)
                acc += density.weights[static_cast<std::size_t>(a)] *
                       x.at(r * static_cast<std::size_t>(n) + static_cast<std::size_t>(a),
                            c * static_cast<std::size_t>(n) + static_cast<std::size_t>(a));
            out.set(r, c, acc);
        }
    return out;
}

Scalar cond_expect_plus_scalar(int n, const QParam& q) {
    const Scalar one = Scalar::one(q.mode());
    const Scalar c = (one - q.power(2)) / (one - q.power(2L * n));
    return c * q.power(2L * n - 1);
}

}  // namespace qdwalk
