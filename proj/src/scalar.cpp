#include "qdwalk/scalar.hpp"

#include <cmath>
#include <cstdio>

namespace qdwalk {

Scalar Scalar::exact(long num, long den) {
    if (den == 0) throw std::domain_error("Scalar: zero denominator");
    Scalar s;
    s.mode_ = Mode::exact;
    s.rat_ = mpq_class(num, den);
    s.rat_.canonicalize();
    return s;
}

Scalar Scalar::exact(mpq_class v) {
    Scalar s;
    s.mode_ = Mode::exact;
    v.canonicalize();
    s.rat_ = std::move(v);
    return s;
}

const mpq_class& Scalar::rational() const {
    if (mode_ != Mode::exact)
        throw std::logic_error("Scalar: rational() on a floating scalar");
    return rat_;
}

double Scalar::to_double() const {
    return mode_ == Mode::exact ? rat_.get_d() : flt_;
}

std::string Scalar::str() const {
    if (mode_ == Mode::exact) return rat_.get_str();
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", flt_);
    return buf;
}

void Scalar::require_same_mode(const Scalar& o) const {
    if (mode_ != o.mode_)
        throw std::logic_error("Scalar: mixed exact/floating operands");
}

Scalar Scalar::operator+(const Scalar& o) const {
    require_same_mode(o);
    if (mode_ == Mode::exact) return exact(mpq_class(rat_ + o.rat_));
    return floating(flt_ + o.flt_);
}

Scalar Scalar::operator-(const Scalar& o) const {
    require_same_mode(o);
    if (mode_ == Mode::exact) return exact(mpq_class(rat_ - o.rat_));
    return floating(flt_ - o.flt_);
}

Scalar Scalar::operator*(const Scalar& o) const {
    require_same_mode(o);
    if (mode_ == Mode::exact) return exact(mpq_class(rat_ * o.rat_));
    return floating(flt_ * o.flt_);
}

Scalar Scalar::operator/(const Scalar& o) const {
    require_same_mode(o);
    if (o.is_zero()) throw std::domain_error("Scalar: division by zero");
    if (mode_ == Mode::exact) return exact(mpq_class(rat_ / o.rat_));
    return floating(flt_ / o.flt_);
}

Scalar Scalar::operator-() const {
    if (mode_ == Mode::exact) return exact(mpq_class(-rat_));
    return floating(-flt_);
}

Scalar Scalar::pow(long e) const {
    if (e == 0) return one(mode_);
    if (mode_ == Mode::floating) return floating(std::pow(flt_, static_cast<double>(e)));
    if (rat_ == 0 && e < 0) throw std::domain_error("Scalar: 0 to a negative power");
    const unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    mpq_class r;
    mpz_pow_ui(r.get_num_mpz_t(), rat_.get_num_mpz_t(), n);
    mpz_pow_ui(r.get_den_mpz_t(), rat_.get_den_mpz_t(), n);
    if (e < 0) {
        mpz_swap(r.get_num_mpz_t(), r.get_den_mpz_t());
        if (sgn(r.get_den()) < 0) {
            r.get_num() = -r.get_num();
            r.get_den() = -r.get_den();
        }
    }
    return exact(std::move(r));
}

Scalar Scalar::inv() const { return one(mode_) / *this; }

Scalar Scalar::abs() const {
    if (mode_ == Mode::exact) return exact(mpq_class(::abs(rat_)));
    return floating(std::fabs(flt_));
}

int Scalar::sign() const {
    if (mode_ == Mode::exact) return sgn(rat_);
    return flt_ > 0.0 ? 1 : (flt_ < 0.0 ? -1 : 0);
}

int Scalar::cmp(const Scalar& o) const {
    require_same_mode(o);
    if (mode_ == Mode::exact) return ::cmp(rat_, o.rat_);
    return flt_ > o.flt_ ? 1 : (flt_ < o.flt_ ? -1 : 0);
}

bool approx_equal(const Scalar& a, const Scalar& b, double tol) {
    if (a.mode() != b.mode()) return false;
    if (a.is_exact()) return a == b;
    return std::fabs(a.to_double() - b.to_double()) <= tol;
}

QParam::QParam(Scalar q) : q_(std::move(q)) {
    const bool in_range = q_.sign() > 0 && q_ < Scalar::one(q_.mode());
    if (!in_range) throw std::domain_error("QParam: q must satisfy 0 < q < 1");
}

QParam QParam::exact(long num, long den) { return QParam(Scalar::exact(num, den)); }

QParam QParam::exact(const mpq_class& v) { return QParam(Scalar::exact(v)); }

QParam QParam::floating(double v) { return QParam(Scalar::floating(v)); }

QParam QParam::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("QParam: empty q");
    const auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            mpq_class v(text);
            v.canonicalize();
            return exact(v);
        }
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size())
            throw std::invalid_argument("trailing characters");
        return floating(v);
    } catch (const std::domain_error&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("QParam: cannot parse q from '" + text + "'");
    }
}

}  // namespace qdwalk
