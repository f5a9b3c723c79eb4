// Exact/floating scalar tower and the deformation parameter q.
//
// Every quantity derived from a QParam carries the same arithmetic mode:
// exact mode computes in arbitrary-precision rationals with no rounding
// anywhere, floating mode in IEEE doubles with a declared comparison
// tolerance. Mixing modes in one expression is a programming error and
// throws.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qdwalk {

enum class Mode { exact, floating };

inline const char* mode_name(Mode m) {
    return m == Mode::exact ? "exact" : "float";
}

/// Default comparison tolerance for floating-mode scalars.
inline constexpr double kDefaultTolerance = 1e-10;

class Scalar {
public:
    Scalar() : mode_(Mode::exact), flt_(0.0) {}

    static Scalar exact(long num, long den = 1);
    static Scalar exact(mpq_class v);
    static Scalar floating(double v) {
        Scalar s;
        s.mode_ = Mode::floating;
        s.flt_ = v;
        return s;
    }
    static Scalar zero(Mode m) { return integer(0, m); }
    static Scalar one(Mode m) { return integer(1, m); }
    static Scalar integer(long v, Mode m) {
        return m == Mode::exact ? exact(v) : floating(static_cast<double>(v));
    }

    Mode mode() const { return mode_; }
    bool is_exact() const { return mode_ == Mode::exact; }

    /// The underlying rational; only valid in exact mode.
    const mpq_class& rational() const;

    /// Lossy in exact mode; identity in floating mode.
    double to_double() const;

    /// "p/q" (or "p") in exact mode, round-trippable decimal in floating mode.
    std::string str() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    /// q^e for integer e (negative allowed); base must be nonzero for e < 0.
    Scalar pow(long e) const;
    Scalar inv() const;
    Scalar abs() const;
    int sign() const;
    bool is_zero() const { return sign() == 0; }

    // Comparisons require matching modes; exact mode compares exactly,
    // floating mode compares the doubles bitwise-as-values.
    bool operator==(const Scalar& o) const { return cmp(o) == 0; }
    bool operator!=(const Scalar& o) const { return cmp(o) != 0; }
    bool operator<(const Scalar& o) const { return cmp(o) < 0; }
    bool operator<=(const Scalar& o) const { return cmp(o) <= 0; }
    bool operator>(const Scalar& o) const { return cmp(o) > 0; }
    bool operator>=(const Scalar& o) const { return cmp(o) >= 0; }

private:
    int cmp(const Scalar& o) const;
    void require_same_mode(const Scalar& o) const;

    Mode mode_;
    mpq_class rat_;
    double flt_ = 0.0;
};

/// Mode-aware closeness: exact scalars must be equal, floating scalars
/// agree within tol.
bool approx_equal(const Scalar& a, const Scalar& b,
                  double tol = kDefaultTolerance);

/// The deformation parameter q, constrained to 0 < q < 1. All derived
/// scalars inherit its mode.
class QParam {
public:
    static QParam exact(long num, long den);
    static QParam exact(const mpq_class& v);
    static QParam floating(double v);

    /// "p/r" selects exact mode, a decimal literal selects floating mode.
    static QParam parse(const std::string& text);

    Mode mode() const { return q_.mode(); }
    const Scalar& value() const { return q_; }

    /// q^e for e in Z.
    Scalar power(long e) const { return q_.pow(e); }

    Scalar scalar(long v) const { return Scalar::integer(v, mode()); }

    std::string str() const { return q_.str(); }

private:
    explicit QParam(Scalar q);
    Scalar q_;
};

}  // namespace qdwalk
