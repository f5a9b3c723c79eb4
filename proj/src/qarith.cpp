#include "qdwalk/qarith.hpp"

#include <stdexcept>

namespace qdwalk {

Scalar q_int(long n, const QParam& q) {
    if (n < 1) throw std::domain_error("q_int: n must be >= 1");
    // Sum form q^(n-1) + q^(n-3) + ... + q^(1-n); avoids the removable
    // singularity of the quotient form.
    Scalar acc = Scalar::zero(q.mode());
    for (long i = 0; i < n; ++i) acc += q.power(n - 1 - 2 * i);
    return acc;
}

long dim_sun(const DominantWeight& lam) {
    const std::vector<int> p = lam.padded();
    const int n = lam.rank();
    long long num = 1, den = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            num *= p[i] - p[j] + j - i;
            den *= j - i;
        }
    return static_cast<long>(num / den);
}

Scalar qdim_sun(const DominantWeight& lam, const QParam& q) {
    const std::vector<int> p = lam.padded();
    const int n = lam.rank();
    Scalar acc = Scalar::one(q.mode());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            acc *= q_int(p[i] - p[j] + j - i, q) / q_int(j - i, q);
    return acc;
}

Scalar q_pochhammer_trunc(const Scalar& a, const Scalar& step, long terms) {
    if (terms < 1) throw std::domain_error("q_pochhammer_trunc: terms must be >= 1");
    const Scalar one = Scalar::one(a.mode());
    if (a.abs() >= one || step.abs() >= one)
        throw std::domain_error("q_pochhammer_trunc: need |a| < 1 and |step| < 1");
    Scalar acc = one;
    Scalar factor = a;
    for (long k = 0; k < terms; ++k) {
        acc *= one - factor;
        factor *= step;
    }
    return acc;
}

Scalar asym_const(const QParam& q, long terms) {
    if (terms < 1) throw std::domain_error("asym_const: terms must be >= 1");
    const Scalar q2 = q.power(2);
    const Scalar num = q_pochhammer_trunc(q.value(), q2, terms);
    const Scalar den = q_pochhammer_trunc(q2, q2, terms);
    const Scalar ratio = num / den;
    return ratio * ratio;
}

}  // namespace qdwalk
