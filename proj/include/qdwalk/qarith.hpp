// q-integers, quantum dimensions and truncated q-products.
//
//   [n]_q = (q^n - q^-n)/(q - q^-1) = q^(n-1) + q^(n-3) + ... + q^(1-n)
//
// The quantum dimension of the SU(n) irreducible with highest weight
// lambda is the q-Weyl product over positive roots,
//
//   d_lambda = prod_{1<=i<j<=n} [lambda_i - lambda_j + j - i]_q / [j - i]_q,
//
// which strictly exceeds the classical dimension for q < 1; that gap is
// what makes the walks downstream transient.

#pragma once

#include "qdwalk/scalar.hpp"
#include "qdwalk/weight.hpp"

namespace qdwalk {

/// [n]_q for n >= 1.
Scalar q_int(long n, const QParam& q);

/// Classical Weyl dimension of the SU(n) irreducible with highest weight
/// lambda (the q -> 1 limit of qdim_sun).
long dim_sun(const DominantWeight& lam);

/// Quantum dimension d_lambda.
Scalar qdim_sun(const DominantWeight& lam, const QParam& q);

/// prod_{k=0}^{terms-1} (1 - a * step^k). Requires |a| < 1, |step| < 1.
Scalar q_pochhammer_trunc(const Scalar& a, const Scalar& step, long terms);

/// C(q) = (q; q^2)^2_inf / (q^2; q^2)^2_inf, truncated to the given number
/// of factors in each product. Governs the a_k ~ k q^k C(q) asymptotics.
Scalar asym_const(const QParam& q, long terms);

}  // namespace qdwalk
