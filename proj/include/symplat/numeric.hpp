#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace symplat {

using Int = mpz_class;
using Rat = mpq_class;

// a/b when b divides a exactly; throws VerifyError otherwise.
Int exact_div(const Int& a, const Int& b);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

// g = gcd(a, b) >= 0 together with x, y satisfying a*x + b*y = g.
Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y);

// Representative of a mod m in [0, m); requires m > 0.
Int mod_floor(const Int& a, const Int& m);

// Inverse of a mod m; throws InputError("not-invertible") if gcd(a, m) != 1.
Int mod_inverse(const Int& a, const Int& m);

// Deterministic trial division; adequate at desk scale.
bool is_prime(const Int& n);

// Prime factorization of n >= 1 as (prime, exponent) pairs, primes ascending.
std::vector<std::pair<Int, unsigned>> factorize(const Int& n);

// p-adic valuation of n; requires n != 0 and p >= 2.
unsigned valuation(const Int& n, const Int& p);

bool is_squarefree(const Int& n);

// Mobius function, for inclusion-exclusion counts in test oracles.
int moebius(const Int& n);

}  // namespace symplat
