#include "symplat/numeric.hpp"

#include "symplat/error.hpp"

namespace symplat {

Int exact_div(const Int& a, const Int& b) {
    if (b == 0) throw VerifyError("exact_div by zero");
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw VerifyError("exact_div: " + a.get_str() + " not divisible by " + b.get_str());
    return q;
}

Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int mod_floor(const Int& a, const Int& m) {
    if (m <= 0) throw VerifyError("mod_floor: modulus must be positive");
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int mod_inverse(const Int& a, const Int& m) {
    if (m <= 0) throw VerifyError("mod_inverse: modulus must be positive");
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw InputError("not-invertible", a.get_str() + " has no inverse mod " + m.get_str());
    return inv;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (Int d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<Int, unsigned>> factorize(const Int& n) {
    if (n < 1) throw InputError("non-positive", "factorize requires n >= 1, got " + n.get_str());
    std::vector<std::pair<Int, unsigned>> out;
    Int rest = n;
    auto strip = [&](const Int& p) {
        unsigned e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    };
    strip(2);
    for (Int d = 3; d * d <= rest; d += 2) strip(d);
    if (rest > 1) out.emplace_back(rest, 1);
    return out;
}

unsigned valuation(const Int& n, const Int& p) {
    if (n == 0) throw VerifyError("valuation of zero");
    if (p < 2) throw VerifyError("valuation: p must be >= 2");
    unsigned v = 0;
    Int rest = n;
    while (rest % p == 0) {
        rest /= p;
        ++v;
    }
    return v;
}

bool is_squarefree(const Int& n) {
    for (const auto& [p, e] : factorize(abs(n))) {
        (void)p;
        if (e > 1) return false;
    }
    return true;
}

int moebius(const Int& n) {
    int sign = 1;
    for (const auto& [p, e] : factorize(n)) {
        (void)p;
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

}  // namespace symplat
