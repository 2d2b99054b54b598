#pragma once

#include <compare>
#include <vector>

#include "symplat/lattice.hpp"

namespace symplat {

// The finite group D = Lambda^vee / Lambda = (Z/d1)^2 + ... + (Z/dg)^2 with
// its Q/Z-valued alternating form.
struct DiscGroup {
    LatticeType type;

    std::size_t genus() const { return type.genus(); }
    // |D| = (d1 * ... * dg)^2
    Int size() const;
};

// Element as residue pairs (alpha_i, beta_i), each reduced into [0, di).
struct DiscElement {
    std::vector<std::pair<Int, Int>> residues;

    bool is_zero() const;
    bool operator==(const DiscElement& o) const = default;
};

// Lexicographic; DiscElement is usable as an ordered map key.
bool operator<(const DiscElement& a, const DiscElement& b);

// Validated constructor: reduces every residue pair mod di.
DiscElement make_disc_element(const DiscGroup& d, std::vector<std::pair<Int, Int>> residues);
DiscElement zero_element(const DiscGroup& d);

// Value in Q/Z as a reduced fraction with 0 <= num < den.
struct QmodZ {
    Int num = 0;
    Int den = 1;

    bool operator==(const QmodZ& o) const = default;
};

QmodZ make_qmodz(const Rat& q);

// x + c*y, componentwise mod di.
DiscElement add_scaled(const DiscGroup& d, const DiscElement& x, const Int& c, const DiscElement& y);

// Discriminant form: sum_i (alpha_i beta'_i - beta_i alpha'_i) / di mod 1.
QmodZ disc_pair(const DiscGroup& d, const DiscElement& x, const DiscElement& y);

// Order in the finite abelian group: lcm_i di / gcd(di, alpha_i, beta_i).
Int order(const DiscGroup& d, const DiscElement& x);

// [v*]: class of v / div(v) in D.  Requires v primitive.
DiscElement dual_class(const Lattice& l, const Vec& v);

// Exponent data of the p-primary part: e[i] = v_p(di), f[i] = order exponent
// of the i-th p-component x_{p,i}, f_max = max_i f[i].
struct PPartProfile {
    Int p;
    std::vector<unsigned> e;
    std::vector<unsigned> f;
    unsigned f_max = 0;
    // p-component residues, reduced mod p^e[i].
    std::vector<std::pair<Int, Int>> component;
};

// p must be prime (validated by trial division).  The projection to the
// p-primary component is computed with an explicit CRT idempotent per block.
PPartProfile p_part_profile(const DiscGroup& d, const DiscElement& x, const Int& p);

// x is splitting iff for every prime p | order(x) some index i has
// f_{p,i} = f_p and f_{p,i} = e_{p,i}.  Zero is splitting by convention.
bool is_splitting_element(const DiscGroup& d, const DiscElement& x);

// Primes p | order(x) failing the criterion (empty iff splitting).
std::vector<Int> splitting_failures(const DiscGroup& d, const DiscElement& x);

// Ground-truth check by exhaustive search for y with order(y) = order(x) and
// (x, y) = 1/order(x).  Guarded: throws InputError("group-too-large") when
// |D| exceeds max_size.
bool is_splitting_element_oracle(const DiscGroup& d, const DiscElement& x,
                                 const Int& max_size = Int(1) << 20);

// Partner y with order(y) = order(x) = d and (x, y) = 1/d exactly.
// Throws InputError("not-splitting") listing the failing primes otherwise.
DiscElement splitting_partner(const DiscGroup& d, const DiscElement& x);

// Requires d1 = d2 = 1.  True iff d3, d4/d3, ..., dg/dg-1 are square-free
// and pairwise coprime (then every element of D is splitting).
bool all_splitting_type(const LatticeType& t);

// Enumeration of all of D in a fixed odometer order (for small groups).
std::vector<DiscElement> all_elements(const DiscGroup& d, const Int& max_size = Int(1) << 20);

// Cached full enumeration with precomputed orders, for exhaustive sweeps
// that would otherwise re-enumerate D per query.
struct DiscScan {
    DiscGroup group;
    std::vector<DiscElement> elements;
    std::vector<Int> orders;

    DiscScan(const DiscGroup& d, const Int& max_size = Int(1) << 20);
};

// Lemma condition (4) search against a cached scan: some y with
// order(y) = order(x) and (x, y) = 1/order(x).
bool oracle_finds_partner(const DiscScan& scan, const DiscElement& x);

}  // namespace symplat
