#include "symplat/discriminant.hpp"

#include <algorithm>

#include "symplat/error.hpp"

namespace symplat {

Int DiscGroup::size() const {
    Int n = 1;
    for (const Int& d : type.divisors) n *= d;
    return n * n;
}

bool DiscElement::is_zero() const {
    return std::all_of(residues.begin(), residues.end(),
                       [](const auto& r) { return r.first == 0 && r.second == 0; });
}

bool operator<(const DiscElement& a, const DiscElement& b) {
    return a.residues < b.residues;
}

DiscElement make_disc_element(const DiscGroup& d, std::vector<std::pair<Int, Int>> residues) {
    if (residues.size() != d.genus())
        throw InputError("dimension-mismatch", "expected " + std::to_string(d.genus()) +
                                                   " residue pairs, got " +
                                                   std::to_string(residues.size()));
    for (std::size_t i = 0; i < residues.size(); ++i) {
        residues[i].first = mod_floor(residues[i].first, d.type.divisors[i]);
        residues[i].second = mod_floor(residues[i].second, d.type.divisors[i]);
    }
    return DiscElement{std::move(residues)};
}

DiscElement zero_element(const DiscGroup& d) {
    return DiscElement{std::vector<std::pair<Int, Int>>(d.genus(), {Int(0), Int(0)})};
}

QmodZ make_qmodz(const Rat& q) {
    Rat r = q;
    r.canonicalize();
    Int num = mod_floor(r.get_num(), r.get_den());
    if (num == 0) return QmodZ{0, 1};
    return QmodZ{num, r.get_den()};
}

static void check_group(const DiscGroup& d, const DiscElement& x) {
    if (x.residues.size() != d.genus())
        throw InputError("mismatched-group", "element does not belong to this group");
    for (std::size_t i = 0; i < x.residues.size(); ++i)
        if (x.residues[i].first < 0 || x.residues[i].first >= d.type.divisors[i] ||
            x.residues[i].second < 0 || x.residues[i].second >= d.type.divisors[i])
            throw InputError("mismatched-group", "residue out of range at block " + std::to_string(i));
}

DiscElement add_scaled(const DiscGroup& d, const DiscElement& x, const Int& c, const DiscElement& y) {
    check_group(d, x);
    check_group(d, y);
    std::vector<std::pair<Int, Int>> r(d.genus());
    for (std::size_t i = 0; i < d.genus(); ++i) {
        r[i].first = mod_floor(x.residues[i].first + c * y.residues[i].first, d.type.divisors[i]);
        r[i].second = mod_floor(x.residues[i].second + c * y.residues[i].second, d.type.divisors[i]);
    }
    return DiscElement{std::move(r)};
}

QmodZ disc_pair(const DiscGroup& d, const DiscElement& x, const DiscElement& y) {
    check_group(d, x);
    check_group(d, y);
    Rat s = 0;
    for (std::size_t i = 0; i < d.genus(); ++i) {
        Rat term(x.residues[i].first * y.residues[i].second -
                     x.residues[i].second * y.residues[i].first,
                 d.type.divisors[i]);
        s += term;
    }
    return make_qmodz(s);
}

Int order(const DiscGroup& d, const DiscElement& x) {
    check_group(d, x);
    Int o = 1;
    for (std::size_t i = 0; i < d.genus(); ++i) {
        const Int& di = d.type.divisors[i];
        Int g = gcd(di, gcd(x.residues[i].first, x.residues[i].second));
        o = lcm(o, exact_div(di, g));
    }
    return o;
}

DiscElement dual_class(const Lattice& l, const Vec& v) {
    if (!is_primitive(l, v))
        throw InputError("non-primitive", "dual_class requires a primitive vector");
    const Int d = divisor(l, v);
    const DiscGroup grp{l.type};
    std::vector<std::pair<Int, Int>> r(l.genus());
    for (std::size_t i = 0; i < l.genus(); ++i) {
        const Int& di = l.type.divisors[i];
        // v* = v/d expanded in the dual basis (ei/di, fi/di); the quotients
        // are exact because d divides di * coordinate.
        r[i].first = mod_floor(exact_div(v[2 * i] * di, d), di);
        r[i].second = mod_floor(exact_div(v[2 * i + 1] * di, d), di);
    }
    return make_disc_element(grp, std::move(r));
}

PPartProfile p_part_profile(const DiscGroup& d, const DiscElement& x, const Int& p) {
    check_group(d, x);
    if (!is_prime(p)) throw InputError("not-prime", p.get_str() + " is not prime");
    PPartProfile prof;
    prof.p = p;
    for (std::size_t i = 0; i < d.genus(); ++i) {
        const Int& di = d.type.divisors[i];
        const unsigned e = valuation(di, p);
        prof.e.push_back(e);
        if (e == 0) {
            prof.f.push_back(0);
            prof.component.emplace_back(0, 0);
            continue;
        }
        Int pe = 1;
        for (unsigned k = 0; k < e; ++k) pe *= p;
        const Int m = exact_div(di, pe);
        // CRT idempotent: u = 1 mod p^e, u = 0 mod m; projection is x -> u*x.
        Int u = 1;
        if (m != 1) u = m * mod_inverse(mod_floor(m, pe), pe);
        const Int a = mod_floor(mod_floor(x.residues[i].first * u, di), pe);
        const Int b = mod_floor(mod_floor(x.residues[i].second * u, di), pe);
        prof.component.emplace_back(a, b);
        const Int o = exact_div(pe, gcd(pe, gcd(a, b)));
        prof.f.push_back(valuation(o, p));
    }
    prof.f_max = prof.f.empty() ? 0 : *std::max_element(prof.f.begin(), prof.f.end());
    return prof;
}

std::vector<Int> splitting_failures(const DiscGroup& d, const DiscElement& x) {
    std::vector<Int> failing;
    if (x.is_zero()) return failing;
    const Int ord = order(d, x);
    for (const auto& [p, e] : factorize(ord)) {
        (void)e;
        const PPartProfile prof = p_part_profile(d, x, p);
        bool ok = false;
        for (std::size_t i = 0; i < prof.f.size(); ++i)
            if (prof.f[i] == prof.f_max && prof.f[i] == prof.e[i]) {
                ok = true;
                break;
            }
        if (!ok) failing.push_back(p);
    }
    return failing;
}

bool is_splitting_element(const DiscGroup& d, const DiscElement& x) {
    if (x.is_zero()) return true;  // d = 1: a U-summand always splits off
    return splitting_failures(d, x).empty();
}

std::vector<DiscElement> all_elements(const DiscGroup& d, const Int& max_size) {
    if (d.size() > max_size)
        throw InputError("group-too-large", "|D| = " + d.size().get_str() + " exceeds the guard " +
                                                max_size.get_str());
    std::vector<DiscElement> out;
    DiscElement cur = zero_element(d);
    const std::size_t slots = 2 * d.genus();
    auto slot = [&](std::size_t k) -> Int& {
        return k % 2 == 0 ? cur.residues[k / 2].first : cur.residues[k / 2].second;
    };
    for (;;) {
        out.push_back(cur);
        std::size_t k = 0;
        for (; k < slots; ++k) {
            Int& s = slot(k);
            s += 1;
            if (s < d.type.divisors[k / 2]) break;
            s = 0;
        }
        if (k == slots) break;
    }
    return out;
}

DiscScan::DiscScan(const DiscGroup& d, const Int& max_size) : group(d) {
    elements = all_elements(d, max_size);
    orders.reserve(elements.size());
    for (const DiscElement& x : elements) orders.push_back(order(d, x));
}

bool oracle_finds_partner(const DiscScan& scan, const DiscElement& x) {
    const DiscGroup& d = scan.group;
    const Int ord = order(d, x);
    if (ord == 1) return true;
    // Integer form of the pairing: (x, y) = S / dg mod 1 with
    // S = sum_i (alpha_i beta'_i - beta_i alpha'_i) * (dg / di).
    const Int dg = d.type.divisors.back();
    const Int target = mod_floor(exact_div(dg, ord), dg);
    std::vector<Int> weight(d.genus());
    for (std::size_t i = 0; i < d.genus(); ++i) weight[i] = exact_div(dg, d.type.divisors[i]);
    for (std::size_t n = 0; n < scan.elements.size(); ++n) {
        if (scan.orders[n] != ord) continue;
        const DiscElement& y = scan.elements[n];
        Int s = 0;
        for (std::size_t i = 0; i < d.genus(); ++i)
            s += weight[i] * (x.residues[i].first * y.residues[i].second -
                              x.residues[i].second * y.residues[i].first);
        if (mod_floor(s, dg) == target) return true;
    }
    return false;
}

bool is_splitting_element_oracle(const DiscGroup& d, const DiscElement& x, const Int& max_size) {
    check_group(d, x);
    if (x.is_zero()) return true;  // convention, resolved before any search
    DiscScan scan(d, max_size);
    return oracle_finds_partner(scan, x);
}

DiscElement splitting_partner(const DiscGroup& d, const DiscElement& x) {
    check_group(d, x);
    if (x.is_zero()) throw InputError("zero-element", "splitting_partner requires x != 0");
    const std::vector<Int> failing = splitting_failures(d, x);
    if (!failing.empty()) {
        std::string list;
        for (const Int& p : failing) list += (list.empty() ? "" : ", ") + p.get_str();
        throw InputError("not-splitting", "criterion fails at primes " + list);
    }

    const Int ord = order(d, x);
    DiscElement y = zero_element(d);
    for (const auto& [p, mult] : factorize(ord)) {
        (void)mult;
        const PPartProfile prof = p_part_profile(d, x, p);
        std::size_t block = d.genus();
        for (std::size_t i = 0; i < prof.f.size(); ++i)
            if (prof.f[i] == prof.f_max && prof.f[i] == prof.e[i]) {
                block = i;
                break;
            }
        if (block == d.genus()) throw VerifyError("splitting_partner: no admissible block");

        const Int& di = d.type.divisors[block];
        Int pe = 1;
        for (unsigned k = 0; k < prof.f_max; ++k) pe *= p;
        const Int m = exact_div(di, pe);
        const Int a = prof.component[block].first, b = prof.component[block].second;
        // Solve a*delta - b*gamma = 1 mod p^f by Bezout; gcd(a, b) is a
        // p-unit because the block component has full order p^e = p^f.
        Int s, t;
        const Int g = ext_gcd(a, b, s, t);
        const Int ginv = mod_inverse(mod_floor(g, pe), pe);
        const Int delta = mod_floor(s * ginv, pe);
        const Int gamma = mod_floor(-t * ginv, pe);
        // Embed Z/p^e into Z/di along the CRT idempotent.
        Int u = 1;
        if (m != 1) u = m * mod_inverse(mod_floor(m, pe), pe);
        DiscElement part = zero_element(d);
        part.residues[block].first = mod_floor(gamma * u, di);
        part.residues[block].second = mod_floor(delta * u, di);
        y = add_scaled(d, y, 1, part);
    }

    // The accumulated pairing is k/ord with k a unit; rescale to hit 1/ord.
    const QmodZ q = disc_pair(d, x, y);
    if (ord % q.den != 0) throw VerifyError("splitting_partner: pairing denominator");
    const Int k = mod_floor(q.num * exact_div(ord, q.den), ord);
    const Int kinv = mod_inverse(k, ord);
    y = add_scaled(d, zero_element(d), kinv, y);

    if (order(d, y) != ord) throw VerifyError("splitting_partner: partner order");
    if (disc_pair(d, x, y) != (QmodZ{1, ord}))
        throw VerifyError("splitting_partner: pairing is not 1/d");
    return y;
}

bool all_splitting_type(const LatticeType& t) {
    if (t.genus() < 2 || t.divisors[0] != 1 || t.divisors[1] != 1)
        throw InputError("hypothesis", "all_splitting_type needs d1 = d2 = 1");
    std::vector<Int> quotients;
    for (std::size_t i = 2; i < t.genus(); ++i)
        quotients.push_back(i == 2 ? t.divisors[2] : exact_div(t.divisors[i], t.divisors[i - 1]));
    for (const Int& q : quotients)
        if (!is_squarefree(q)) return false;
    for (std::size_t i = 0; i < quotients.size(); ++i)
        for (std::size_t j = i + 1; j < quotients.size(); ++j)
            if (gcd(quotients[i], quotients[j]) != 1) return false;
    return true;
}

}  // namespace symplat
