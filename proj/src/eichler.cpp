#include "symplat/eichler.hpp"

#include "symplat/error.hpp"

namespace symplat {

namespace {

void require_two_planes(const Lattice& l, const char* who) {
    if (l.genus() < 2 || l.type.divisors[0] != 1 || l.type.divisors[1] != 1)
        throw InputError("hypothesis", std::string(who) + " needs d1 = d2 = 1");
}

// u supported on coordinates >= first with pairing(u, target) = g > 0, where
// g is the gcd of the pairings of target with those basis vectors.  Bezout
// coefficients are accumulated over the basis in fixed order, so the result
// is deterministic.
std::pair<Vec, Int> bezout_partner(const Lattice& l, const Vec& target, std::size_t first) {
    Int g = 0;
    std::vector<Int> coeff(l.rank());
    for (std::size_t b = first; b < l.rank(); ++b) {
        const Int pb = pairing(l, target, basis_vector(l, b));
        Int x, y;
        const Int g2 = ext_gcd(g, pb, x, y);
        for (std::size_t t = first; t < b; ++t) coeff[t] *= x;
        coeff[b] = y;
        g = g2;
    }
    // pairing(sum coeff_b * b, target) = -g, so negate.
    Vec u(l.rank());
    for (std::size_t b = first; b < l.rank(); ++b) u[b] = -coeff[b];
    if (g != 0 && pairing(l, u, target) != g) throw VerifyError("bezout_partner pairing");
    return {std::move(u), std::move(g)};
}

}  // namespace

Vec construct_primitive_from_class(const Lattice& l, const DiscElement& x) {
    if (l.genus() < 1 || l.type.divisors[0] != 1)
        throw InputError("hypothesis", "construct_primitive_from_class needs d1 = 1");
    const DiscGroup grp{l.type};
    const Int d = order(grp, x);

    // v = d e1 + d w, where w lifts x over the blocks i >= 2 with canonical
    // representatives alpha_i / di, beta_i / di.
    Vec v(l.rank());
    v[0] = d;
    for (std::size_t i = 1; i < l.genus(); ++i) {
        const Int& di = l.type.divisors[i];
        v[2 * i] = exact_div(x.residues[i].first * d, di);
        v[2 * i + 1] = exact_div(x.residues[i].second * d, di);
    }

    if (!is_primitive(l, v)) throw VerifyError("constructed vector is imprimitive");
    if (divisor(l, v) != d) throw VerifyError("constructed vector has wrong divisor");
    if (!(dual_class(l, v) == x)) throw VerifyError("constructed vector has wrong class");
    return v;
}

std::pair<Witness, Vec> save_U(const Lattice& l, const Vec& v) {
    require_two_planes(l, "save_U");
    if (v.size() != l.rank())
        throw InputError("dimension-mismatch", "vector length does not match the lattice");

    if (v[0] == 0 && v[1] == 0) return {identity_witness(l), v};

    // Factor the U1 + U2 projection as content * primitive and move the
    // primitive part onto e2; the rest of the lattice is untouched.
    Int content = 0;
    for (std::size_t i = 0; i < 4; ++i) content = gcd(content, v[i]);
    Vec proj(l.rank());
    for (std::size_t i = 0; i < 4; ++i) proj[i] = exact_div(v[i], content);

    const BasisChange bc = symplectic_complete(l, proj);
    Witness gamma = matrix_witness(l, bc.matrix);
    Vec moved = gamma.apply(v);
    if (moved[0] != 0 || moved[1] != 0) throw VerifyError("save_U left a nonzero U1 block");
    return {std::move(gamma), std::move(moved)};
}

std::optional<EquivalenceResult> equivalence_witness(const Lattice& l, const Vec& v, const Vec& w) {
    require_two_planes(l, "equivalence_witness");
    if (!is_primitive(l, v) || !is_primitive(l, w))
        throw InputError("non-primitive", "equivalence_witness requires primitive vectors");

    const DiscElement xv = dual_class(l, v), xw = dual_class(l, w);
    if (!(xv == xw)) return std::nullopt;  // provably not equivalent
    const Int d = divisor(l, v);

    auto [gv, vt] = save_U(l, v);
    auto [gw, wt] = save_U(l, w);

    const Vec e1 = basis_vector(l, 0), f1 = basis_vector(l, 1);

    // Step 1: gamma1 = T_{e1, v'} sends vt to vt + d e1 (and gamma2 likewise
    // for wt).  v' exists in Lambda' because div(vt) = d is attained there.
    Vec vt_de = vt, wt_de = wt;
    vt_de[0] += d;
    wt_de[0] += d;

    auto [uv, gvd] = bezout_partner(l, vt, 2);
    if (gvd != d) throw VerifyError("step 1: divisor not attained in Lambda'");
    Witness gamma1 = transvection_matrix(l, make_transvection_int(l, e1, uv));
    if (gamma1.apply(vt) != vt_de) throw VerifyError("step 1 failed for v");

    auto [uw, gwd] = bezout_partner(l, wt, 2);
    if (gwd != d) throw VerifyError("step 1: divisor not attained in Lambda' (w)");
    Witness gamma2 = transvection_matrix(l, make_transvection_int(l, e1, uw));
    if (gamma2.apply(wt) != wt_de) throw VerifyError("step 1 failed for w");

    // Step 3: z = vt/d - wt/d is integral because the classes agree;
    // gamma3 = T_{f1, z} sends vt + d e1 to wt + d e1 + d alpha f1.
    Vec z(l.rank());
    for (std::size_t i = 0; i < l.rank(); ++i) z[i] = exact_div(vt[i] - wt[i], d);
    Witness gamma3 = transvection_matrix(l, make_transvection_int(l, f1, z));
    // alpha = (vt, wt) / d^2, integral since d^2 | (vt, wt).
    const Int alpha = exact_div(pairing(l, vt, wt), d * d);
    {
        Vec expect = wt_de;
        expect[1] += d * alpha;
        if (gamma3.apply(vt_de) != expect) throw VerifyError("step 3 failed");
    }

    // Step 4: e1 -> e1 - alpha f1 on U1, identity elsewhere; kills the
    // d alpha f1 term.  This is the integral matrix of T_{f1,(alpha/2) f1}.
    Mat m4 = Mat::identity(l.rank());
    m4(1, 0) = -alpha;
    Witness gamma4 = matrix_witness(l, std::move(m4));

    Witness left = inverse(l, compose(l, gamma2, gw));
    Witness total = compose(
        l, left, compose(l, gamma4, compose(l, gamma3, compose(l, gamma1, gv))));

    EquivalenceChecks checks;
    checks.symplectic = mul(mul(transpose(total.matrix()), l.gram), total.matrix()) == l.gram;
    checks.trivial_on_disc = verify_gamma_membership(l, total.matrix());
    checks.maps_v_to_w = total.apply(v) == w;
    if (!checks.symplectic || !checks.trivial_on_disc || !checks.maps_v_to_w)
        throw VerifyError("equivalence witness failed a final check");
    return EquivalenceResult{std::move(total), checks};
}

SplitResult split_lattice(const Lattice& l, const Vec& v, const Vec& w) {
    if (!is_primitive(l, v) || !is_primitive(l, w))
        throw InputError("non-primitive", "split_lattice requires primitive vectors");
    const Int d = divisor(l, v);
    if (divisor(l, w) != d || pairing(l, v, w) != d)
        throw InputError("precondition", "split_lattice needs (v, w) = div(v) = div(w)");

    // Integer kernel of u -> ((u, v), (u, w)).
    const Vec jv = mul(l.gram, v), jw = mul(l.gram, w);
    Mat a(2, l.rank());
    for (std::size_t j = 0; j < l.rank(); ++j) {
        a(0, j) = jv[j];
        a(1, j) = jw[j];
    }
    std::vector<Vec> ker = kernel_basis(a);
    if (ker.size() != l.rank() - 2) throw VerifyError("complement has wrong rank");

    for (const Vec& k : ker)
        if (pairing(l, k, v) != 0 || pairing(l, k, w) != 0)
            throw VerifyError("complement vector is not orthogonal to v, w");

    // Canonicalize the complement Gram matrix.
    Mat gc(ker.size(), ker.size());
    for (std::size_t i = 0; i < ker.size(); ++i)
        for (std::size_t j = 0; j < ker.size(); ++j) gc(i, j) = pairing(l, ker[i], ker[j]);
    auto [ctype, cbc] = normalize_gram(gc);
    std::vector<Vec> basis;
    if (!ker.empty()) {
        const Mat kc = mul(from_cols(ker), cbc.matrix);
        for (std::size_t j = 0; j < kc.cols(); ++j) basis.push_back(kc.col(j));
    }

    // (v, w, complement) must assemble to a unimodular basis change.
    std::vector<Vec> full{v, w};
    full.insert(full.end(), basis.begin(), basis.end());
    const Int dt = det(from_cols(full));
    if (dt != 1 && dt != -1)
        throw VerifyError("assembly is not unimodular: <v, w> is not a direct summand");

    return SplitResult{w, d, std::move(basis), std::move(ctype)};
}

std::variant<SplitResult, NotSplitting> splitting_witness(const Lattice& l, const Vec& v) {
    require_two_planes(l, "splitting_witness");
    if (!is_primitive(l, v))
        throw InputError("non-primitive", "splitting_witness requires a primitive vector");

    const DiscGroup grp{l.type};
    const DiscElement x = dual_class(l, v);
    {
        std::vector<Int> failing = splitting_failures(grp, x);
        if (!failing.empty()) return NotSplitting{std::move(failing)};
    }
    const Int d = divisor(l, v);

    auto [ga, vt] = save_U(l, v);

    // vt -> vt + d f1 via T_{f1, v'}, the f-side twin of step 1.
    const Vec f1 = basis_vector(l, 1), e1 = basis_vector(l, 0);
    auto [uv, gvd] = bezout_partner(l, vt, 2);
    if (gvd != d) throw VerifyError("splitting: divisor not attained in Lambda'");
    Witness gb = transvection_matrix(l, make_transvection_int(l, f1, uv));
    Vec vplus = gb.apply(vt);
    {
        Vec expect = vt;
        expect[1] += d;
        if (vplus != expect) throw VerifyError("splitting: vt + d f1 step failed");
    }

    // Partner class and its dual lift d w' (integral since ord(y) = d).
    const DiscElement y = x.is_zero() ? zero_element(grp) : splitting_partner(grp, x);
    Vec dw(l.rank());
    for (std::size_t i = 1; i < l.genus(); ++i) {
        const Int& di = l.type.divisors[i];
        dw[2 * i] = exact_div(y.residues[i].first * d, di);
        dw[2 * i + 1] = exact_div(y.residues[i].second * d, di);
    }

    // (vt, d w') = d + alpha d^2; w~ = d w' + alpha d e1 pairs to d exactly.
    const Int alpha = exact_div(pairing(l, vt, dw) - d, d * d);
    Vec wt = dw;
    wt[0] += alpha * d;
    if (pairing(l, vplus, wt) != d) throw VerifyError("splitting: (v + df, w) != d");

    // Pull the pair (vplus, wt) back through gamma = gb o ga.
    Witness gamma = compose(l, gb, ga);
    if (gamma.apply(v) != vplus) throw VerifyError("splitting: gamma(v) mismatch");
    const Vec w = inverse(l, gamma).apply(wt);

    if (!is_primitive(l, w)) throw VerifyError("splitting: partner is imprimitive");
    if (divisor(l, w) != d) throw VerifyError("splitting: partner divisor mismatch");
    if (pairing(l, v, w) != d) throw VerifyError("splitting: (v, w) != d");

    return split_lattice(l, v, w);
}

}  // namespace symplat
