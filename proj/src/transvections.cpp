#include "symplat/transvections.hpp"

#include "symplat/error.hpp"

namespace symplat {

namespace {

Rat pairing_rat(const Lattice& lat, const std::vector<Rat>& u, const std::vector<Rat>& v) {
    if (u.size() != lat.rank() || v.size() != lat.rank())
        throw InputError("dimension-mismatch", "rational vector length does not match the lattice");
    Rat s = 0;
    for (std::size_t i = 0; i < lat.genus(); ++i)
        s += Rat(lat.type.divisors[i]) * (u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i]);
    return s;
}

std::vector<Rat> to_rat(const Vec& v) {
    std::vector<Rat> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

bool all_integral(const std::vector<Rat>& v) {
    for (const Rat& x : v) {
        Rat c = x;
        c.canonicalize();
        if (c.get_den() != 1) return false;
    }
    return true;
}

}  // namespace

Transvection make_transvection(const Lattice& lat, std::vector<Rat> l, std::vector<Rat> m) {
    if (pairing_rat(lat, l, m) != 0)
        throw InputError("transvection-pairing", "T_{l,m} requires (l, m) = 0");
    Transvection t;
    t.integral = all_integral(l) && all_integral(m);
    t.l = std::move(l);
    t.m = std::move(m);
    return t;
}

Transvection make_transvection_int(const Lattice& lat, const Vec& l, const Vec& m) {
    return make_transvection(lat, to_rat(l), to_rat(m));
}

Vec apply_transvection(const Lattice& lat, const Transvection& t, const Vec& v) {
    const std::vector<Rat> vr = to_rat(v);
    const Rat lv = pairing_rat(lat, t.l, vr);
    const Rat mv = pairing_rat(lat, t.m, vr);
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat x = Rat(v[i]) + lv * t.m[i] + mv * t.l[i];
        x.canonicalize();
        if (x.get_den() != 1)
            throw InputError("non-integral-result", "transvection image leaves the lattice");
        out[i] = x.get_num();
    }
    return out;
}

bool verify_gamma_membership(const Lattice& lat, const Mat& m) {
    const std::size_t n = lat.rank();
    if (m.rows() != n || m.cols() != n)
        throw InputError("dimension-mismatch", "matrix size does not match the lattice rank");
    if (mul(mul(transpose(m), lat.gram), m) != lat.gram) return false;
    // Trivial action on D: M * (ei/di) - ei/di integral, i.e. column 2i of
    // M - I divisible by di (and likewise for fi).
    for (std::size_t i = 0; i < lat.genus(); ++i) {
        const Int& di = lat.type.divisors[i];
        if (di == 1) continue;
        for (std::size_t c : {2 * i, 2 * i + 1})
            for (std::size_t r = 0; r < n; ++r) {
                Int entry = m(r, c) - (r == c ? 1 : 0);
                if (entry % di != 0) return false;
            }
    }
    return true;
}

Mat symplectic_inverse(const Lattice& lat, const Mat& m) {
    // From M^T J M = J: M^{-1} = J^{-1} M^T J.  Row 2i of J^{-1} is
    // -1/di times unit row 2i+1, row 2i+1 is 1/di times unit row 2i,
    // and the divisions are exact for symplectic M.
    const Mat a = mul(transpose(m), lat.gram);
    Mat inv(m.rows(), m.cols());
    for (std::size_t i = 0; i < lat.genus(); ++i) {
        const Int& di = lat.type.divisors[i];
        for (std::size_t j = 0; j < m.cols(); ++j) {
            inv(2 * i, j) = exact_div(-a(2 * i + 1, j), di);
            inv(2 * i + 1, j) = exact_div(a(2 * i, j), di);
        }
    }
    return inv;
}

Witness::Witness(const Lattice& lat, std::vector<WitnessFactor> factors, Mat matrix)
    : type_(lat.type), factors_(std::move(factors)), matrix_(std::move(matrix)) {
    if (!verify_gamma_membership(lat, matrix_))
        throw VerifyError("witness matrix is not in Gamma");
    if (det(matrix_) != 1) throw VerifyError("witness determinant is not 1");
}

Witness identity_witness(const Lattice& lat) {
    return Witness(lat, {}, Mat::identity(lat.rank()));
}

Witness transvection_matrix(const Lattice& lat, const Transvection& t) {
    Mat m(lat.rank(), lat.rank());
    for (std::size_t j = 0; j < lat.rank(); ++j) {
        Vec img;
        try {
            img = apply_transvection(lat, t, basis_vector(lat, j));
        } catch (const InputError&) {
            throw InputError("non-integral-result", "transvection matrix is not integral");
        }
        m.set_col(j, img);
    }
    std::vector<WitnessFactor> factors;
    if (t.integral)
        factors.push_back(WitnessFactor{t, m});
    else
        factors.push_back(WitnessFactor{std::nullopt, m});
    return Witness(lat, std::move(factors), std::move(m));
}

Witness matrix_witness(const Lattice& lat, Mat m) {
    std::vector<WitnessFactor> factors{WitnessFactor{std::nullopt, m}};
    return Witness(lat, std::move(factors), std::move(m));
}

Witness compose(const Lattice& lat, const Witness& a, const Witness& b) {
    if (a.type() != b.type() || a.type() != lat.type)
        throw InputError("dimension-mismatch", "witnesses belong to different lattices");
    std::vector<WitnessFactor> factors = a.factors();
    factors.insert(factors.end(), b.factors().begin(), b.factors().end());
    return Witness(lat, std::move(factors), mul(a.matrix(), b.matrix()));
}

Witness inverse(const Lattice& lat, const Witness& a) {
    if (a.type() != lat.type)
        throw InputError("dimension-mismatch", "witness belongs to a different lattice");
    std::vector<WitnessFactor> factors;
    for (auto it = a.factors().rbegin(); it != a.factors().rend(); ++it) {
        if (it->transvection) {
            Transvection t = *it->transvection;
            for (Rat& x : t.m) x = -x;
            factors.push_back(WitnessFactor{t, symplectic_inverse(lat, it->matrix)});
        } else {
            factors.push_back(WitnessFactor{std::nullopt, symplectic_inverse(lat, it->matrix)});
        }
    }
    Mat inv = symplectic_inverse(lat, a.matrix());
    if (mul(inv, a.matrix()) != Mat::identity(lat.rank()))
        throw VerifyError("witness inverse check failed");
    return Witness(lat, std::move(factors), std::move(inv));
}

}  // namespace symplat
