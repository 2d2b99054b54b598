#include "symplat/lattice.hpp"

#include <algorithm>

#include "symplat/error.hpp"

namespace symplat {

LatticeType make_lattice_type(std::vector<Int> divisors) {
    if (divisors.empty()) throw InputError("empty-type", "a lattice type needs at least one divisor");
    for (const Int& d : divisors)
        if (d < 1) throw InputError("non-positive-divisor", "divisor " + d.get_str() + " is not positive");
    for (std::size_t i = 0; i + 1 < divisors.size(); ++i)
        if (divisors[i + 1] % divisors[i] != 0)
            throw InputError("divisor-chain", divisors[i].get_str() + " does not divide " +
                                                  divisors[i + 1].get_str());
    return LatticeType{std::move(divisors)};
}

Lattice make_lattice(const LatticeType& t) {
    // Re-validate: callers may have built the type by hand.
    if (!t.divisors.empty()) make_lattice_type(t.divisors);
    const std::size_t g = t.genus();
    Mat j(2 * g, 2 * g);
    for (std::size_t i = 0; i < g; ++i) {
        j(2 * i, 2 * i + 1) = t.divisors[i];
        j(2 * i + 1, 2 * i) = -t.divisors[i];
    }
    return Lattice{t, std::move(j)};
}

static void check_dim(const Lattice& l, const Vec& v) {
    if (v.size() != l.rank())
        throw InputError("dimension-mismatch", "vector has " + std::to_string(v.size()) +
                                                   " coordinates, lattice rank is " +
                                                   std::to_string(l.rank()));
}

Vec basis_vector(const Lattice& l, std::size_t index) {
    Vec v(l.rank());
    v.at(index) = 1;
    return v;
}

Int pairing(const Lattice& l, const Vec& u, const Vec& v) {
    check_dim(l, u);
    check_dim(l, v);
    Int s = 0;
    for (std::size_t i = 0; i < l.genus(); ++i)
        s += l.type.divisors[i] * (u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i]);
    return s;
}

bool is_primitive(const Lattice& l, const Vec& v) {
    check_dim(l, v);
    if (is_zero(v)) throw InputError("zero-vector", "primitivity is undefined for the zero vector");
    Int g = 0;
    for (const Int& c : v) g = gcd(g, c);
    return g == 1;
}

Int divisor(const Lattice& l, const Vec& v) {
    check_dim(l, v);
    if (is_zero(v)) throw InputError("zero-vector", "div is undefined for the zero vector");
    Int g = 0;
    for (std::size_t b = 0; b < l.rank(); ++b) g = gcd(g, pairing(l, v, basis_vector(l, b)));
    return g;
}

// ---- normalize_gram -------------------------------------------------------

namespace {

// basis_j += t * basis_i, applied as a congruence on w and tracked in p.
void add_basis(Mat& w, Mat& p, std::size_t j, std::size_t i, const Int& t) {
    w.add_col(j, i, t);
    w.add_row(j, i, t);
    p.add_col(j, i, t);
}

void swap_basis(Mat& w, Mat& p, std::size_t i, std::size_t j) {
    w.swap_cols(i, j);
    w.swap_rows(i, j);
    p.swap_cols(i, j);
}

}  // namespace

std::pair<LatticeType, BasisChange> normalize_gram(const Mat& g) {
    const std::size_t n = g.rows();
    if (g.cols() != n) throw InputError("non-square", "Gram matrix must be square");
    if (n % 2 != 0) throw InputError("odd-dimension", "alternating forms have even rank");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g(i, j) != -g(j, i))
                throw InputError("non-alternating", "entry (" + std::to_string(i) + "," +
                                                        std::to_string(j) + ") breaks G^T = -G");

    Mat w = g;
    Mat p = Mat::identity(n);

    for (std::size_t k = 0; k < n; k += 2) {
        for (;;) {
            // Pivot: minimal nonzero |entry| in the trailing block, ties by
            // lowest (row, column).
            std::size_t pi = n, pj = n;
            Int best;
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = k; j < n; ++j) {
                    if (w(i, j) == 0) continue;
                    Int a = abs(w(i, j));
                    if (pi == n || a < best) {
                        best = a;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == n) throw InputError("singular", "Gram matrix is degenerate");

            // Move the pivot to (k, k+1), mirrored swaps keep w alternating.
            if (pi != k) {
                swap_basis(w, p, k, pi);
                if (pj == k) pj = pi;
            }
            if (pj != k + 1) swap_basis(w, p, k + 1, pj);
            if (w(k, k + 1) < 0) swap_basis(w, p, k, k + 1);
            const Int piv = w(k, k + 1);

            // Clear rows k and k+1 beyond the block by floor-division; any
            // remainder left becomes a strictly smaller pivot next round.
            for (std::size_t j = k + 2; j < n; ++j) {
                if (w(k, j) != 0) {
                    Int t;
                    mpz_fdiv_q(t.get_mpz_t(), w(k, j).get_mpz_t(), piv.get_mpz_t());
                    add_basis(w, p, j, k + 1, -t);
                }
                if (w(k + 1, j) != 0) {
                    Int t;
                    mpz_fdiv_q(t.get_mpz_t(), w(k + 1, j).get_mpz_t(), piv.get_mpz_t());
                    add_basis(w, p, j, k, t);
                }
            }
            bool cleared = true;
            for (std::size_t j = k + 2; j < n && cleared; ++j)
                cleared = w(k, j) == 0 && w(k + 1, j) == 0;
            if (!cleared) continue;

            // Merge step: pull a non-divisible row into the pivot row so the
            // next pivot divides the whole trailing block.
            std::size_t bad = n;
            for (std::size_t i = k + 2; i < n && bad == n; ++i)
                for (std::size_t j = k + 2; j < n; ++j)
                    if (w(i, j) % piv != 0) {
                        bad = i;
                        break;
                    }
            if (bad != n) {
                add_basis(w, p, k, bad, 1);
                continue;
            }
            break;
        }
    }

    // Divisors ascend and divide by construction; reorder defensively.
    for (bool moved = true; moved;) {
        moved = false;
        for (std::size_t k = 0; k + 2 < n; k += 2)
            if (w(k, k + 1) > w(k + 2, k + 3)) {
                swap_basis(w, p, k, k + 2);
                swap_basis(w, p, k + 1, k + 3);
                moved = true;
            }
    }

    std::vector<Int> divisors;
    for (std::size_t k = 0; k < n; k += 2) divisors.push_back(w(k, k + 1));
    LatticeType t{std::move(divisors)};

    const Mat canonical = make_lattice(t).gram;
    if (mul(mul(transpose(p), g), p) != canonical)
        throw VerifyError("normalize_gram: P^T G P is not the canonical matrix");
    if (w != canonical) throw VerifyError("normalize_gram: reduction left non-canonical entries");
    for (std::size_t i = 0; i + 1 < t.divisors.size(); ++i)
        if (t.divisors[i + 1] % t.divisors[i] != 0)
            throw VerifyError("normalize_gram: divisor chain broken");
    return {t, BasisChange{std::move(p)}};
}

// ---- symplectic_complete --------------------------------------------------

BasisChange symplectic_complete(const Lattice& l, const Vec& v) {
    check_dim(l, v);
    if (l.genus() < 2 || l.type.divisors[0] != 1 || l.type.divisors[1] != 1)
        throw InputError("hypothesis", "symplectic_complete needs d1 = d2 = 1");
    for (std::size_t i = 4; i < v.size(); ++i)
        if (v[i] != 0)
            throw InputError("hypothesis", "vector must be supported on the first two planes");

    const Lattice u2 = make_lattice(make_lattice_type({1, 1}));
    Vec v4(v.begin(), v.begin() + 4);
    if (is_zero(v4)) throw InputError("zero-vector", "projection is zero");
    if (!is_primitive(u2, v4)) throw InputError("non-primitive", "projection must be primitive");

    // Partner u with (v, u) = 1 by accumulating Bezout coefficients over the
    // four basis pairings (their gcd is 1 in the unimodular plane sum).
    Int g = 0;
    std::vector<Int> coeff(4);
    for (std::size_t b = 0; b < 4; ++b) {
        Int pb = pairing(u2, v4, basis_vector(u2, b));
        Int x, y;
        Int g2 = ext_gcd(g, pb, x, y);
        for (std::size_t t = 0; t < b; ++t) coeff[t] *= x;
        coeff[b] = y;
        g = g2;
    }
    if (g != 1) throw VerifyError("symplectic_complete: pairing gcd is not 1");
    Vec u(4);
    for (std::size_t b = 0; b < 4; ++b) u[b] = coeff[b];
    if (pairing(u2, v4, u) != 1) throw VerifyError("symplectic_complete: (v, u) != 1");

    // Orthogonal complement of the plane <v, u>.
    Mat a(2, 4);
    const Vec jv = mul(u2.gram, v4), ju = mul(u2.gram, u);
    for (std::size_t j = 0; j < 4; ++j) {
        a(0, j) = jv[j];
        a(1, j) = ju[j];
    }
    std::vector<Vec> ker = kernel_basis(a);
    if (ker.size() != 2) throw VerifyError("symplectic_complete: complement rank is not 2");
    Int c = pairing(u2, ker[0], ker[1]);
    if (c != 1 && c != -1) throw VerifyError("symplectic_complete: complement is not unimodular");
    if (c == -1) std::swap(ker[0], ker[1]);

    // Basis (k1, k2, v, u) is symplectic; sending it to (e1, f1, e2, f2)
    // moves v onto e2.
    const Mat b = from_cols({ker[0], ker[1], v4, u});
    if (mul(mul(transpose(b), u2.gram), b) != u2.gram)
        throw VerifyError("symplectic_complete: assembled basis is not symplectic");
    // For unimodular J: J^2 = -I, so B^{-1} = -J B^T J.
    Mat binv = mul(mul(u2.gram, transpose(b)), u2.gram);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) binv(i, j) = -binv(i, j);
    if (mul(binv, b) != Mat::identity(4)) throw VerifyError("symplectic_complete: inverse check");

    Mat p = Mat::identity(l.rank());
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) p(i, j) = binv(i, j);

    const Vec moved = mul(p, v);
    for (std::size_t i = 0; i < moved.size(); ++i)
        if (i != 2 && i != 3 && moved[i] != 0)
            throw VerifyError("symplectic_complete: image not in U2");
    return BasisChange{std::move(p)};
}

}  // namespace symplat
