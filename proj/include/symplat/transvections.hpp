#pragma once

#include <optional>
#include <vector>

#include "symplat/lattice.hpp"

namespace symplat {

// T_{l,m}: v -> v + (l, v) m + (m, v) l, with (l, m) = 0.  l and m may be
// rational; only integral pairs give elements of Gamma automatically.
struct Transvection {
    std::vector<Rat> l, m;
    bool integral = false;
};

// Checks (l, m) = 0 (bilinear extension of the form) and sets `integral`.
Transvection make_transvection(const Lattice& lat, std::vector<Rat> l, std::vector<Rat> m);
Transvection make_transvection_int(const Lattice& lat, const Vec& l, const Vec& m);

// Applies the formula; throws InputError("non-integral-result") if the image
// leaves the lattice (possible only for non-integral l, m).
Vec apply_transvection(const Lattice& lat, const Transvection& t, const Vec& v);

// One step of a verified isometry: either a transvection with its matrix, or
// a bare matrix (used where the construction is not a single transvection).
struct WitnessFactor {
    std::optional<Transvection> transvection;
    Mat matrix;
};

// A verified element of Gamma: the product matrix together with its factor
// list.  Both invariants (M^T J M = J, trivial action on D) are checked on
// construction and after every composition; failure throws VerifyError.
class Witness {
public:
    Witness(const Lattice& lat, std::vector<WitnessFactor> factors, Mat matrix);

    const LatticeType& type() const { return type_; }
    const std::vector<WitnessFactor>& factors() const { return factors_; }
    const Mat& matrix() const { return matrix_; }

    Vec apply(const Vec& v) const { return mul(matrix_, v); }

private:
    LatticeType type_;
    std::vector<WitnessFactor> factors_;
    Mat matrix_;
};

Witness identity_witness(const Lattice& lat);

// Single-factor witness for T; requires integral l, m, or at least an
// integral matrix passing both invariants.
Witness transvection_matrix(const Lattice& lat, const Transvection& t);

// Witness wrapping an explicit matrix (verified).
Witness matrix_witness(const Lattice& lat, Mat m);

// Factor lists concatenated, matrix = a.matrix * b.matrix (so the composite
// acts as a after b), invariants re-verified.
Witness compose(const Lattice& lat, const Witness& a, const Witness& b);

// Exact integral inverse: for symplectic M, M^{-1} = J^{-1} M^T J.
// Transvection factors invert as T_{l,m}^{-1} = T_{l,-m}, in reverse order.
Witness inverse(const Lattice& lat, const Witness& a);

// True iff M^T J M = J and M fixes every dual generator ei/di, fi/di mod
// Lambda, i.e. the columns of M - I are divisible blockwise by di.
bool verify_gamma_membership(const Lattice& lat, const Mat& m);

// M^{-1} for symplectic M (exact division by the block divisors).
Mat symplectic_inverse(const Lattice& lat, const Mat& m);

}  // namespace symplat
