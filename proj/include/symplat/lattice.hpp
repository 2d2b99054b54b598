#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "symplat/intmat.hpp"

namespace symplat {

// Divisor chain (d1, ..., dg) with di | di+1.  g = 0 is allowed only as the
// type of a rank-0 complement; make_lattice_type rejects it for user input.
struct LatticeType {
    std::vector<Int> divisors;

    std::size_t genus() const { return divisors.size(); }
    bool operator==(const LatticeType& o) const = default;
};

// Validated constructor: g >= 1, every di >= 1, di | di+1.
LatticeType make_lattice_type(std::vector<Int> divisors);

// Canonical model: basis (e1, f1, ..., eg, fg), Gram matrix block diagonal
// with i-th block [[0, di], [-di, 0]].
struct Lattice {
    LatticeType type;
    Mat gram;

    std::size_t genus() const { return type.genus(); }
    std::size_t rank() const { return 2 * type.genus(); }
};

Lattice make_lattice(const LatticeType& t);

// Unimodular change of basis.
struct BasisChange {
    Mat matrix;
};

// Basis vectors: e_i has index 2i, f_i index 2i+1 (i zero-based here; the
// printed names e1..eg, f1..fg are one-based).
Vec basis_vector(const Lattice& l, std::size_t index);

// The alternating form u^T J v = sum_i di (ai bi' - bi ai').
Int pairing(const Lattice& l, const Vec& u, const Vec& v);

// gcd of all coordinates is 1; equivalent to Qv cap Lambda = Zv in the
// canonical basis.  Rejects the zero vector.
bool is_primitive(const Lattice& l, const Vec& v);

// div(v): positive generator of the pairing ideal (v, Lambda), computed as
// the gcd of the pairings with the 2g basis vectors.  Rejects zero.
Int divisor(const Lattice& l, const Vec& v);

// Alternating Smith reduction of an arbitrary nondegenerate alternating
// integer matrix G: returns (t, P) with P^T G P equal to make_lattice(t).gram
// exactly and |det P| = 1.  Pivot rule: minimal absolute value, ties broken
// by lowest (row, column) position.
std::pair<LatticeType, BasisChange> normalize_gram(const Mat& g);

// Requires d1 = d2 = 1 and v supported on the first two hyperbolic planes
// with primitive projection.  Returns an isometry P of U1+U2 (extended by
// the identity) with P v = (projection of v moved onto e2), P^T J P = J.
BasisChange symplectic_complete(const Lattice& l, const Vec& v);

}  // namespace symplat
