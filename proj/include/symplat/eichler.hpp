#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "symplat/discriminant.hpp"
#include "symplat/transvections.hpp"

namespace symplat {

struct EquivalenceChecks {
    bool symplectic = false;
    bool trivial_on_disc = false;
    bool maps_v_to_w = false;
};

struct EquivalenceResult {
    Witness witness;
    EquivalenceChecks check;
};

struct SplitResult {
    Vec partner;
    // <v, partner> = U(d) with d = div(v).
    Int summand_divisor;
    // Basis of the orthogonal complement whose Gram matrix is exactly the
    // canonical matrix of complement_type.
    std::vector<Vec> complement_basis;
    LatticeType complement_type;
};

struct NotSplitting {
    std::vector<Int> failing_primes;
};

// Surjectivity construction: v = d e1 + d w with w the canonical dual lift
// of x over the blocks i >= 2 and d = order(x).  Requires d1 = 1.  The three
// postconditions (primitive, div = d, class = x) are re-verified.
Vec construct_primitive_from_class(const Lattice& l, const DiscElement& x);

// Moves v into Lambda' = U2 + ... by a verified Gamma element, using the
// single Sp(4, Z)-orbit of primitive vectors of U1 + U2.  Requires
// d1 = d2 = 1.  Returns (gamma, gamma * v) with the U1 block of gamma * v
// zero.  If v already lies in Lambda', gamma is the identity.
std::pair<Witness, Vec> save_U(const Lattice& l, const Vec& v);

// Four-step equivalence construction.  Requires d1 = d2 = 1 and v, w
// primitive.  Returns nullopt when the dual classes differ (the vectors are
// then provably not Gamma-equivalent); otherwise a verified witness with
// gamma * v = w.
std::optional<EquivalenceResult> equivalence_witness(const Lattice& l, const Vec& v, const Vec& w);

// Splitting construction: partner w with (v, w) = div(v) = div(w), plus the
// complement splitting, when the dual class of v is splitting; otherwise
// NotSplitting with the failing primes.  Requires d1 = d2 = 1, v primitive.
std::variant<SplitResult, NotSplitting> splitting_witness(const Lattice& l, const Vec& v);

// Given (v, w) = div(v) = div(w) = d, computes an integer basis of the
// orthogonal complement of <v, w>, verifies that (v, w, complement) is a
// unimodular basis of the lattice, and normalizes the complement Gram
// matrix to canonical type.
SplitResult split_lattice(const Lattice& l, const Vec& v, const Vec& w);

}  // namespace symplat
