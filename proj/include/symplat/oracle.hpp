#pragma once

#include <map>
#include <optional>
#include <vector>

#include "symplat/discriminant.hpp"
#include "symplat/transvections.hpp"

namespace symplat {

// Bounds for the brute-force searches.  coordinate_bound prunes states, the
// generator set is every transvection pair with coordinates bounded by
// generator_bound and (l, m) = 0 (plus the U1<->U2 plane swap when
// d1 = d2 = 1); max_states caps memory fail-loud.
struct SearchBudget {
    Int coordinate_bound = 3;
    Int generator_bound = 1;
    std::size_t max_states = 500000;
    std::size_t max_depth = 32;
};

// Streams every primitive vector with all |coords| <= bound exactly once,
// in lexicographic order.
class PrimitiveEnumerator {
public:
    PrimitiveEnumerator(const Lattice& l, const Int& bound);

    std::optional<Vec> next();

private:
    std::size_t rank_;
    Int bound_;
    Vec cur_;
    bool done_ = false;
    bool started_ = false;

    bool advance();
};

struct CoverageReport {
    std::map<DiscElement, unsigned long long> counts;
    // Classes of D not hit within the bound; computed when |D| fits the
    // enumeration guard.
    std::vector<DiscElement> missing;
    bool missing_known = false;
    Int total_classes = 0;
};

CoverageReport class_coverage(const Lattice& l, const Int& bound);

enum class BfsStatus { found, no_path_within_bounds, state_cap_reached, depth_cap_reached };

// A non-found result is inconclusive, never a disproof.
struct BfsResult {
    std::optional<Witness> witness;
    BfsStatus status = BfsStatus::no_path_within_bounds;
    std::size_t states_visited = 0;
    std::size_t depth_reached = 0;
};

// Bidirectional BFS over the generator moves; the returned witness is
// verified and maps v to w exactly.
BfsResult orbit_bfs_search(const Lattice& l, const Vec& v, const Vec& w, const SearchBudget& budget);

// Exhaustive search for a partner w with div(w) = div(v), (v, w) = div(v),
// |coords| <= bound.  nullopt is inconclusive at this bound.
std::optional<Vec> splitting_bruteforce(const Lattice& l, const Vec& v, const Int& bound);

// Connectivity sweep used by the acceptance suite: per dual class of the
// primitive vectors with |coords| <= member_bound, runs one single-source
// BFS from the lexicographically first member and checks every member is
// reached, rebuilding and verifying a witness per member.  Pair
// connectivity follows by composing through the representative.
struct OrbitClassReport {
    DiscElement cls;
    std::size_t members = 0;
    std::size_t connected = 0;
    std::size_t verified = 0;
};

struct OrbitSweepReport {
    std::vector<OrbitClassReport> classes;
    std::size_t states_explored = 0;
    std::size_t contradictions = 0;  // class changes under a move: must stay 0
    bool all_connected = false;
};

OrbitSweepReport sweep_orbits(const Lattice& l, const Int& member_bound, const SearchBudget& budget);

}  // namespace symplat
