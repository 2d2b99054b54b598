#include "symplat/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <unordered_map>

#include "symplat/error.hpp"

namespace symplat {

namespace {

using i64 = long long;
using State = std::vector<i64>;

// ---- bounded fast path ------------------------------------------------
//
// The searches below run on int64 coordinates.  The guards in
// require_desk_scale make every intermediate provably fit: with
// 2g <= 16, |coords| <= 120, generator coords <= 120 and dg <= 2^20,
// a pairing is below 2^46 and a transvection image component below 2^60.

constexpr i64 kCoordCap = 120;
constexpr i64 kDivisorCap = 1 << 20;

struct FastLattice {
    std::size_t rank = 0, genus = 0;
    std::vector<i64> div;
};

FastLattice fast_lattice(const Lattice& l) {
    FastLattice fl;
    fl.rank = l.rank();
    fl.genus = l.genus();
    for (const Int& d : l.type.divisors) {
        if (!d.fits_slong_p() || d.get_si() > kDivisorCap)
            throw InputError("budget", "divisor too large for the bounded search");
        fl.div.push_back(d.get_si());
    }
    if (fl.rank > 16) throw InputError("budget", "rank too large for the bounded search");
    return fl;
}

void require_desk_scale(const Int& bound, const char* what) {
    if (bound < 1) throw InputError("budget", std::string(what) + " must be >= 1");
    if (!bound.fits_slong_p() || bound.get_si() > kCoordCap)
        throw InputError("budget", std::string(what) + " exceeds the bounded-search cap");
}

i64 dot(const State& a, const State& b) {
    i64 s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// q with dot(q, v) = pairing(l, v).
State pairing_weights(const FastLattice& fl, const State& l) {
    State q(fl.rank);
    for (std::size_t i = 0; i < fl.genus; ++i) {
        q[2 * i] = -fl.div[i] * l[2 * i + 1];
        q[2 * i + 1] = fl.div[i] * l[2 * i];
    }
    return q;
}

i64 state_gcd(const State& v) {
    i64 g = 0;
    for (i64 c : v) g = std::gcd(g, c < 0 ? -c : c);
    return g;
}

i64 state_divisor(const FastLattice& fl, const State& v) {
    i64 g = 0;
    for (std::size_t i = 0; i < fl.genus; ++i) {
        g = std::gcd(g, fl.div[i] * (v[2 * i] < 0 ? -v[2 * i] : v[2 * i]));
        g = std::gcd(g, fl.div[i] * (v[2 * i + 1] < 0 ? -v[2 * i + 1] : v[2 * i + 1]));
    }
    return g;
}

// 16-byte packed key; coordinates must lie in [-127, 127].
struct Key {
    std::uint64_t lo = 0, hi = 0;
    bool operator==(const Key&) const = default;
    bool operator<(const Key& o) const { return hi != o.hi ? hi < o.hi : lo < o.lo; }
};

struct KeyHash {
    std::size_t operator()(const Key& k) const {
        std::uint64_t x = k.lo ^ (k.hi * 0x9E3779B97F4A7C15ULL);
        x ^= x >> 30;
        x *= 0xBF58476D1CE4E5B9ULL;
        x ^= x >> 27;
        x *= 0x94D049BB133111EBULL;
        x ^= x >> 31;
        return static_cast<std::size_t>(x);
    }
};

Key pack(const State& s) {
    Key k;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto b = static_cast<std::uint64_t>(static_cast<std::uint8_t>(static_cast<std::int8_t>(s[i])));
        if (i < 8)
            k.lo |= b << (8 * i);
        else
            k.hi |= b << (8 * (i - 8));
    }
    return k;
}

State unpack(const Key& k, std::size_t rank) {
    State s(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        const std::uint64_t word = i < 8 ? k.lo : k.hi;
        s[i] = static_cast<std::int8_t>((word >> (8 * (i % 8))) & 0xFF);
    }
    return s;
}

// Residues of [v*] packed into a key (for the class-preservation assertion
// and for grouping box vectors by class).
Key class_key(const FastLattice& fl, const State& v) {
    State r(fl.rank);
    const i64 d = state_divisor(fl, v);
    for (std::size_t i = 0; i < fl.genus; ++i) {
        const i64 di = fl.div[i];
        const auto red = [&](i64 c) {
            i64 x = (c * di / d) % di;
            return x < 0 ? x + di : x;
        };
        r[2 * i] = red(v[2 * i]);
        r[2 * i + 1] = red(v[2 * i + 1]);
    }
    return pack(r);
}

State residues_of_class_key(const Key& k, std::size_t rank) { return unpack(k, rank); }

Vec to_vec(const State& s) {
    Vec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) v[i] = static_cast<long>(s[i]);
    return v;
}

std::optional<State> to_state(const Vec& v, i64 cap) {
    State s(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].fits_slong_p()) return std::nullopt;
        s[i] = v[i].get_si();
        if (s[i] > cap || s[i] < -cap) return std::nullopt;
    }
    return s;
}

// Lexicographic odometer over [-b, b]^rank starting at all -b; returns false
// when exhausted.  First coordinate is most significant.
bool odometer_next(State& s, i64 b) {
    for (std::size_t i = s.size(); i-- > 0;) {
        if (s[i] < b) {
            ++s[i];
            std::fill(s.begin() + static_cast<std::ptrdiff_t>(i) + 1, s.end(), -b);
            return true;
        }
    }
    return false;
}

// ---- generator moves ----------------------------------------------------

// Flat storage: per move the four length-rank blocks l | m | ql | qm.
struct MoveSet {
    std::size_t rank = 0;
    std::size_t count = 0;
    std::vector<i64> data;
    bool has_swap = false;  // U1 <-> U2 plane swap, appended as move index `count`

    const i64* l(std::size_t i) const { return &data[(4 * i + 0) * rank]; }
    const i64* m(std::size_t i) const { return &data[(4 * i + 1) * rank]; }
    const i64* ql(std::size_t i) const { return &data[(4 * i + 2) * rank]; }
    const i64* qm(std::size_t i) const { return &data[(4 * i + 3) * rank]; }
    std::size_t total_moves() const { return count + (has_swap ? 1 : 0); }
};

MoveSet build_moves(const FastLattice& fl, i64 gb, bool unimodular_swap) {
    // All nonzero l in the generator box, lexicographic.
    std::vector<State> ls;
    std::vector<State> qs;
    State cur(fl.rank, -gb);
    do {
        if (std::all_of(cur.begin(), cur.end(), [](i64 c) { return c == 0; })) continue;
        ls.push_back(cur);
        qs.push_back(pairing_weights(fl, cur));
    } while (odometer_next(cur, gb));

    // Canonical representative among (l,m) ~ (m,l) ~ (-l,-m) ~ (-m,-l).
    auto neg = [](const State& s) {
        State n(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) n[i] = -s[i];
        return n;
    };
    MoveSet ms;
    ms.rank = fl.rank;
    for (std::size_t a = 0; a < ls.size(); ++a) {
        for (std::size_t b = 0; b < ls.size(); ++b) {
            if (dot(qs[a], ls[b]) != 0) continue;
            const State &l = ls[a], &m = ls[b];
            const State nl = neg(l), nm = neg(m);
            const auto self = std::tie(l, m);
            if (std::tie(m, l) < self || std::tie(nl, nm) < self || std::tie(nm, nl) < self)
                continue;
            ms.data.insert(ms.data.end(), l.begin(), l.end());
            ms.data.insert(ms.data.end(), m.begin(), m.end());
            const State qm = pairing_weights(fl, m);
            ms.data.insert(ms.data.end(), qs[a].begin(), qs[a].end());
            ms.data.insert(ms.data.end(), qm.begin(), qm.end());
            ++ms.count;
        }
    }
    ms.has_swap = unimodular_swap;
    return ms;
}

// Successor under move i, or nullopt if the move fixes v.
std::optional<State> apply_move(const MoveSet& ms, std::size_t i, const State& v) {
    if (i == ms.count) {  // plane swap
        State s = v;
        std::swap(s[0], s[2]);
        std::swap(s[1], s[3]);
        if (s == v) return std::nullopt;
        return s;
    }
    const i64* ql = ms.ql(i);
    const i64* qm = ms.qm(i);
    i64 sv = 0, tv = 0;
    for (std::size_t k = 0; k < ms.rank; ++k) {
        sv += ql[k] * v[k];
        tv += qm[k] * v[k];
    }
    if (sv == 0 && tv == 0) return std::nullopt;
    const i64* l = ms.l(i);
    const i64* m = ms.m(i);
    State s(ms.rank);
    for (std::size_t k = 0; k < ms.rank; ++k) s[k] = v[k] + sv * m[k] + tv * l[k];
    return s;
}

bool within(const State& s, i64 b) {
    return std::all_of(s.begin(), s.end(), [b](i64 c) { return c >= -b && c <= b; });
}

// Witness for a single move (built on demand, cached by the callers).
Witness move_witness(const Lattice& lat, const MoveSet& ms, std::size_t i) {
    if (i == ms.count) {
        Mat sw = Mat::identity(lat.rank());
        sw(0, 0) = sw(1, 1) = sw(2, 2) = sw(3, 3) = 0;
        sw(2, 0) = sw(3, 1) = sw(0, 2) = sw(1, 3) = 1;
        return matrix_witness(lat, std::move(sw));
    }
    Vec l(ms.rank), m(ms.rank);
    for (std::size_t k = 0; k < ms.rank; ++k) {
        l[k] = static_cast<long>(ms.l(i)[k]);
        m[k] = static_cast<long>(ms.m(i)[k]);
    }
    return transvection_matrix(lat, make_transvection_int(lat, l, m));
}

struct ParentInfo {
    Key parent;
    std::int32_t move = -1;  // -1 marks a root
    std::uint16_t depth = 0;
};

using VisitMap = std::unordered_map<Key, ParentInfo, KeyHash>;

class MoveWitnessCache {
public:
    MoveWitnessCache(const Lattice& lat, const MoveSet& ms) : lat_(lat), ms_(ms) {}

    const Witness& get(std::size_t i) {
        auto it = cache_.find(i);
        if (it == cache_.end()) it = cache_.emplace(i, move_witness(lat_, ms_, i)).first;
        return it->second;
    }

private:
    const Lattice& lat_;
    const MoveSet& ms_;
    std::unordered_map<std::size_t, Witness> cache_;
};

// Composes the path root -> key recorded in `visited` into a witness.
Witness path_witness(const Lattice& lat, const VisitMap& visited, MoveWitnessCache& cache, Key key) {
    std::vector<std::size_t> moves;
    for (;;) {
        const ParentInfo& pi = visited.at(key);
        if (pi.move < 0) break;
        moves.push_back(static_cast<std::size_t>(pi.move));
        key = pi.parent;
    }
    Witness w = identity_witness(lat);
    for (auto it = moves.rbegin(); it != moves.rend(); ++it)
        w = compose(lat, cache.get(*it), w);
    return w;
}

}  // namespace

// ---- enumerate_primitive --------------------------------------------------

PrimitiveEnumerator::PrimitiveEnumerator(const Lattice& l, const Int& bound)
    : rank_(l.rank()), bound_(bound) {
    if (bound < 1) throw InputError("budget", "enumeration bound must be >= 1");
    cur_.assign(rank_, -bound_);
}

bool PrimitiveEnumerator::advance() {
    for (std::size_t i = rank_; i-- > 0;) {
        if (cur_[i] < bound_) {
            ++cur_[i];
            for (std::size_t j = i + 1; j < rank_; ++j) cur_[j] = -bound_;
            return true;
        }
    }
    return false;
}

std::optional<Vec> PrimitiveEnumerator::next() {
    if (done_) return std::nullopt;
    for (;;) {
        if (started_ && !advance()) {
            done_ = true;
            return std::nullopt;
        }
        started_ = true;
        Int g = 0;
        for (const Int& c : cur_) g = gcd(g, c);
        if (g == 1) return cur_;
    }
}

// ---- class_coverage ---------------------------------------------------

CoverageReport class_coverage(const Lattice& l, const Int& bound) {
    require_desk_scale(bound, "coverage bound");
    const FastLattice fl = fast_lattice(l);
    const i64 b = bound.get_si();

    std::map<State, unsigned long long> tally;  // keyed by residue tuple
    State cur(fl.rank, -b);
    do {
        if (state_gcd(cur) != 1) continue;
        tally[residues_of_class_key(class_key(fl, cur), fl.rank)] += 1;
    } while (odometer_next(cur, b));

    const DiscGroup grp{l.type};
    CoverageReport rep;
    rep.total_classes = grp.size();
    for (const auto& [res, count] : tally) {
        std::vector<std::pair<Int, Int>> pairs(fl.genus);
        for (std::size_t i = 0; i < fl.genus; ++i)
            pairs[i] = {Int(static_cast<long>(res[2 * i])), Int(static_cast<long>(res[2 * i + 1]))};
        rep.counts.emplace(make_disc_element(grp, std::move(pairs)), count);
    }
    if (grp.size() <= (Int(1) << 20)) {
        rep.missing_known = true;
        for (const DiscElement& x : all_elements(grp))
            if (!rep.counts.count(x)) rep.missing.push_back(x);
    }
    return rep;
}

// ---- orbit_bfs_search -------------------------------------------------

BfsResult orbit_bfs_search(const Lattice& l, const Vec& v, const Vec& w, const SearchBudget& budget) {
    if (!is_primitive(l, v) || !is_primitive(l, w))
        throw InputError("non-primitive", "orbit search requires primitive vectors");
    require_desk_scale(budget.coordinate_bound, "coordinate bound");
    require_desk_scale(budget.generator_bound, "generator bound");
    const FastLattice fl = fast_lattice(l);
    const i64 cb = budget.coordinate_bound.get_si();

    const auto sv = to_state(v, 127), sw = to_state(w, 127);
    if (!sv || !sw) throw InputError("budget", "source coordinates exceed the bounded-search cap");

    BfsResult res;
    const bool swap_ok = l.genus() >= 2 && l.type.divisors[0] == 1 && l.type.divisors[1] == 1;
    const MoveSet ms = build_moves(fl, budget.generator_bound.get_si(), swap_ok);
    MoveWitnessCache cache(l, ms);

    const Key kv = pack(*sv), kw = pack(*sw);
    const Key cls_v = class_key(fl, *sv), cls_w = class_key(fl, *sw);

    VisitMap side[2];
    std::vector<Key> frontier[2];
    side[0].emplace(kv, ParentInfo{});
    side[1].emplace(kw, ParentInfo{});
    frontier[0].push_back(kv);
    frontier[1].push_back(kw);

    auto finish = [&](Key meet) {
        // meet = F v = G w, so G^{-1} F maps v to w.
        Witness fwd = path_witness(l, side[0], cache, meet);
        Witness bwd = path_witness(l, side[1], cache, meet);
        Witness total = compose(l, inverse(l, bwd), fwd);
        if (total.apply(v) != w) throw VerifyError("orbit witness does not map v to w");
        res.witness = std::move(total);
        res.status = BfsStatus::found;
    };

    if (kv == kw) {
        finish(kv);
        res.states_visited = 1;
        return res;
    }

    std::size_t depth[2] = {0, 0};
    while (!frontier[0].empty() || !frontier[1].empty()) {
        // Expand the smaller live frontier; ties expand the v side.
        int s;
        if (frontier[0].empty())
            s = 1;
        else if (frontier[1].empty())
            s = 0;
        else
            s = frontier[0].size() <= frontier[1].size() ? 0 : 1;
        if (depth[s] >= budget.max_depth) {
            res.status = BfsStatus::depth_cap_reached;
            break;
        }
        ++depth[s];
        const Key expect_cls = s == 0 ? cls_v : cls_w;
        std::vector<Key> next;
        for (const Key& pk : frontier[s]) {
            const State ps = unpack(pk, fl.rank);
            for (std::size_t mi = 0; mi < ms.total_moves(); ++mi) {
                auto img = apply_move(ms, mi, ps);
                if (!img || !within(*img, cb)) continue;
                const Key ck = pack(*img);
                if (side[s].count(ck)) continue;
                if (class_key(fl, *img) != expect_cls)
                    throw VerifyError("orbit move changed the dual class");
                side[s].emplace(ck, ParentInfo{pk, static_cast<std::int32_t>(mi),
                                               static_cast<std::uint16_t>(depth[s])});
                if (side[1 - s].count(ck)) {
                    res.states_visited = side[0].size() + side[1].size();
                    res.depth_reached = std::max(depth[0], depth[1]);
                    finish(ck);
                    return res;
                }
                next.push_back(ck);
                if (side[0].size() + side[1].size() > budget.max_states) {
                    res.states_visited = side[0].size() + side[1].size();
                    res.depth_reached = std::max(depth[0], depth[1]);
                    res.status = BfsStatus::state_cap_reached;
                    return res;
                }
            }
        }
        frontier[s] = std::move(next);
        res.depth_reached = std::max(depth[0], depth[1]);
        if (frontier[0].empty() && frontier[1].empty() && res.status != BfsStatus::depth_cap_reached)
            res.status = BfsStatus::no_path_within_bounds;
    }
    res.states_visited = side[0].size() + side[1].size();
    return res;
}

// ---- splitting_bruteforce ----------------------------------------------

std::optional<Vec> splitting_bruteforce(const Lattice& l, const Vec& v, const Int& bound) {
    if (!is_primitive(l, v))
        throw InputError("non-primitive", "splitting_bruteforce requires a primitive vector");
    require_desk_scale(bound, "search bound");
    const Int d = divisor(l, v);

    const FastLattice fl = fast_lattice(l);
    const auto sv = to_state(v, (i64(1) << 40));
    const i64 b = bound.get_si();
    if (sv && d.fits_slong_p()) {
        const i64 dd = d.get_si();
        State qv = pairing_weights(fl, *sv);  // dot(qv, w) = pairing(v, w)
        State cur(fl.rank, -b);
        do {
            if (state_divisor(fl, cur) != dd) continue;
            if (state_gcd(cur) != 1) continue;
            if (dot(qv, cur) == dd) return to_vec(cur);
        } while (odometer_next(cur, b));
        return std::nullopt;
    }

    // Exact fallback for out-of-range inputs.
    PrimitiveEnumerator en(l, bound);
    while (auto w = en.next()) {
        if (divisor(l, *w) != d) continue;
        if (pairing(l, v, *w) == d) return *w;
    }
    return std::nullopt;
}

// ---- sweep_orbits -------------------------------------------------------

OrbitSweepReport sweep_orbits(const Lattice& l, const Int& member_bound, const SearchBudget& budget) {
    require_desk_scale(member_bound, "member bound");
    require_desk_scale(budget.coordinate_bound, "coordinate bound");
    require_desk_scale(budget.generator_bound, "generator bound");
    if (budget.coordinate_bound < member_bound)
        throw InputError("budget", "coordinate bound must cover the member bound");
    const FastLattice fl = fast_lattice(l);
    for (i64 di : fl.div)
        if (di > 254) throw InputError("budget", "divisors too large to pack class keys");

    const i64 mb = member_bound.get_si();
    const i64 cb = budget.coordinate_bound.get_si();

    // Group the box members by dual class; scan order is lexicographic, so
    // each class's first member doubles as its canonical representative.
    std::map<State, std::vector<Key>> classes;  // residue tuple -> member keys
    {
        State cur(fl.rank, -mb);
        do {
            if (state_gcd(cur) != 1) continue;
            classes[residues_of_class_key(class_key(fl, cur), fl.rank)].push_back(pack(cur));
        } while (odometer_next(cur, mb));
    }

    const bool swap_ok = l.genus() >= 2 && l.type.divisors[0] == 1 && l.type.divisors[1] == 1;
    const MoveSet ms = build_moves(fl, budget.generator_bound.get_si(), swap_ok);
    MoveWitnessCache cache(l, ms);
    const DiscGroup grp{l.type};

    OrbitSweepReport rep;
    for (const auto& [residues, members] : classes) {
        OrbitClassReport cr;
        {
            std::vector<std::pair<Int, Int>> pairs(fl.genus);
            for (std::size_t i = 0; i < fl.genus; ++i)
                pairs[i] = {Int(static_cast<long>(residues[2 * i])),
                            Int(static_cast<long>(residues[2 * i + 1]))};
            cr.cls = make_disc_element(grp, std::move(pairs));
        }
        cr.members = members.size();
        const Key expect_cls = pack(residues);

        std::unordered_map<Key, bool, KeyHash> member_left;  // true = not yet reached
        for (const Key& k : members) member_left.emplace(k, true);

        const Key root = members.front();
        VisitMap visited;
        visited.emplace(root, ParentInfo{});
        std::vector<Key> frontier{root};
        std::size_t remaining = members.size();
        member_left[root] = false;
        --remaining;

        std::size_t depth = 0;
        while (remaining > 0 && !frontier.empty() && depth < budget.max_depth &&
               visited.size() <= budget.max_states) {
            ++depth;
            std::vector<Key> next;
            for (const Key& pk : frontier) {
                const State ps = unpack(pk, fl.rank);
                for (std::size_t mi = 0; mi < ms.total_moves(); ++mi) {
                    auto img = apply_move(ms, mi, ps);
                    if (!img || !within(*img, cb)) continue;
                    const Key ck = pack(*img);
                    auto [it, inserted] = visited.emplace(
                        ck, ParentInfo{pk, static_cast<std::int32_t>(mi),
                                       static_cast<std::uint16_t>(depth)});
                    if (!inserted) continue;
                    if (class_key(fl, *img) != expect_cls)
                        throw VerifyError("orbit move changed the dual class");
                    auto mit = member_left.find(ck);
                    if (mit != member_left.end() && mit->second) {
                        mit->second = false;
                        --remaining;
                        if (remaining == 0) break;
                    }
                    next.push_back(ck);
                    if (visited.size() > budget.max_states) break;
                }
                if (remaining == 0 || visited.size() > budget.max_states) break;
            }
            frontier = std::move(next);
        }
        rep.states_explored += visited.size();

        // Rebuild and verify one witness per reached member.
        const Vec root_vec = to_vec(unpack(root, fl.rank));
        for (const Key& mk : members) {
            if (!visited.count(mk)) continue;
            ++cr.connected;
            Witness wit = path_witness(l, visited, cache, mk);
            if (wit.apply(root_vec) != to_vec(unpack(mk, fl.rank)))
                throw VerifyError("sweep witness does not map the representative to the member");
            ++cr.verified;
        }
        rep.classes.push_back(std::move(cr));
    }

    rep.all_connected = std::all_of(rep.classes.begin(), rep.classes.end(),
                                    [](const OrbitClassReport& c) { return c.connected == c.members; });
    return rep;
}

}  // namespace symplat
