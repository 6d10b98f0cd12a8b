#pragma once

// R/L words on the once-punctured torus, realized as flip sequences with
// a closing isomorphism.
//
// Edges of a once-punctured-torus triangulation are tracked by primitive
// direction vectors in the fiber's integral homology: the base
// triangulation has edges (1,0), (0,1) and (-1,1) (the square's bottom,
// left and diagonal). The generators act on direction vectors as
//
//     R = [1 1]        L = [1 0]
//         [0 1]            [1 1]
//
// For a word m1..mn let W_k = m1*...*mk. Step k+1 flips the edge in
// direction W_k*(1,-1) and creates the edge W_k*(1,1); after n steps the
// triangulation is W_n applied to the base, and the closing isomorphism
// matches triangles by pulling their side vectors back through W_n^{-1}.
//
// Which of the two simplicial lifts of the slope correspondence is
// returned matters: the lifts differ by the elliptic involution, and only
// the vector-exact one closes up to the bundle with the stated monodromy.

#include <cstdint>
#include <string>
#include <vector>

#include "tautforge/surface.hpp"

namespace tautforge {

struct construction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Mat2 {
    long long a = 1, b = 0, c = 0, d = 1;  // [[a,b],[c,d]]

    static Mat2 R() { return {1, 1, 0, 1}; }
    static Mat2 L() { return {1, 0, 1, 1}; }

    Mat2 mul(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    std::pair<long long, long long> apply(long long x, long long y) const {
        return {a * x + b * y, c * x + d * y};
    }
    long long det() const { return a * d - b * c; }
    Mat2 inverse_unimodular() const {
        if (det() != 1) throw construction_error("matrix not in SL2");
        return {d, -b, -c, a};
    }
};

using Vec2 = std::pair<long long, long long>;

inline Vec2 vneg(Vec2 v) { return {-v.first, -v.second}; }
inline Vec2 vadd(Vec2 a, Vec2 b) { return {a.first + b.first, a.second + b.second}; }
inline bool vparallel_eq(Vec2 a, Vec2 b) { return a == b || a == vneg(b); }

// Side vectors for an oriented marked surface: vec[t][s] is the direction
// of side s traversed along triangle t's ccw boundary; ccw[t] says whether
// the label order (0,1,2) agrees with the surface orientation.
struct PtorusMarking {
    std::vector<std::array<Vec2, 3>> vec;
    std::vector<bool> ccw;
};

namespace detail {

inline bool perm_even(int a, int b, int c) {
    // parity of the permutation (a,b,c) of (0,1,2)
    int inv = (a > b) + (a > c) + (b > c);
    return (inv % 2) == 0;
}

// Directed vector from vertex P to vertex Q of triangle t.
inline Vec2 dir_vec(const PtorusMarking& m, int t, int P, int Q) {
    int side = 3 - P - Q;
    Vec2 v = m.vec[static_cast<size_t>(t)][static_cast<size_t>(side)];
    bool forward = (Q == (P + 1) % 3);
    bool positive = (m.ccw[static_cast<size_t>(t)] == forward);
    return positive ? v : vneg(v);
}

inline void check_marking(const SurfaceIdealTri& s, const PtorusMarking& m) {
    for (int t = 0; t < s.triangle_count(); ++t) {
        Vec2 sum{0, 0};
        for (int k = 0; k < 3; ++k) sum = vadd(sum, m.vec[static_cast<size_t>(t)][static_cast<size_t>(k)]);
        if (sum != Vec2{0, 0}) throw construction_error("marking: side vectors do not close up");
        for (int k = 0; k < 3; ++k) {
            const SGluing& g = s.gluing(t, k);
            Vec2 mine = m.vec[static_cast<size_t>(t)][static_cast<size_t>(k)];
            Vec2 theirs = m.vec[static_cast<size_t>(g.to.tri)][static_cast<size_t>(g.to.side)];
            if (mine != vneg(theirs)) throw construction_error("marking: glued sides not opposite");
        }
    }
}

}  // namespace detail

inline PtorusMarking ptorus_base_marking() {
    PtorusMarking m;
    m.vec = {{Vec2{-1, 1}, Vec2{0, -1}, Vec2{1, 0}},   // tri 0: sides 0,1,2
             {Vec2{1, -1}, Vec2{0, 1}, Vec2{-1, 0}}};  // tri 1
    m.ccw = {true, true};
    return m;
}

// Flips the given edge and transports the marking to the result.
inline FlipRecord flip_marked(const SurfaceIdealTri& tri, PtorusMarking& m, int edge_id) {
    FlipRecord rec = apply_flip_detailed(tri, edge_id);
    int t1 = rec.t1, s1 = rec.s1, t2 = rec.t2, s2 = rec.s2;

    Vec2 p = detail::dir_vec(m, t1, s1, rec.x1);       // A -> B
    Vec2 v = detail::dir_vec(m, t2, rec.x2, s2);       // B -> C
    Vec2 u = detail::dir_vec(m, t2, s2, rec.y2);       // C -> D
    Vec2 r = detail::dir_vec(m, t1, rec.y1, s1);       // D -> A

    // geometric B->D must agree from both triangles
    if (detail::dir_vec(m, t1, rec.x1, rec.y1) != detail::dir_vec(m, t2, rec.x2, rec.y2))
        throw construction_error("marking: square diagonal mismatch");
    if (vadd(vadd(p, v), vadd(u, r)) != Vec2{0, 0})
        throw construction_error("marking: square does not close up");

    // orientation of the square = orientation of (A,B,D) in T1
    bool square_ccw = (detail::perm_even(s1, rec.x1, rec.y1) == m.ccw[static_cast<size_t>(t1)]);
    {
        bool from_t2 = (detail::perm_even(s2, rec.x2, rec.y2) == m.ccw[static_cast<size_t>(t2)]);
        if (from_t2 != !square_ccw) throw construction_error("marking: inconsistent square orientation");
    }

    Vec2 diag = vadd(p, v);  // A -> C
    PtorusMarking nm = m;
    nm.ccw[static_cast<size_t>(t1)] = square_ccw;
    nm.ccw[static_cast<size_t>(t2)] = square_ccw;
    if (square_ccw) {
        nm.vec[static_cast<size_t>(t1)] = {v, vneg(diag), p};          // U sides 0,1,2
        nm.vec[static_cast<size_t>(t2)] = {u, r, diag};                // V sides 0,1,2
    } else {
        nm.vec[static_cast<size_t>(t1)] = {vneg(v), diag, vneg(p)};
        nm.vec[static_cast<size_t>(t2)] = {vneg(u), vneg(r), vneg(diag)};
    }
    detail::check_marking(rec.after, nm);
    m = std::move(nm);
    return rec;
}

// Finds the edge whose marking vector is +-target.
inline int find_edge_by_vector(const SurfaceIdealTri& tri, const PtorusMarking& m, Vec2 target) {
    auto es = tri.edges();
    for (int e = 0; e < static_cast<int>(es.size()); ++e) {
        SideRef s = es[static_cast<size_t>(e)].first;
        Vec2 v = m.vec[static_cast<size_t>(s.tri)][static_cast<size_t>(s.side)];
        if (vparallel_eq(v, target)) return e;
    }
    throw construction_error("no edge with the requested direction vector");
}

// word -> (base, flips + closing isomorphism). Throws on an empty word or
// a letter outside {R, L}.
inline std::pair<SurfaceIdealTri, FlipSequence> ptorus_word_to_flips(const std::string& word) {
    if (word.empty()) throw construction_error("monodromy word must be non-empty");
    for (char c : word)
        if (c != 'R' && c != 'L') throw construction_error("monodromy word letters must be R or L");

    SurfaceIdealTri base = ptorus_base();
    SurfaceIdealTri cur = base;
    PtorusMarking m = ptorus_base_marking();
    Mat2 W;  // m1 * ... * mk so far

    FlipSequence seq;
    for (char c : word) {
        Vec2 old_dir = W.apply(1, -1);
        Vec2 new_dir = W.apply(1, 1);
        int e = find_edge_by_vector(cur, m, old_dir);
        FlipRecord rec = flip_marked(cur, m, e);
        // the created diagonal must be the predicted new direction
        {
            auto es = rec.after.edges();
            SideRef s = es[static_cast<size_t>(rec.new_edge_id)].first;
            Vec2 got = m.vec[static_cast<size_t>(s.tri)][static_cast<size_t>(s.side)];
            if (!vparallel_eq(got, new_dir))
                throw construction_error("flip produced an unexpected edge direction");
        }
        seq.edge_ids.push_back(e);
        cur = rec.after;
        W = W.mul(c == 'R' ? Mat2::R() : Mat2::L());
    }

    // closing: match each final triangle to the base triangle whose side
    // vectors equal W^{-1} times its own, slot for slot
    Mat2 Winv = W.inverse_unimodular();
    PtorusMarking base_m = ptorus_base_marking();
    ClosingIso iso;
    iso.tri_image.assign(static_cast<size_t>(cur.triangle_count()), -1);
    iso.label_map.assign(static_cast<size_t>(cur.triangle_count()), Perm3());
    for (int x = 0; x < cur.triangle_count(); ++x) {
        int found = 0;
        for (int y = 0; y < base.triangle_count(); ++y)
            for (const Perm3& rho : detail::all_perm3()) {
                bool ok = true;
                for (int s = 0; s < 3 && ok; ++s) {
                    Vec2 want = base_m.vec[static_cast<size_t>(y)][static_cast<size_t>(rho[s])];
                    Vec2 img = Winv.apply(m.vec[static_cast<size_t>(x)][static_cast<size_t>(s)].first,
                                          m.vec[static_cast<size_t>(x)][static_cast<size_t>(s)].second);
                    if (img != want) ok = false;
                }
                if (ok) {
                    ++found;
                    iso.tri_image[static_cast<size_t>(x)] = y;
                    iso.label_map[static_cast<size_t>(x)] = rho;
                }
            }
        if (found != 1) throw construction_error("closing isomorphism not unique");
    }
    seq.closing = iso;
    return {base, seq};
}

}  // namespace tautforge
