#pragma once

// Surfaces carried by the branched surface underlying a taut ideal
// triangulation: switch equations, bounded enumeration, Euler
// characteristic, the dual-cycle pairing, and sheet reconstruction.
//
// At a taut edge the two pi corners cut the faces encircling it into two
// chains. Smoothing flattens the picture into a plane: both chains run
// from one pi corner (the "bottom") to the other, and a carried surface
// with w(f) parallel sheets per face f meets the edge in two equal stacks
// that match up monotonically:
//
//             a1  a2 ...            stack order along the edge: start at
//      --------*------- pi          the bottom pi corner and walk away
//             b1  b2 ...            from it along each chain in turn.
//
// The chain whose coorientations agree with the edge-walk traversal is
// read off forwards from the bottom corner, the other backwards; within
// one face, sheets are indexed along the coorientation.

#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "tautforge/taut.hpp"
#include "tautforge/tri3.hpp"

namespace tautforge {

using WeightVector = std::vector<long long>;

// One face crossing around an edge, pinned to the face class
// representative's labels: the walk crosses the rep-label edge u -> v.
struct SideIncidence {
    int face_class;
    int rep_u, rep_v;
};

struct EdgeSwitch {
    std::vector<SideIncidence> side_a;  // bottom-to-top
    std::vector<SideIncidence> side_b;  // bottom-to-top
};

struct SwitchSystem {
    std::vector<EdgeSwitch> edges;
    int face_class_count = 0;
};

inline SwitchSystem switch_system(const IdealTriangulation& tri, const Coorientation& coor,
                                  const std::vector<EdgeClass>& edges) {
    CornerAngles ca = corner_angles(tri, coor);
    SwitchSystem sys;
    sys.face_class_count = tri.face_class_count();
    for (const EdgeClass& ec : edges) {
        int d = ec.degree();
        std::vector<int> pis;
        for (int k = 0; k < d; ++k)
            if (ca.at(ec.corners[static_cast<size_t>(k)].tet, ec.corners[static_cast<size_t>(k)].i,
                      ec.corners[static_cast<size_t>(k)].j))
                pis.push_back(k);
        if (pis.size() != 2) throw validation_error("switch_system requires a taut structure");

        auto incidence = [&](int k) {
            const EdgeFaceCrossing& x = ec.crossings[static_cast<size_t>(k)];
            const EdgeCorner& c = ec.corners[static_cast<size_t>(k)];
            int cls = tri.face_class(x.from.tet, x.from.face);
            FaceRef rep = tri.face_class_rep(cls);
            int u = c.i, v = c.j;
            if (!(rep == x.from)) {
                const Perm4& p = tri.gluing(x.from.tet, x.from.face).perm;
                u = p[u];
                v = p[v];
            }
            return SideIncidence{cls, u, v};
        };
        auto agrees = [&](int k) {
            const EdgeFaceCrossing& x = ec.crossings[static_cast<size_t>(k)];
            return !coor.out(tri, x.to.tet, x.to.face);  // crossing enters along the coorientation
        };

        // crossings between corner pis[0] and pis[1], and the complement
        std::vector<int> chain1, chain2;
        for (int k = pis[0]; k != pis[1]; k = (k + 1) % d) chain1.push_back(k);
        for (int k = pis[1]; k != pis[0]; k = (k + 1) % d) chain2.push_back(k);

        auto chain_agrees = [&](const std::vector<int>& ch) {
            bool a = agrees(ch.front());
            for (int k : ch)
                if (agrees(k) != a) throw std::logic_error("mixed coorientation senses within a chain");
            return a;
        };
        bool a1 = chain_agrees(chain1);
        bool a2 = chain_agrees(chain2);
        if (a1 == a2) throw std::logic_error("both edge chains have the same sense");

        // The agreeing chain reads bottom-to-top in traversal order, the
        // other in reverse; both then start at the same (bottom) corner.
        const std::vector<int>& fwd = a1 ? chain1 : chain2;
        std::vector<int> bwd = a1 ? chain2 : chain1;
        std::reverse(bwd.begin(), bwd.end());
        EdgeSwitch es;
        for (int k : fwd) es.side_a.push_back(incidence(k));
        for (int k : bwd) es.side_b.push_back(incidence(k));
        // sanity: both walks must leave the same pi corner
        {
            int bottom = a1 ? pis[0] : pis[1];
            int last_bwd = bwd.front();  // crossing just before the bottom corner
            if ((last_bwd + 1) % d != bottom)
                throw std::logic_error("side walks do not share the bottom corner");
        }
        sys.edges.push_back(std::move(es));
    }
    return sys;
}

inline SwitchSystem switch_system(const IdealTriangulation& tri, const Coorientation& coor) {
    return switch_system(tri, coor, edge_classes(tri));
}

inline bool satisfies(const SwitchSystem& sys, const WeightVector& w) {
    for (const EdgeSwitch& e : sys.edges) {
        long long a = 0, b = 0;
        for (const SideIncidence& s : e.side_a) a += w[static_cast<size_t>(s.face_class)];
        for (const SideIncidence& s : e.side_b) b += w[static_cast<size_t>(s.face_class)];
        if (a != b) return false;
    }
    return true;
}

// All non-negative integer solutions with total <= max_total, in
// lexicographic order (the zero vector first).
inline std::vector<WeightVector> enumerate_solutions(const SwitchSystem& sys, long long max_total) {
    if (max_total < 0) throw validation_error("max_total must be non-negative");
    int nc = sys.face_class_count;
    // coefficient of class c in edge e's balance, and the last class each
    // edge depends on (for early pruning)
    std::vector<std::vector<long long>> coef(sys.edges.size(),
                                             std::vector<long long>(static_cast<size_t>(nc), 0));
    std::vector<int> last(sys.edges.size(), -1);
    for (size_t e = 0; e < sys.edges.size(); ++e) {
        for (const SideIncidence& s : sys.edges[e].side_a) coef[e][static_cast<size_t>(s.face_class)] += 1;
        for (const SideIncidence& s : sys.edges[e].side_b) coef[e][static_cast<size_t>(s.face_class)] -= 1;
        for (int c = 0; c < nc; ++c)
            if (coef[e][static_cast<size_t>(c)] != 0) last[e] = c;
    }
    std::vector<WeightVector> out;
    WeightVector w(static_cast<size_t>(nc), 0);
    std::function<void(int, long long)> go = [&](int c, long long used) {
        if (c == nc) {
            out.push_back(w);
            return;
        }
        for (long long v = 0; used + v <= max_total; ++v) {
            w[static_cast<size_t>(c)] = v;
            bool ok = true;
            for (size_t e = 0; e < sys.edges.size() && ok; ++e) {
                if (last[e] != c) continue;
                long long bal = 0;
                for (int k = 0; k <= c; ++k) bal += coef[e][static_cast<size_t>(k)] * w[static_cast<size_t>(k)];
                if (bal != 0) ok = false;
            }
            if (ok) go(c + 1, used + v);
        }
        w[static_cast<size_t>(c)] = 0;
    };
    go(0, 0);
    return out;
}

inline long long total_weight(const WeightVector& w) {
    return std::accumulate(w.begin(), w.end(), 0LL);
}

// chi = -total/2: the carried surface decomposes into `total` ideal
// triangles with the whole boundary ideal.
inline long long euler_char(const WeightVector& w) {
    long long t = total_weight(w);
    if (t % 2 != 0) throw validation_error("carried weight vector must have even total");
    return -t / 2;
}

// Signed homological pairing of the dual cycle with the carried class:
// each face contributes weight times the sign of the cycle's crossing
// relative to the coorientation.
inline long long pairing(const DualCycle& g, const WeightVector& w) {
    long long s = 0;
    for (const DualCycle::Edge& e : g.edges)
        s += (e.along ? 1 : -1) * w[static_cast<size_t>(e.face_class)];
    return s;
}

// ---- reconstruction -------------------------------------------------------

struct ComponentReport {
    int sheets = 0;
    long long euler = 0;
    int boundary_curves = 0;
};

struct SurfaceReport {
    std::vector<ComponentReport> components;
    std::vector<int> boundary_curves_per_cusp;
    long long total_euler = 0;
};

namespace detail {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(static_cast<size_t>(n)) {
        for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i;
    }
    int find(int x) {
        while (p[static_cast<size_t>(x)] != x) {
            p[static_cast<size_t>(x)] = p[static_cast<size_t>(p[static_cast<size_t>(x)])];
            x = p[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { p[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace detail

inline SurfaceReport reconstruct(const IdealTriangulation& tri, const Coorientation& coor,
                                 const WeightVector& w, const SwitchSystem& sys,
                                 const CuspData& cd) {
    (void)coor;  // the stacking data already lives in the switch system
    if (static_cast<int>(w.size()) != tri.face_class_count())
        throw validation_error("weight vector has the wrong length");
    for (long long x : w)
        if (x < 0) throw validation_error("weights must be non-negative");
    if (!satisfies(sys, w)) throw validation_error("weights do not satisfy the switch equations");

    // sheet ids per face class
    std::vector<int> first_sheet(w.size() + 1, 0);
    for (size_t c = 0; c < w.size(); ++c) first_sheet[c + 1] = first_sheet[c] + static_cast<int>(w[c]);
    int nsheets = first_sheet[w.size()];
    SurfaceReport rep;
    rep.boundary_curves_per_cusp.assign(cd.cusps.size(), 0);
    if (nsheets == 0) return rep;

    // side slot of sheet s at face-vertex pair {u,v}: 3 slots per sheet
    auto side_slot = [&](int sheet, int u, int v) { return 6 * sheet + edge_pair_index(u, v); };
    // side ends: 2 per slot
    auto end_slot = [&](int sheet, int u, int v, int which_vertex) {
        return 2 * side_slot(sheet, u, v) + (which_vertex == std::min(u, v) ? 0 : 1);
    };

    detail::UnionFind comp(nsheets);
    detail::UnionFind ends(12 * nsheets);
    std::vector<bool> side_glued(static_cast<size_t>(6 * nsheets), false);

    for (const EdgeSwitch& es : sys.edges) {
        std::vector<std::pair<const SideIncidence*, int>> stack_a, stack_b;
        for (const SideIncidence& s : es.side_a)
            for (long long k = 0; k < w[static_cast<size_t>(s.face_class)]; ++k)
                stack_a.push_back({&s, first_sheet[static_cast<size_t>(s.face_class)] + static_cast<int>(k)});
        for (const SideIncidence& s : es.side_b)
            for (long long k = 0; k < w[static_cast<size_t>(s.face_class)]; ++k)
                stack_b.push_back({&s, first_sheet[static_cast<size_t>(s.face_class)] + static_cast<int>(k)});
        if (stack_a.size() != stack_b.size())
            throw validation_error("internal matching inconsistency: unequal edge stacks");
        for (size_t m = 0; m < stack_a.size(); ++m) {
            auto [sa, sheet_a] = stack_a[m];
            auto [sb, sheet_b] = stack_b[m];
            int slot_a = side_slot(sheet_a, sa->rep_u, sa->rep_v);
            int slot_b = side_slot(sheet_b, sb->rep_u, sb->rep_v);
            if (side_glued[static_cast<size_t>(slot_a)] || side_glued[static_cast<size_t>(slot_b)])
                throw validation_error("internal matching inconsistency: side glued twice");
            side_glued[static_cast<size_t>(slot_a)] = true;
            side_glued[static_cast<size_t>(slot_b)] = true;
            comp.unite(sheet_a, sheet_b);
            ends.unite(end_slot(sheet_a, sa->rep_u, sa->rep_v, sa->rep_u),
                       end_slot(sheet_b, sb->rep_u, sb->rep_v, sb->rep_u));
            ends.unite(end_slot(sheet_a, sa->rep_u, sa->rep_v, sa->rep_v),
                       end_slot(sheet_b, sb->rep_u, sb->rep_v, sb->rep_v));
        }
    }

    // every sheet side must be glued exactly once
    for (size_t c = 0; c < w.size(); ++c) {
        FaceRef repf = tri.face_class_rep(static_cast<int>(c));
        for (long long k = 0; k < w[c]; ++k) {
            int sheet = first_sheet[c] + static_cast<int>(k);
            for (int u = 0; u < 4; ++u)
                for (int v = u + 1; v < 4; ++v) {
                    if (u == repf.face || v == repf.face) continue;
                    if (!side_glued[static_cast<size_t>(side_slot(sheet, u, v))])
                        throw validation_error("internal matching inconsistency: unglued sheet side");
                }
        }
    }

    // boundary arcs: per sheet and face vertex x, an arc joining the x-ends
    // of the two sides at x; walk arcs to count boundary circles
    struct Arc {
        int end1, end2;
        int cusp;
        int sheet;
    };
    std::vector<Arc> arcs;
    for (size_t c = 0; c < w.size(); ++c) {
        FaceRef repf = tri.face_class_rep(static_cast<int>(c));
        std::array<int, 3> verts{};
        int nv = 0;
        for (int x = 0; x < 4; ++x)
            if (x != repf.face) verts[static_cast<size_t>(nv++)] = x;
        for (long long k = 0; k < w[c]; ++k) {
            int sheet = first_sheet[c] + static_cast<int>(k);
            for (int a = 0; a < 3; ++a) {
                int x = verts[static_cast<size_t>(a)];
                int y = verts[static_cast<size_t>((a + 1) % 3)];
                int z = verts[static_cast<size_t>((a + 2) % 3)];
                arcs.push_back(Arc{ends.find(end_slot(sheet, x, y, x)), ends.find(end_slot(sheet, x, z, x)),
                                   cd.cusp_of[static_cast<size_t>(4 * repf.tet + x)], sheet});
            }
        }
    }
    // each end orbit touches exactly two arcs
    std::map<int, std::vector<int>> arcs_at_end;
    for (size_t i = 0; i < arcs.size(); ++i) {
        arcs_at_end[arcs[i].end1].push_back(static_cast<int>(i));
        arcs_at_end[arcs[i].end2].push_back(static_cast<int>(i));
    }
    for (auto& [e, v] : arcs_at_end)
        if (v.size() != 2) throw validation_error("internal matching inconsistency: boundary valence");

    std::vector<bool> arc_seen(arcs.size(), false);
    std::vector<int> circles_of_component;  // per component root, counted below
    std::map<int, int> comp_index;
    for (int s = 0; s < nsheets; ++s) {
        int r = comp.find(s);
        if (!comp_index.count(r)) {
            int idx = static_cast<int>(rep.components.size());
            comp_index[r] = idx;
            rep.components.push_back({});
        }
        ++rep.components[static_cast<size_t>(comp_index[r])].sheets;
    }
    for (size_t i = 0; i < arcs.size(); ++i) {
        if (arc_seen[i]) continue;
        // walk the circle
        int cusp = arcs[i].cusp;
        int comp_idx = comp_index[comp.find(arcs[i].sheet)];
        size_t cur = i;
        int from_end = arcs[i].end1;
        while (!arc_seen[cur]) {
            arc_seen[cur] = true;
            if (arcs[cur].cusp != cusp)
                throw validation_error("internal matching inconsistency: circle crosses cusps");
            int to_end = (from_end == arcs[cur].end1) ? arcs[cur].end2 : arcs[cur].end1;
            const auto& pair = arcs_at_end[to_end];
            size_t next = static_cast<size_t>(pair[0] == static_cast<int>(cur) ? pair[1] : pair[0]);
            from_end = to_end;
            cur = next;
        }
        ++rep.boundary_curves_per_cusp[static_cast<size_t>(cusp)];
        ++rep.components[static_cast<size_t>(comp_idx)].boundary_curves;
    }

    // Euler characteristic per component from the cell counts: V side-end
    // orbits, E = interior sides + boundary arcs, F sheets.
    std::map<int, long long> V, Eint;
    std::set<int> counted_end;
    for (size_t c = 0; c < w.size(); ++c) {
        FaceRef repf = tri.face_class_rep(static_cast<int>(c));
        for (long long k = 0; k < w[c]; ++k) {
            int sheet = first_sheet[c] + static_cast<int>(k);
            int root = comp_index[comp.find(sheet)];
            for (int u = 0; u < 4; ++u)
                for (int v = u + 1; v < 4; ++v) {
                    if (u == repf.face || v == repf.face) continue;
                    Eint[root] += 1;  // counts each glued side twice; halve later
                    for (int which : {u, v}) {
                        int e = ends.find(end_slot(sheet, u, v, which));
                        if (counted_end.insert(e).second) V[root] += 1;
                    }
                }
        }
    }
    rep.total_euler = 0;
    for (auto& [root, idx] : comp_index) {
        ComponentReport& cr = rep.components[static_cast<size_t>(idx)];
        long long F = cr.sheets;
        long long Ei = Eint[idx] / 2;
        long long Eb = 3 * F;  // one boundary arc per sheet corner
        cr.euler = V[idx] - (Ei + Eb) + F;
        rep.total_euler += cr.euler;
    }
    return rep;
}

inline SurfaceReport reconstruct(const IdealTriangulation& tri, const Coorientation& coor,
                                 const WeightVector& w) {
    return reconstruct(tri, coor, w, switch_system(tri, coor), cusp_triangulations(tri));
}

}  // namespace tautforge
