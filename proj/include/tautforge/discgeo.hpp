#pragma once

// Exact planar model of one truncated taut tetrahedron: admissible disc
// boundary patterns, cusp counting, combinatorial area, and the signed
// pairing with the dual graph computed through the alpha arcs.
//
// The boundary sphere of the truncated tetrahedron carries 4 hexagons
// (truncated faces), 4 triangles (vertex links) and 18 one-cells: the 6
// truncated edges and the 12 triangle sides. Every hexagon meets one pi
// edge and two zero edges. Each hexagon is drawn in one fixed integer
// chart, a truncated right triangle with corner cuts at parameter 1/6
// (the affine image of the symmetric picture, so all incidence
// combinatorics agree with it), rotated so its pi side sits at position
// S0:
//
//   vertices (ccw): (24,0) (120,0) (120,24) (24,120) (0,120) (0,24)
//   sides    (ccw): S0 = pi truncated edge     (24,0)-(120,0)
//                   S1 = triangle side        (120,0)-(120,24)
//                   S2 = zero truncated edge  (120,24)-(24,120)
//                   S3 = triangle side        (24,120)-(0,120)
//                   S4 = zero truncated edge   (0,120)-(0,24)
//                   S5 = triangle side          (0,24)-(24,0)
//
// Side midpoints: m0=(72,0) m1=(120,12) m2=(72,72) m3=(12,120) m4=(0,72)
// m5=(12,12). The alpha arc of a zero edge runs from one adjacent
// hexagon's center straight to the edge midpoint and on to the other
// center, directed from the in-face hexagon to the out-face hexagon.
//
// Disc boundaries are normalized to cross one-cells at midpoints and run
// straight in each cell, so an embedded pattern uses every one-cell at
// most once and a hexagon arc is one of the nine midpoint chords allowed
// by the admissibility conditions. Crossings of a pattern with an alpha
// arc are exact integer-predicate computations; touches at an alpha
// endpoint count 1/2 with the sign of the perturbation that crosses, and
// a chord overlapping an alpha segment entirely (the long chord through
// the center and the zero-edge midpoint) contributes 0, the two
// perturbations cancelling. All pairing values are quarter-integers and
// are stored as numerators over 4.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tautforge/taut.hpp"
#include "tautforge/tri3.hpp"

namespace tautforge {

struct property_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TetAngles {
    std::array<int, 6> angle{};  // by edge_pair_index, units of pi

    static TetAngles of_tet(const CornerAngles& ca, int tet) {
        TetAngles a;
        for (int e = 0; e < 6; ++e) a.angle[static_cast<size_t>(e)] = ca.angle[static_cast<size_t>(tet)][static_cast<size_t>(e)];
        return a;
    }
};

// one-cell ids: 0..5 truncated edges (edge_pair_index), 6..17 triangle
// sides (vertex v, face f != v)
inline int tri_side_id(int v, int f) {
    int pos = 0;
    for (int x = 0; x < 4; ++x) {
        if (x == v) continue;
        if (x == f) break;
        ++pos;
    }
    return 6 + 3 * v + pos;
}

inline bool is_trunc_cell(int id) { return id < 6; }

struct IVec {
    long long x = 0, y = 0;
    IVec operator-(const IVec& o) const { return {x - o.x, y - o.y}; }
    bool operator==(const IVec& o) const { return x == o.x && y == o.y; }
};

inline long long cross(const IVec& a, const IVec& b) { return a.x * b.y - a.y * b.x; }
inline int sgn(long long v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

class TruncatedModel {
public:
    TetAngles angles;
    std::array<bool, 4> out_flag{};  // per face

    struct Hexagon {
        int face = -1;
        std::array<int, 6> cell_at{};  // canonical position -> one-cell id
    };
    std::array<Hexagon, 4> hex;
    // position of a one-cell within a hexagon's chart, or -1
    std::array<std::array<int, 18>, 4> pos_in_hex{};

    // chart constants
    static constexpr std::array<IVec, 6> corner = {IVec{24, 0},  IVec{120, 0}, IVec{120, 24},
                                                   IVec{24, 120}, IVec{0, 120}, IVec{0, 24}};
    static constexpr IVec center{48, 48};
    static IVec midpoint(int pos) {
        IVec a = corner[static_cast<size_t>(pos)];
        IVec b = corner[static_cast<size_t>((pos + 1) % 6)];
        return {(a.x + b.x) / 2, (a.y + b.y) / 2};
    }
    static IVec side_dir(int pos) {
        return corner[static_cast<size_t>((pos + 1) % 6)] - corner[static_cast<size_t>(pos)];
    }

    // the two cells flanking a one-cell
    std::array<int, 2> cells_of(int one_cell) const {
        if (is_trunc_cell(one_cell)) {
            auto [i, j] = edge_pair_from_index(one_cell);
            auto fs = faces_of_edge(i, j);
            return {fs[0], fs[1]};  // hexagon cell ids = face index
        }
        int v = (one_cell - 6) / 3;
        int pos = (one_cell - 6) % 3;
        int f = -1, k = 0;
        for (int x = 0; x < 4; ++x) {
            if (x == v) continue;
            if (k == pos) {
                f = x;
                break;
            }
            ++k;
        }
        return {f, 4 + v};  // hexagon f, triangle cell 4+v
    }

    bool is_zero_edge(int one_cell) const {
        return is_trunc_cell(one_cell) && angles.angle[static_cast<size_t>(one_cell)] == 0;
    }
    bool is_pi_edge(int one_cell) const {
        return is_trunc_cell(one_cell) && angles.angle[static_cast<size_t>(one_cell)] == 1;
    }

    // alpha segments of hexagon h sit at positions 2 and 4; directed away
    // from the center exactly when the face is an in-face.
    bool alpha_away(int h) const { return !out_flag[static_cast<size_t>(h)]; }
};

// Builds the model from the corner angles of one two-in/two-out tet.
// When raw face flags are not supplied, the out pair is taken to be the
// two faces meeting along the lexicographically smaller pi edge.
inline TruncatedModel build_model(const TetAngles& angles,
                                  std::optional<std::array<bool, 4>> flags = std::nullopt) {
    std::vector<int> pis;
    for (int e = 0; e < 6; ++e)
        if (angles.angle[static_cast<size_t>(e)] == 1) pis.push_back(e);
        else if (angles.angle[static_cast<size_t>(e)] != 0)
            throw validation_error("angles must be 0 or 1 (units of pi)");
    if (pis.size() != 2) throw validation_error("a taut tet has exactly two pi edges");
    {
        auto [a, b] = edge_pair_from_index(pis[0]);
        auto [c, d] = edge_pair_from_index(pis[1]);
        if (a == c || a == d || b == c || b == d)
            throw validation_error("the two pi edges must be opposite");
    }

    TruncatedModel m;
    m.angles = angles;
    if (flags) {
        m.out_flag = *flags;
        int outs = 0;
        for (bool o : m.out_flag) outs += o ? 1 : 0;
        if (outs != 2) throw validation_error("flags must be two-in/two-out");
        for (int e = 0; e < 6; ++e) {
            auto [i, j] = edge_pair_from_index(e);
            auto fs = faces_of_edge(i, j);
            int expect = (m.out_flag[static_cast<size_t>(fs[0])] == m.out_flag[static_cast<size_t>(fs[1])]) ? 1 : 0;
            if (expect != angles.angle[static_cast<size_t>(e)])
                throw validation_error("face flags do not induce the given angles");
        }
    } else {
        auto fs = faces_of_edge(edge_pair_from_index(pis[0]).first, edge_pair_from_index(pis[0]).second);
        m.out_flag = {false, false, false, false};
        m.out_flag[static_cast<size_t>(fs[0])] = true;
        m.out_flag[static_cast<size_t>(fs[1])] = true;
    }

    // outward boundary cycles of a positively oriented tetrahedron
    static constexpr std::array<std::array<int, 3>, 4> cycle = {
        std::array<int, 3>{1, 2, 3}, std::array<int, 3>{0, 3, 2}, std::array<int, 3>{0, 1, 3},
        std::array<int, 3>{0, 2, 1}};

    for (int f = 0; f < 4; ++f) {
        auto [u, v, w] = std::tuple<int, int, int>{cycle[static_cast<size_t>(f)][0],
                                                   cycle[static_cast<size_t>(f)][1],
                                                   cycle[static_cast<size_t>(f)][2]};
        // side walk: T_u, E_uv, T_v, E_vw, T_w, E_wu  (triangle side first)
        std::array<int, 6> walk = {tri_side_id(u, f), edge_pair_index(u, v), tri_side_id(v, f),
                                   edge_pair_index(v, w), tri_side_id(w, f), edge_pair_index(w, u)};
        // rotate so the face's pi edge lands at position 0
        int rot = -1;
        for (int k = 1; k < 6; k += 2)
            if (angles.angle[static_cast<size_t>(walk[static_cast<size_t>(k)])] == 1) rot = k;
        if (rot < 0) throw validation_error("hexagon without a pi edge");
        TruncatedModel::Hexagon hx;
        hx.face = f;
        for (int k = 0; k < 6; ++k)
            hx.cell_at[static_cast<size_t>(k)] = walk[static_cast<size_t>((rot + k) % 6)];
        // positions 2 and 4 must now carry the zero edges
        if (!is_trunc_cell(hx.cell_at[2]) || !is_trunc_cell(hx.cell_at[4]) ||
            angles.angle[static_cast<size_t>(hx.cell_at[2])] != 0 ||
            angles.angle[static_cast<size_t>(hx.cell_at[4])] != 0)
            throw std::logic_error("hexagon chart rotation failed");
        m.hex[static_cast<size_t>(f)] = hx;
        for (int k = 0; k < 18; ++k) m.pos_in_hex[static_cast<size_t>(f)][static_cast<size_t>(k)] = -1;
        for (int k = 0; k < 6; ++k)
            m.pos_in_hex[static_cast<size_t>(f)][static_cast<size_t>(hx.cell_at[static_cast<size_t>(k)])] = k;
    }
    return m;
}

inline TruncatedModel build_model(const IdealTriangulation& tri, const Coorientation& coor, int tet) {
    if (tet < 0 || tet >= tri.tet_count()) throw validation_error("tet index out of range");
    if (in_face_count(tri, coor, tet) != 2)
        throw validation_error("tet is not two-in/two-out under this coorientation");
    CornerAngles ca = corner_angles(tri, coor);
    std::array<bool, 4> flags{};
    for (int f = 0; f < 4; ++f) flags[static_cast<size_t>(f)] = coor.out(tri, tet, f);
    return build_model(TetAngles::of_tet(ca, tet), flags);
}

// ---- disc patterns ---------------------------------------------------------

// A closed embedded boundary pattern: one-cell crossings in cyclic order
// plus the cell each connecting arc runs through. crossings[k] leads into
// arc_cells[k] and out through crossings[k+1 mod n].
struct DiscPattern {
    std::vector<int> crossings;
    std::vector<int> arc_cells;
    int cusps = 0;
};

inline int cusp_count(const TruncatedModel& m, const DiscPattern& p) {
    int c = 0;
    for (int x : p.crossings)
        if (m.is_zero_edge(x)) ++c;
    for (int cell : p.arc_cells)
        if (cell >= 4) ++c;  // arc inside a boundary triangle
    return c;
}

// combinatorial area in units of pi
inline int area(const TruncatedModel& m, const DiscPattern& p) { return cusp_count(m, p) - 2; }

namespace detail {

// positions at cyclic distance >= 2 on the hexagon
inline bool hexagon_pair_ok(int a, int b) {
    int d = (a - b + 6) % 6;
    return d >= 2 && d <= 4;
}

// chords {a,b} and {c,d} on a cycle of n positions interleave
inline bool chords_cross(int n, int a, int b, int c, int d) {
    auto between = [&](int lo, int hi, int x) {
        // x strictly between lo and hi walking forward
        int span = (hi - lo + n) % n;
        int off = (x - lo + n) % n;
        return off > 0 && off < span;
    };
    return between(a, b, c) != between(a, b, d);
}

}  // namespace detail

// All embedded admissible patterns with cusp count <= max_cusps, both
// transverse orientations counted, canonically rotated to start at the
// smallest one-cell id.
inline std::vector<DiscPattern> enumerate_admissible_discs(const TruncatedModel& m, int max_cusps) {
    if (max_cusps < 0) throw validation_error("max_cusps must be non-negative");
    std::vector<DiscPattern> out;

    std::array<bool, 18> used{};
    std::vector<int> crossings, arc_cells;
    // chords per hexagon for embeddedness
    std::array<std::vector<std::pair<int, int>>, 4> chords;

    auto cusp_of_crossing = [&](int c) { return m.is_zero_edge(c) ? 1 : 0; };

    std::function<void(int, int, int, int, int)> walk = [&](int start, int start_cell, int cell,
                                                            int in_cell1, int cusps) {
        if (cusps > max_cusps) return;
        if (cell >= 4) {
            // triangle arc: +1 cusp, exits = the two other sides
            if (cusps + 1 > max_cusps) return;
            int v = cell - 4;
            for (int f = 0; f < 4; ++f) {
                if (f == v) continue;
                int exit = tri_side_id(v, f);
                if (exit == in_cell1) continue;
                bool closing = (exit == start);
                if (!closing && (used[static_cast<size_t>(exit)] || exit < start)) continue;
                auto flank = m.cells_of(exit);
                int next_cell = (flank[0] == cell) ? flank[1] : flank[0];
                if (closing) {
                    // the curve must cross `start` from the far side back
                    // into the cell it first entered
                    if (cell != start_cell) continue;
                    DiscPattern p;
                    p.crossings = crossings;
                    p.arc_cells = arc_cells;
                    p.arc_cells.push_back(cell);
                    p.cusps = cusps + 1;
                    out.push_back(std::move(p));
                    continue;
                }
                used[static_cast<size_t>(exit)] = true;
                crossings.push_back(exit);
                arc_cells.push_back(cell);
                walk(start, start_cell, next_cell, exit, cusps + 1 + cusp_of_crossing(exit));
                crossings.pop_back();
                arc_cells.pop_back();
                used[static_cast<size_t>(exit)] = false;
            }
            return;
        }
        // hexagon arc
        int h = cell;
        int pin = m.pos_in_hex[static_cast<size_t>(h)][static_cast<size_t>(in_cell1)];
        for (int pout = 0; pout < 6; ++pout) {
            if (!detail::hexagon_pair_ok(pin, pout)) continue;
            int exit = m.hex[static_cast<size_t>(h)].cell_at[static_cast<size_t>(pout)];
            bool closing = (exit == start);
            if (!closing && (used[static_cast<size_t>(exit)] || exit < start)) continue;
            bool crossing_ok = true;
            for (auto [a, b] : chords[static_cast<size_t>(h)])
                if (detail::chords_cross(6, pin, pout, a, b)) crossing_ok = false;
            if (!crossing_ok) continue;
            auto flank = m.cells_of(exit);
            int next_cell = (flank[0] == h) ? flank[1] : flank[0];
            if (closing) {
                if (cell != start_cell) continue;
                DiscPattern p;
                p.crossings = crossings;
                p.arc_cells = arc_cells;
                p.arc_cells.push_back(cell);
                p.cusps = cusps;
                out.push_back(std::move(p));
                continue;
            }
            used[static_cast<size_t>(exit)] = true;
            crossings.push_back(exit);
            arc_cells.push_back(cell);
            chords[static_cast<size_t>(h)].push_back({pin, pout});
            walk(start, start_cell, next_cell, exit, cusps + cusp_of_crossing(exit));
            chords[static_cast<size_t>(h)].pop_back();
            crossings.pop_back();
            arc_cells.pop_back();
            used[static_cast<size_t>(exit)] = false;
        }
    };

    for (int s = 0; s < 18; ++s) {
        auto flank = m.cells_of(s);
        for (int dir = 0; dir < 2; ++dir) {
            int first_cell = flank[static_cast<size_t>(dir)];
            int other_cell = flank[static_cast<size_t>(1 - dir)];
            used[static_cast<size_t>(s)] = true;
            crossings.assign(1, s);
            arc_cells.clear();
            walk(s, other_cell, first_cell, s, cusp_of_crossing(s));
            used[static_cast<size_t>(s)] = false;
        }
    }
    // deterministic order: by length, then lexicographically
    std::sort(out.begin(), out.end(), [](const DiscPattern& a, const DiscPattern& b) {
        if (a.crossings.size() != b.crossings.size()) return a.crossings.size() < b.crossings.size();
        if (a.crossings != b.crossings) return a.crossings < b.crossings;
        return a.arc_cells < b.arc_cells;
    });
    return out;
}

// ---- the pairing -----------------------------------------------------------

// Per-arc contributions to G . D in quarter units.
struct ArcContribution {
    int arc_index;       // which arc of the pattern
    int hexagon;         // face index
    int quarters;        // signed contribution to G . D, numerator over 4
    int cusp_endpoints;  // endpoints of the arc adjacent to cusps (0..2)
};

struct PairingResult {
    int quarters = 0;  // G . D stored as numerator over 4
    std::vector<ArcContribution> arcs;
};

namespace detail {

// contribution of directed hexagon chord (P -> Q) against the alpha
// segment joining the center to the midpoint at zero-position `zpos`,
// directed away from the center iff `away`; returns quarters of G . D
inline int alpha_contribution(const IVec& P, const IVec& Q, int zpos, bool away) {
    const IVec C = TruncatedModel::center;
    const IVec M = TruncatedModel::midpoint(zpos);
    IVec dA = Q - P;
    IVec dS = away ? (M - C) : (C - M);

    // full overlap: P or Q at M and the chord collinear with the segment
    if ((P == M || Q == M) && cross(dA, M - C) == 0) return 0;

    // endpoint touch at the midpoint
    if (P == M || Q == M) {
        IVec other = (P == M) ? Q : P;
        IVec u = other - M;
        IVec w = C - M;
        IVec t = TruncatedModel::side_dir(zpos);
        int s_ut = sgn(cross(u, t));
        int s_uw = sgn(cross(u, w));
        if (s_ut == 0 || s_uw == 0) throw std::logic_error("degenerate midpoint touch");
        IVec tstar = (s_ut == s_uw) ? t : IVec{-t.x, -t.y};
        int crossing = (sgn(cross(tstar, w)) == -s_uw) ? 1 : 0;
        return crossing * sgn(cross(dA, dS));
    }

    // chord through the center (an interior point of the chord)
    {
        IVec cp = C - P;
        if (cross(dA, cp) == 0) {
            // C strictly between P and Q?
            long long dot = cp.x * (C.x - Q.x) + cp.y * (C.y - Q.y);
            if (dot < 0) return sgn(cross(dA, dS));
            if (dot == 0) throw std::logic_error("chord endpoint at the center");
            return 0;  // collinear but center outside the chord: cannot happen for chords
        }
    }

    // generic segment crossing
    int sC = sgn(cross(dA, C - P));
    int sM = sgn(cross(dA, M - P));
    if (sM == 0) throw std::logic_error("chord through a foreign midpoint");
    if (sC == 0) throw std::logic_error("unhandled center incidence");
    if (sC == sM) return 0;
    IVec dSline = M - C;
    int sP = sgn(cross(dSline, P - C));
    int sQ = sgn(cross(dSline, Q - C));
    if (sP == 0 || sQ == 0) return 0;  // endpoint on the alpha line but off the segment
    if (sP == sQ) return 0;
    return 2 * sgn(cross(dA, dS));
}

}  // namespace detail

inline PairingResult g_dot(const TruncatedModel& m, const DiscPattern& p) {
    PairingResult res;
    int n = static_cast<int>(p.crossings.size());
    for (int k = 0; k < n; ++k) {
        int cell = p.arc_cells[static_cast<size_t>(k)];
        int cin = p.crossings[static_cast<size_t>(k)];
        int cout = p.crossings[static_cast<size_t>((k + 1) % n)];
        if (cell >= 4) continue;  // triangle arcs never meet the alpha arcs
        int h = cell;
        int pin = m.pos_in_hex[static_cast<size_t>(h)][static_cast<size_t>(cin)];
        int pout = m.pos_in_hex[static_cast<size_t>(h)][static_cast<size_t>(cout)];
        if (pin < 0 || pout < 0) throw std::logic_error("arc crossing not on its hexagon");
        IVec P = TruncatedModel::midpoint(pin);
        IVec Q = TruncatedModel::midpoint(pout);
        bool away = m.alpha_away(h);
        int q = detail::alpha_contribution(P, Q, 2, away) + detail::alpha_contribution(P, Q, 4, away);
        int cusp_ends = 0;
        for (int c1 : {cin, cout})
            if (m.is_zero_edge(c1) || !is_trunc_cell(c1)) ++cusp_ends;
        res.arcs.push_back(ArcContribution{k, h, q, cusp_ends});
        res.quarters += q;
    }
    return res;
}

// ---- the Prop 12 suite ------------------------------------------------------

struct Prop12Report {
    int patterns = 0;
    int max_crossings = 0;
    std::map<int, int> patterns_by_cusps;
};

inline std::string pattern_str(const DiscPattern& p) {
    std::string s;
    for (size_t i = 0; i < p.crossings.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p.crossings[i]);
    }
    return s;
}

// Area(D) >= pi |G.D|, |G.D| <= c(D)/2, and the per-arc bound, exact and
// with zero tolerance; throws property_violation on any failure.
inline Prop12Report check_prop12_suite(const TruncatedModel& m, int max_cusps) {
    Prop12Report rep;
    auto discs = enumerate_admissible_discs(m, max_cusps);
    for (const DiscPattern& p : discs) {
        int c = cusp_count(m, p);
        if (c != p.cusps) throw std::logic_error("cusp count mismatch");
        PairingResult pr = g_dot(m, p);
        int a = area(m, p);  // units of pi
        // Area >= pi|G.D|  <=>  4a >= |quarters|
        if (4 * a < std::abs(pr.quarters))
            throw property_violation("area bound violated by pattern " + pattern_str(p));
        // |G.D| <= c/2  <=>  |quarters| <= 2c
        if (std::abs(pr.quarters) > 2 * c)
            throw property_violation("cusp bound violated by pattern " + pattern_str(p));
        for (const ArcContribution& ac : pr.arcs) {
            if (std::abs(ac.quarters) > ac.cusp_endpoints || std::abs(ac.quarters) > 2)
                throw property_violation("per-arc bound violated by pattern " + pattern_str(p));
        }
        ++rep.patterns;
        rep.max_crossings = std::max(rep.max_crossings, static_cast<int>(p.crossings.size()));
        ++rep.patterns_by_cusps[c];
    }
    return rep;
}

}  // namespace tautforge
