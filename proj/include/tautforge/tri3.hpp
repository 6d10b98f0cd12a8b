#pragma once

// Ideal triangulations of 3-manifolds: all tetrahedron faces glued in pairs.
//
// Conventions:
//   - Face i of a tetrahedron is the face opposite vertex i, so face i
//     carries the three vertices {0,1,2,3} \ {i}.
//   - A gluing of face f of tet t is a target (tet, face) plus a Perm4
//     sending source vertex labels to target vertex labels; it must send
//     f (the opposite vertex of the source face) to the target face index.
//   - Edge {i,j} of a tet lies in the two faces {0,1,2,3} \ {i,j}.
//
// Everything here is immutable after construction and uses integer
// arithmetic only.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "tautforge/perm.hpp"

namespace tautforge {

struct parse_error : std::runtime_error {
    int line;
    parse_error(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FaceRef {
    int tet = -1;
    int face = -1;
    bool operator==(const FaceRef& o) const { return tet == o.tet && face == o.face; }
    bool operator<(const FaceRef& o) const { return tet != o.tet ? tet < o.tet : face < o.face; }
};

struct Gluing {
    FaceRef to;
    Perm4 perm;  // source vertex labels -> target vertex labels
};

// The two faces of a tet containing edge {i,j}.
inline std::array<int, 2> faces_of_edge(int i, int j) {
    std::array<int, 2> r{};
    int k = 0;
    for (int f = 0; f < 4; ++f)
        if (f != i && f != j) r[static_cast<size_t>(k++)] = f;
    return r;
}

// Index 0..5 for the unordered pair {i,j}, i < j, in the order
// {0,1},{0,2},{0,3},{1,2},{1,3},{2,3}.
inline int edge_pair_index(int i, int j) {
    if (i > j) std::swap(i, j);
    static constexpr int tbl[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return tbl[i][j];
}

inline std::pair<int, int> edge_pair_from_index(int e) {
    static constexpr std::pair<int, int> tbl[6] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    return tbl[e];
}

class IdealTriangulation {
public:
    // Throws validation_error unless the gluing table is a fixed-point-free
    // involution whose permutations match faces simplicially.
    static IdealTriangulation make(std::vector<std::array<Gluing, 4>> gluings) {
        IdealTriangulation tri;
        tri.gluings_ = std::move(gluings);
        tri.check_structure();
        tri.ensure_face_classes();  // eager, so sharing across threads is read-only
        return tri;
    }

    int tet_count() const { return static_cast<int>(gluings_.size()); }

    const Gluing& gluing(int tet, int face) const {
        return gluings_[static_cast<size_t>(tet)][static_cast<size_t>(face)];
    }

    // ---- face classes -------------------------------------------------
    // Faces come in glued pairs; classes are indexed in order of their
    // lexicographically smallest (tet, face) slot.

    int face_class_count() const { return 2 * tet_count(); }

    int face_class(int tet, int face) const {
        ensure_face_classes();
        return face_class_of_[static_cast<size_t>(4 * tet + face)];
    }

    FaceRef face_class_rep(int c) const {
        ensure_face_classes();
        return face_reps_[static_cast<size_t>(c)];
    }

    // The other slot of the pair (for a rep, the glued partner).
    FaceRef partner(int tet, int face) const { return gluing(tet, face).to; }

    bool structurally_equal(const IdealTriangulation& o) const {
        if (tet_count() != o.tet_count()) return false;
        for (int t = 0; t < tet_count(); ++t)
            for (int f = 0; f < 4; ++f) {
                const Gluing &a = gluing(t, f), &b = o.gluing(t, f);
                if (!(a.to == b.to) || !(a.perm == b.perm)) return false;
            }
        return true;
    }

private:
    std::vector<std::array<Gluing, 4>> gluings_;
    mutable std::vector<int> face_class_of_;
    mutable std::vector<FaceRef> face_reps_;

    void check_structure() const {
        int n = tet_count();
        if (n <= 0) throw validation_error("triangulation must have at least one tetrahedron");
        for (int t = 0; t < n; ++t) {
            for (int f = 0; f < 4; ++f) {
                const Gluing& g = gluings_[static_cast<size_t>(t)][static_cast<size_t>(f)];
                if (g.to.tet < 0 || g.to.tet >= n)
                    throw validation_error("dangling gluing target on tet " + std::to_string(t));
                if (g.to.face < 0 || g.to.face > 3)
                    throw validation_error("bad target face on tet " + std::to_string(t));
                if (g.perm[f] != g.to.face)
                    throw validation_error("permutation does not map face " + std::to_string(f) +
                                           " of tet " + std::to_string(t) + " onto target face");
                if (g.to.tet == t && g.to.face == f)
                    throw validation_error("face glued to itself on tet " + std::to_string(t));
                const Gluing& back = gluings_[static_cast<size_t>(g.to.tet)][static_cast<size_t>(g.to.face)];
                if (!(back.to == FaceRef{t, f}) || !back.perm.then(g.perm).is_identity() ||
                    !g.perm.then(back.perm).is_identity())
                    throw validation_error("gluing is not involutive at tet " + std::to_string(t) +
                                           " face " + std::to_string(f));
            }
        }
    }

    void ensure_face_classes() const {
        if (!face_class_of_.empty()) return;
        int n = tet_count();
        face_class_of_.assign(static_cast<size_t>(4 * n), -1);
        for (int t = 0; t < n; ++t)
            for (int f = 0; f < 4; ++f) {
                int slot = 4 * t + f;
                if (face_class_of_[static_cast<size_t>(slot)] >= 0) continue;
                int c = static_cast<int>(face_reps_.size());
                face_reps_.push_back(FaceRef{t, f});
                face_class_of_[static_cast<size_t>(slot)] = c;
                FaceRef p = gluings_[static_cast<size_t>(t)][static_cast<size_t>(f)].to;
                face_class_of_[static_cast<size_t>(4 * p.tet + p.face)] = c;
            }
    }
};

// ---- edge classes -----------------------------------------------------

// One corner of an edge class: edge {i,j} of `tet`, traversed i -> j.
// Walking around the edge, we entered this tet through `enter_face` and
// leave through `exit_face` (the two faces of the tet containing {i,j}).
struct EdgeCorner {
    int tet;
    int i, j;
    int enter_face;
    int exit_face;
};

// The face crossed between corner k and corner k+1 (cyclically), with the
// crossing direction: `agree` is true when the face's coorientation-free
// traversal enters the NEXT tet through a slot flagged by callers; here we
// record only which slot was crossed from which side.
struct EdgeFaceCrossing {
    FaceRef from;  // the (tet, face) slot we exit through
    FaceRef to;    // the glued slot we enter through
};

struct EdgeClass {
    std::vector<EdgeCorner> corners;              // cyclic order
    std::vector<EdgeFaceCrossing> crossings;      // crossings[k] sits between corners[k] and corners[k+1]
    int degree() const { return static_cast<int>(corners.size()); }
};

namespace detail {

// Walks around the edge class of edge {i,j} of `tet`. Returns corners in
// cyclic order. A non-orientable identification reverses the edge
// direction, in which case the walk traverses the circle twice before
// closing and every corner shows up twice; that sets *reversed.
inline EdgeClass walk_edge(const IdealTriangulation& tri, int tet, int i, int j, bool* reversed) {
    EdgeClass ec;
    *reversed = false;
    auto fcs = faces_of_edge(i, j);
    // Deterministic start: exit first through the smaller face index.
    int t = tet, a = i, b = j;
    int enter = fcs[1], exit = fcs[0];
    const int start_t = tet, start_a = i, start_b = j, start_exit = exit;
    int guard = 12 * tri.tet_count() + 2;
    bool closed = false;
    while (guard-- > 0) {
        ec.corners.push_back(EdgeCorner{t, a, b, enter, exit});
        const Gluing& g = tri.gluing(t, exit);
        ec.crossings.push_back(EdgeFaceCrossing{FaceRef{t, exit}, g.to});
        int na = g.perm[a], nb = g.perm[b];
        int nt = g.to.tet;
        int nenter = g.to.face;
        auto nfcs = faces_of_edge(na, nb);
        int nexit = (nfcs[0] == nenter) ? nfcs[1] : nfcs[0];
        t = nt;
        a = na;
        b = nb;
        enter = nenter;
        exit = nexit;
        if (t == start_t && a == start_a && b == start_b && exit == start_exit) {
            closed = true;
            break;
        }
    }
    if (!closed) throw std::logic_error("edge walk failed to close");
    std::vector<int> slots;
    for (const EdgeCorner& c : ec.corners) slots.push_back(6 * c.tet + edge_pair_index(c.i, c.j));
    std::sort(slots.begin(), slots.end());
    if (std::adjacent_find(slots.begin(), slots.end()) != slots.end()) *reversed = true;
    return ec;
}

}  // namespace detail

// All edge classes, canonically ordered by their smallest (tet, edge pair)
// corner. Walk direction errors out on non-orientable identifications.
inline std::vector<EdgeClass> edge_classes(const IdealTriangulation& tri) {
    std::vector<EdgeClass> out;
    std::vector<bool> seen(static_cast<size_t>(6 * tri.tet_count()), false);
    for (int t = 0; t < tri.tet_count(); ++t) {
        for (int e = 0; e < 6; ++e) {
            if (seen[static_cast<size_t>(6 * t + e)]) continue;
            auto [i, j] = edge_pair_from_index(e);
            bool reversed = false;
            EdgeClass ec = detail::walk_edge(tri, t, i, j, &reversed);
            if (reversed)
                throw validation_error("edge identification reverses direction (non-orientable)");
            for (const EdgeCorner& c : ec.corners) {
                size_t slot = static_cast<size_t>(6 * c.tet + edge_pair_index(c.i, c.j));
                if (seen[slot])
                    throw validation_error("inconsistent edge walk: corner visited twice");
                seen[slot] = true;
            }
            out.push_back(std::move(ec));
        }
    }
    return out;
}

// Edge census that needs no orientability: orbits of (tet, edge pair)
// under the face gluings, by union-find.
inline std::vector<int> edge_orbit_sizes(const IdealTriangulation& tri) {
    int n = 6 * tri.tet_count();
    std::vector<int> parent(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) parent[static_cast<size_t>(k)] = k;
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int x, int y) { parent[static_cast<size_t>(find(x))] = find(y); };
    for (int t = 0; t < tri.tet_count(); ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = tri.gluing(t, f);
            for (int e = 0; e < 6; ++e) {
                auto [i, j] = edge_pair_from_index(e);
                if (i == f || j == f) continue;  // edge not in this face
                int ii = g.perm[i], jj = g.perm[j];
                unite(6 * t + e, 6 * g.to.tet + edge_pair_index(ii, jj));
            }
        }
    std::map<int, int> size_of;
    for (int k = 0; k < n; ++k) ++size_of[find(k)];
    std::vector<int> sizes;
    for (auto& [root, sz] : size_of) sizes.push_back(sz);
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

// ---- cusp triangulations (vertex links) --------------------------------

// The link of ideal vertex v in tet t is a triangle whose corners sit on
// the three edges {v,w}, w != v. Gluing face f (v in f) matches it with
// the link triangle of (target tet, perm[v]).
struct CuspTriangulation {
    std::vector<std::pair<int, int>> tris;  // (tet, vertex) in this cusp
    int vertex_count = 0;                   // link-vertex orbits
    int edge_count = 0;
    int euler = 0;
    bool torus = false;
};

struct CuspData {
    std::vector<CuspTriangulation> cusps;
    // cusp_of[(4*tet+v)] = cusp index of ideal vertex v of tet
    std::vector<int> cusp_of;
    // link_vertex_of[(12*tet + 3*v + slot)] where slot indexes w over the
    // ascending list of the three vertices != v: orbit id of the link
    // vertex (t, v, w).
    std::vector<int> link_vertex_of;
    int link_vertex_orbits = 0;
};

namespace detail {

inline int wslot(int v, int w) {
    // index of w in the ascending list of {0..3} \ {v}
    int s = 0;
    for (int x = 0; x < 4; ++x) {
        if (x == v) continue;
        if (x == w) return s;
        ++s;
    }
    return -1;
}

}  // namespace detail

inline CuspData cusp_triangulations(const IdealTriangulation& tri) {
    int n = tri.tet_count();
    CuspData cd;
    cd.cusp_of.assign(static_cast<size_t>(4 * n), -1);
    cd.link_vertex_of.assign(static_cast<size_t>(12 * n), -1);

    // orbits of (tet, v) = cusps
    for (int t = 0; t < n; ++t)
        for (int v = 0; v < 4; ++v) {
            if (cd.cusp_of[static_cast<size_t>(4 * t + v)] >= 0) continue;
            int c = static_cast<int>(cd.cusps.size());
            cd.cusps.push_back({});
            std::vector<std::pair<int, int>> stack{{t, v}};
            cd.cusp_of[static_cast<size_t>(4 * t + v)] = c;
            while (!stack.empty()) {
                auto [ct, cv] = stack.back();
                stack.pop_back();
                cd.cusps[static_cast<size_t>(c)].tris.push_back({ct, cv});
                for (int f = 0; f < 4; ++f) {
                    if (f == cv) continue;
                    const Gluing& g = tri.gluing(ct, f);
                    int nt = g.to.tet, nv = g.perm[cv];
                    if (cd.cusp_of[static_cast<size_t>(4 * nt + nv)] < 0) {
                        cd.cusp_of[static_cast<size_t>(4 * nt + nv)] = c;
                        stack.push_back({nt, nv});
                    }
                }
            }
            std::sort(cd.cusps[static_cast<size_t>(c)].tris.begin(), cd.cusps[static_cast<size_t>(c)].tris.end());
        }

    // orbits of (tet, v, w) = link vertices; (t,v,w) ~ across any gluing of
    // a face containing both v and w.
    int orbit = 0;
    for (int t = 0; t < n; ++t)
        for (int v = 0; v < 4; ++v)
            for (int w = 0; w < 4; ++w) {
                if (w == v) continue;
                size_t key = static_cast<size_t>(12 * t + 3 * v + detail::wslot(v, w));
                if (cd.link_vertex_of[key] >= 0) continue;
                int id = orbit++;
                std::vector<std::tuple<int, int, int>> stack{{t, v, w}};
                cd.link_vertex_of[key] = id;
                while (!stack.empty()) {
                    auto [ct, cv, cw] = stack.back();
                    stack.pop_back();
                    for (int f = 0; f < 4; ++f) {
                        if (f == cv || f == cw) continue;
                        const Gluing& g = tri.gluing(ct, f);
                        int nt = g.to.tet, nv = g.perm[cv], nw = g.perm[cw];
                        size_t nkey = static_cast<size_t>(12 * nt + 3 * nv + detail::wslot(nv, nw));
                        if (cd.link_vertex_of[nkey] < 0) {
                            cd.link_vertex_of[nkey] = id;
                            stack.push_back({nt, nv, nw});
                        }
                    }
                }
            }
    cd.link_vertex_orbits = orbit;

    // per-cusp counts: F triangles, E = 3F/2 sides, V link-vertex orbits
    for (size_t c = 0; c < cd.cusps.size(); ++c) {
        CuspTriangulation& cusp = cd.cusps[c];
        int F = static_cast<int>(cusp.tris.size());
        std::vector<bool> seen_orbit(static_cast<size_t>(orbit), false);
        int V = 0;
        for (auto [t, v] : cusp.tris)
            for (int w = 0; w < 4; ++w) {
                if (w == v) continue;
                int id = cd.link_vertex_of[static_cast<size_t>(12 * t + 3 * v + detail::wslot(v, w))];
                if (!seen_orbit[static_cast<size_t>(id)]) {
                    seen_orbit[static_cast<size_t>(id)] = true;
                    ++V;
                }
            }
        cusp.vertex_count = V;
        cusp.edge_count = (3 * F) / 2;
        cusp.euler = V - cusp.edge_count + F;
        cusp.torus = (cusp.euler == 0);
    }
    return cd;
}

// ---- validation ---------------------------------------------------------

struct ValidationReport {
    bool orientable = false;
    bool connected = false;
    int edge_class_count = 0;
    std::vector<int> edge_degrees;  // ascending
    int cusp_count = 0;
    std::vector<int> cusp_eulers;
    bool all_cusps_tori = false;
};

// Orientability: each tet gets a flip bit; a gluing with permutation P
// forces bit(t) XOR bit(t') == parity(P) XOR 1 (with all tets positively
// oriented every gluing permutation is odd). 2-colorable <=> orientable.
inline bool is_orientable(const IdealTriangulation& tri) {
    int n = tri.tet_count();
    std::vector<int> color(static_cast<size_t>(n), -1);
    for (int s = 0; s < n; ++s) {
        if (color[static_cast<size_t>(s)] >= 0) continue;
        color[static_cast<size_t>(s)] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int f = 0; f < 4; ++f) {
                const Gluing& g = tri.gluing(t, f);
                int need = color[static_cast<size_t>(t)] ^ (g.perm.odd() ? 0 : 1);
                int& c = color[static_cast<size_t>(g.to.tet)];
                if (c < 0) {
                    c = need;
                    stack.push_back(g.to.tet);
                } else if (c != need) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline bool is_connected(const IdealTriangulation& tri) {
    int n = tri.tet_count();
    std::vector<bool> seen(static_cast<size_t>(n), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int cnt = 1;
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int f = 0; f < 4; ++f) {
            int u = tri.gluing(t, f).to.tet;
            if (!seen[static_cast<size_t>(u)]) {
                seen[static_cast<size_t>(u)] = true;
                ++cnt;
                stack.push_back(u);
            }
        }
    }
    return cnt == n;
}

inline ValidationReport validate(const IdealTriangulation& tri) {
    ValidationReport r;
    r.orientable = is_orientable(tri);
    r.connected = is_connected(tri);
    r.edge_degrees = edge_orbit_sizes(tri);
    r.edge_class_count = static_cast<int>(r.edge_degrees.size());
    CuspData cd = cusp_triangulations(tri);
    r.cusp_count = static_cast<int>(cd.cusps.size());
    r.all_cusps_tori = true;
    for (const auto& c : cd.cusps) {
        r.cusp_eulers.push_back(c.euler);
        if (!c.torus) r.all_cusps_tori = false;
    }
    return r;
}

// ---- text format v1 -----------------------------------------------------
//
//   tautri 1
//   tets N
//   tet I: T0 P0 | T1 P1 | T2 P2 | T3 P3
//   coor I: s0 s1 s2 s3        (optional block, sk in {+,-})
//
// '#' starts a comment line. Serialization is canonical: tets ascending,
// faces 0..3, single spaces, trailing newline.

struct ParsedFile {
    IdealTriangulation tri;
    // Raw out/in flags per (tet, face) from the optional coor block.
    std::optional<std::vector<std::array<bool, 4>>> coor_out;
};

inline ParsedFile parse_triangulation(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto next_line = [&](std::string& out) -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            size_t pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos) continue;
            if (line[pos] == '#') continue;
            out = line;
            return true;
        }
        return false;
    };

    std::string l;
    if (!next_line(l)) throw parse_error(lineno, "empty file");
    {
        std::istringstream ls(l);
        std::string magic;
        int ver = 0;
        ls >> magic >> ver;
        if (magic != "tautri" || ver != 1) throw parse_error(lineno, "expected 'tautri 1' header");
    }
    if (!next_line(l)) throw parse_error(lineno, "missing 'tets N' line");
    int n = 0;
    {
        std::istringstream ls(l);
        std::string kw;
        ls >> kw >> n;
        if (kw != "tets" || ls.fail() || n <= 0) throw parse_error(lineno, "expected 'tets N' with N >= 1");
    }

    std::vector<std::array<Gluing, 4>> gl(static_cast<size_t>(n));
    std::vector<bool> have_tet(static_cast<size_t>(n), false);
    std::vector<std::array<bool, 4>> coor(static_cast<size_t>(n));
    std::vector<bool> have_coor(static_cast<size_t>(n), false);

    while (next_line(l)) {
        std::istringstream ls(l);
        std::string kw;
        ls >> kw;
        if (kw == "tet") {
            int idx = -1;
            char colon = 0;
            ls >> idx >> colon;
            if (ls.fail() || colon != ':' || idx < 0 || idx >= n)
                throw parse_error(lineno, "bad 'tet I:' line");
            if (have_tet[static_cast<size_t>(idx)]) throw parse_error(lineno, "duplicate tet " + std::to_string(idx));
            for (int f = 0; f < 4; ++f) {
                int tgt = -1;
                std::string pstr;
                ls >> tgt >> pstr;
                if (ls.fail()) throw parse_error(lineno, "expected 'T P' for face " + std::to_string(f));
                if (tgt < 0 || tgt >= n) throw parse_error(lineno, "dangling gluing target " + std::to_string(tgt));
                Perm4 p;
                try {
                    p = Perm4::parse(pstr);
                } catch (const std::invalid_argument& e) {
                    throw parse_error(lineno, e.what());
                }
                gl[static_cast<size_t>(idx)][static_cast<size_t>(f)] = Gluing{FaceRef{tgt, p[f]}, p};
                if (f < 3) {
                    char bar = 0;
                    ls >> bar;
                    if (bar != '|') throw parse_error(lineno, "expected '|' between faces");
                }
            }
            have_tet[static_cast<size_t>(idx)] = true;
        } else if (kw == "coor") {
            int idx = -1;
            char colon = 0;
            ls >> idx >> colon;
            if (ls.fail() || colon != ':' || idx < 0 || idx >= n)
                throw parse_error(lineno, "bad 'coor I:' line");
            for (int f = 0; f < 4; ++f) {
                std::string s;
                ls >> s;
                if (s == "+")
                    coor[static_cast<size_t>(idx)][static_cast<size_t>(f)] = true;
                else if (s == "-")
                    coor[static_cast<size_t>(idx)][static_cast<size_t>(f)] = false;
                else
                    throw parse_error(lineno, "coor sign must be + or -");
            }
            have_coor[static_cast<size_t>(idx)] = true;
        } else {
            throw parse_error(lineno, "unrecognized line: " + l);
        }
    }
    for (int t = 0; t < n; ++t)
        if (!have_tet[static_cast<size_t>(t)])
            throw parse_error(lineno, "missing 'tet " + std::to_string(t) + ":' line");

    ParsedFile pf;
    try {
        pf.tri = IdealTriangulation::make(std::move(gl));
    } catch (const validation_error& e) {
        throw parse_error(lineno, e.what());
    }
    int ncoor = 0;
    for (int t = 0; t < n; ++t) ncoor += have_coor[static_cast<size_t>(t)] ? 1 : 0;
    if (ncoor == n)
        pf.coor_out = coor;
    else if (ncoor != 0)
        throw parse_error(lineno, "coor block must cover every tet or be absent");
    return pf;
}

inline std::string serialize(const IdealTriangulation& tri,
                             const std::optional<std::vector<std::array<bool, 4>>>& coor_out = std::nullopt) {
    std::ostringstream out;
    out << "tautri 1\n";
    out << "tets " << tri.tet_count() << "\n";
    for (int t = 0; t < tri.tet_count(); ++t) {
        out << "tet " << t << ":";
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = tri.gluing(t, f);
            out << " " << g.to.tet << " " << g.perm.str();
            if (f < 3) out << " |";
        }
        out << "\n";
    }
    if (coor_out) {
        for (int t = 0; t < tri.tet_count(); ++t) {
            out << "coor " << t << ":";
            for (int f = 0; f < 4; ++f)
                out << " " << ((*coor_out)[static_cast<size_t>(t)][static_cast<size_t>(f)] ? "+" : "-");
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace tautforge
