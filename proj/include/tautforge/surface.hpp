#pragma once

// Ideal triangulations of punctured surfaces (the ideal region is the
// whole boundary, so every side is glued) and the elementary move.
//
// Side i of a triangle is opposite vertex i and carries the vertex pair
// {0,1,2} \ {i} listed ascending.
//
// The elementary move (flip) at an edge shared by two distinct triangles
// T1, T2 removes the edge and re-diagonalizes the square:
//
//        A                A = apex of T1 (label s1)
//       /|\               C = apex of T2 (label s2)
//      / | \              B, D = the shared edge's endpoints
//     D  |  B                  (T1 labels y1, x1; T2 labels y2, x2)
//      \ | /
//       \|/        old diagonal B-D, new diagonal A-C;
//        C         afterwards U = (A,B,C) sits in T1's slot with labels
//                  0,1,2 = A,B,C and V = (A,C,D) in T2's slot with
//                  labels 0,1,2 = A,C,D.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tautforge/perm.hpp"
#include "tautforge/tri3.hpp"  // parse_error / validation_error

namespace tautforge {

struct SideRef {
    int tri = -1;
    int side = -1;
    bool operator==(const SideRef& o) const { return tri == o.tri && side == o.side; }
    bool operator<(const SideRef& o) const { return tri != o.tri ? tri < o.tri : side < o.side; }
};

struct SGluing {
    SideRef to;
    Perm3 perm;  // source triangle labels -> target labels
};

// The ascending vertex pair of side s.
inline std::array<int, 2> side_vertices(int s) {
    switch (s) {
        case 0: return {1, 2};
        case 1: return {0, 2};
        default: return {0, 1};
    }
}

// Perm3 gluing side s with vertex images (u -> a, v -> b) where (u,v) is
// the ascending pair of side s; the side index maps to the leftover label.
inline Perm3 make_side_perm(int s, int a, int b) {
    auto [u, v] = std::pair<int, int>{side_vertices(s)[0], side_vertices(s)[1]};
    Perm3 p;
    p.img[static_cast<size_t>(u)] = static_cast<uint8_t>(a);
    p.img[static_cast<size_t>(v)] = static_cast<uint8_t>(b);
    p.img[static_cast<size_t>(s)] = static_cast<uint8_t>(3 - a - b);
    return p;
}

class SurfaceIdealTri {
public:
    static SurfaceIdealTri make(std::vector<std::array<SGluing, 3>> gluings) {
        SurfaceIdealTri s;
        s.gluings_ = std::move(gluings);
        s.check_structure();
        return s;
    }

    int triangle_count() const { return static_cast<int>(gluings_.size()); }

    const SGluing& gluing(int tri, int side) const {
        return gluings_[static_cast<size_t>(tri)][static_cast<size_t>(side)];
    }

    // Edges as glued side pairs, ordered by their smaller slot.
    std::vector<std::pair<SideRef, SideRef>> edges() const {
        std::vector<std::pair<SideRef, SideRef>> out;
        for (int t = 0; t < triangle_count(); ++t)
            for (int s = 0; s < 3; ++s) {
                SideRef a{t, s};
                SideRef b = gluing(t, s).to;
                if (b < a) continue;
                out.push_back({a, b});
            }
        std::sort(out.begin(), out.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        return out;
    }

    bool operator==(const SurfaceIdealTri& o) const {
        if (triangle_count() != o.triangle_count()) return false;
        for (int t = 0; t < triangle_count(); ++t)
            for (int s = 0; s < 3; ++s) {
                const SGluing &a = gluing(t, s), &b = o.gluing(t, s);
                if (!(a.to == b.to) || !(a.perm == b.perm)) return false;
            }
        return true;
    }

private:
    std::vector<std::array<SGluing, 3>> gluings_;

    void check_structure() const {
        int n = triangle_count();
        if (n <= 0) throw validation_error("surface triangulation needs at least one triangle");
        for (int t = 0; t < n; ++t)
            for (int s = 0; s < 3; ++s) {
                const SGluing& g = gluings_[static_cast<size_t>(t)][static_cast<size_t>(s)];
                if (g.to.tri < 0 || g.to.tri >= n || g.to.side < 0 || g.to.side > 2)
                    throw validation_error("dangling side gluing");
                if (g.perm[s] != g.to.side)
                    throw validation_error("side permutation does not map side onto target side");
                if (g.to.tri == t && g.to.side == s)
                    throw validation_error("side glued to itself");
                const SGluing& back = gluings_[static_cast<size_t>(g.to.tri)][static_cast<size_t>(g.to.side)];
                if (!(back.to == SideRef{t, s}))
                    throw validation_error("side gluing is not involutive");
                Perm3 comp = g.perm.then(back.perm);
                if (!(comp == Perm3()))
                    throw validation_error("side gluing permutations are not mutually inverse");
            }
    }
};

// ---- flips ------------------------------------------------------------

// Everything the layered construction needs to know about one flip.
struct FlipRecord {
    SurfaceIdealTri after;
    int t1, s1, t2, s2;      // the removed edge's two sides (t1,s1) < (t2,s2)
    int x1, y1;              // B and D in T1 labels
    int x2, y2;              // B and D in T2 labels
    int new_edge_id;         // index of the new diagonal in after.edges()
};

inline FlipRecord apply_flip_detailed(const SurfaceIdealTri& tri, int edge_id) {
    auto es = tri.edges();
    if (edge_id < 0 || edge_id >= static_cast<int>(es.size()))
        throw validation_error("flip edge id out of range");
    auto [sa, sb] = es[static_cast<size_t>(edge_id)];
    if (sa.tri == sb.tri)
        throw validation_error("flip needs the edge's two sides in distinct triangles");

    int t1 = sa.tri, s1 = sa.side, t2 = sb.tri, s2 = sb.side;
    Perm3 P = tri.gluing(t1, s1).perm;  // t1 labels -> t2 labels
    auto sv = side_vertices(s1);
    int x1 = sv[0], y1 = sv[1];
    int x2 = P[x1], y2 = P[y1];

    // Outer ports: (old slot, new slot, images of the new side's ascending
    // vertex pair in the old triangle's labels).
    struct Port {
        SideRef old_slot;
        SideRef new_slot;
        int a, b;  // new side's ascending pair maps to old labels (a, b)
    };
    // U = (A,B,C) in slot t1: A=0,B=1,C=2.  V = (A,C,D) in slot t2: A=0,C=1,D=2.
    //   U side 0 = {B,C} = old T2 side y2   (B -> x2, C -> s2)
    //   U side 2 = {A,B} = old T1 side y1   (A -> s1, B -> x1)
    //   V side 0 = {C,D} = old T2 side x2   (C -> s2, D -> y2)
    //   V side 1 = {A,D} = old T1 side x1   (A -> s1, D -> y1)
    std::array<Port, 4> ports = {{
        {{t2, y2}, {t1, 0}, x2, s2},
        {{t1, y1}, {t1, 2}, s1, x1},
        {{t2, x2}, {t2, 0}, s2, y2},
        {{t1, x1}, {t2, 1}, s1, y1},
    }};

    std::vector<std::array<SGluing, 3>> gl(static_cast<size_t>(tri.triangle_count()));
    for (int t = 0; t < tri.triangle_count(); ++t)
        for (int s = 0; s < 3; ++s) gl[static_cast<size_t>(t)][static_cast<size_t>(s)] = tri.gluing(t, s);

    // the new diagonal: U side 1 <-> V side 2, A -> A, C -> C
    {
        Perm3 d;  // U labels (A,B,C)=(0,1,2) -> V labels (A,C,D)=(0,1,2): A->0, B->2(side idx), C->1
        d.img = {0, 2, 1};
        gl[static_cast<size_t>(t1)][1] = SGluing{SideRef{t2, 2}, d};
        gl[static_cast<size_t>(t2)][2] = SGluing{SideRef{t1, 1}, d.inverse()};
    }

    auto port_by_old = [&](SideRef r) -> const Port* {
        for (const Port& p : ports)
            if (p.old_slot == r) return &p;
        return nullptr;
    };

    for (const Port& p : ports) {
        const SGluing& old_g = tri.gluing(p.old_slot.tri, p.old_slot.side);
        // map: new side labels -> old triangle labels
        Perm3 mu = make_side_perm(p.new_slot.side, p.a, p.b);
        if (const Port* q = port_by_old(old_g.to)) {
            // glued to another port: rewrite both ends through the two mus
            Perm3 mu_q = make_side_perm(q->new_slot.side, q->a, q->b);
            Perm3 m = mu.then(old_g.perm).then(mu_q.inverse());
            gl[static_cast<size_t>(p.new_slot.tri)][static_cast<size_t>(p.new_slot.side)] =
                SGluing{q->new_slot, m};
        } else {
            Perm3 m = mu.then(old_g.perm);
            gl[static_cast<size_t>(p.new_slot.tri)][static_cast<size_t>(p.new_slot.side)] =
                SGluing{old_g.to, m};
            gl[static_cast<size_t>(old_g.to.tri)][static_cast<size_t>(old_g.to.side)] =
                SGluing{p.new_slot, m.inverse()};
        }
    }

    FlipRecord rec{SurfaceIdealTri::make(std::move(gl)), t1, s1, t2, s2, x1, y1, x2, y2, -1};

    auto new_edges = rec.after.edges();
    SideRef diag_lo = std::min(SideRef{t1, 1}, SideRef{t2, 2});
    for (size_t k = 0; k < new_edges.size(); ++k)
        if (new_edges[k].first == diag_lo) rec.new_edge_id = static_cast<int>(k);
    return rec;
}

inline SurfaceIdealTri apply_flip(const SurfaceIdealTri& tri, int edge_id) {
    return apply_flip_detailed(tri, edge_id).after;
}

// ---- canonical form / isomorphism ---------------------------------------

// A relabeling is a triangle bijection plus a Perm3 per triangle. The
// canonical form is the lexicographically least encoding over all BFS
// relabelings (every start triangle, every labeling of it); tree gluings
// are forced to the identity permutation, which pins down each discovered
// triangle's labels. Connected surfaces only.
namespace detail {

inline std::string encode_surface(const SurfaceIdealTri& s) {
    std::ostringstream out;
    for (int t = 0; t < s.triangle_count(); ++t)
        for (int k = 0; k < 3; ++k) {
            const SGluing& g = s.gluing(t, k);
            out << g.to.tri << ' ' << g.to.side << ' ';
            for (int i = 0; i < 3; ++i) out << static_cast<int>(g.perm[i]);
            out << ';';
        }
    return out.str();
}

inline const std::array<Perm3, 6>& all_perm3() {
    static const std::array<Perm3, 6> ps = {Perm3{0, 1, 2}, Perm3{0, 2, 1}, Perm3{1, 0, 2},
                                            Perm3{1, 2, 0}, Perm3{2, 0, 1}, Perm3{2, 1, 0}};
    return ps;
}

}  // namespace detail

struct SurfaceRelabeling {
    std::vector<int> tri_image;   // old tri -> new tri
    std::vector<Perm3> label_map; // old labels -> new labels, per old tri
};

inline SurfaceIdealTri relabel_surface(const SurfaceIdealTri& s, const SurfaceRelabeling& r) {
    std::vector<std::array<SGluing, 3>> gl(static_cast<size_t>(s.triangle_count()));
    for (int t = 0; t < s.triangle_count(); ++t) {
        int nt = r.tri_image[static_cast<size_t>(t)];
        const Perm3& rho = r.label_map[static_cast<size_t>(t)];
        for (int side = 0; side < 3; ++side) {
            const SGluing& g = s.gluing(t, side);
            int nside = rho[side];
            const Perm3& rho_to = r.label_map[static_cast<size_t>(g.to.tri)];
            // new perm: new labels -> old labels -> target old -> target new
            Perm3 np = rho.inverse().then(g.perm).then(rho_to);
            gl[static_cast<size_t>(nt)][static_cast<size_t>(nside)] =
                SGluing{SideRef{r.tri_image[static_cast<size_t>(g.to.tri)], rho_to[g.to.side]}, np};
        }
    }
    return SurfaceIdealTri::make(std::move(gl));
}

inline SurfaceIdealTri canonical_form(const SurfaceIdealTri& s,
                                      SurfaceRelabeling* best_map = nullptr) {
    int n = s.triangle_count();
    std::optional<std::string> best;
    SurfaceIdealTri best_tri = s;
    for (int t0 = 0; t0 < n; ++t0) {
        for (const Perm3& rho0 : detail::all_perm3()) {
            SurfaceRelabeling r;
            r.tri_image.assign(static_cast<size_t>(n), -1);
            r.label_map.assign(static_cast<size_t>(n), Perm3());
            std::queue<int> q;  // old triangle indices in discovery order
            r.tri_image[static_cast<size_t>(t0)] = 0;
            r.label_map[static_cast<size_t>(t0)] = rho0;
            q.push(t0);
            int next = 1;
            while (!q.empty()) {
                int t = q.front();
                q.pop();
                const Perm3 rho = r.label_map[static_cast<size_t>(t)];
                Perm3 rho_inv = rho.inverse();
                for (int cs = 0; cs < 3; ++cs) {
                    int os = rho_inv[cs];
                    const SGluing& g = s.gluing(t, os);
                    if (r.tri_image[static_cast<size_t>(g.to.tri)] < 0) {
                        // force the tree gluing's canonical perm to identity
                        r.tri_image[static_cast<size_t>(g.to.tri)] = next++;
                        r.label_map[static_cast<size_t>(g.to.tri)] = g.perm.inverse().then(rho);
                        q.push(g.to.tri);
                    }
                }
            }
            if (next != n) throw validation_error("canonical_form requires a connected surface");
            SurfaceIdealTri cand = relabel_surface(s, r);
            std::string enc = detail::encode_surface(cand);
            if (!best || enc < *best) {
                best = enc;
                best_tri = cand;
                if (best_map) *best_map = r;
            }
        }
    }
    return best_tri;
}

inline bool isomorphic(const SurfaceIdealTri& a, const SurfaceIdealTri& b) {
    if (a.triangle_count() != b.triangle_count()) return false;
    return canonical_form(a) == canonical_form(b);
}

// ---- flip sequences and BFS ----------------------------------------------

// Simplicial isomorphism onto a base triangulation: triangle images and
// vertex maps (final labels -> base labels).
struct ClosingIso {
    std::vector<int> tri_image;
    std::vector<Perm3> label_map;
};

struct FlipSequence {
    std::vector<int> edge_ids;  // interpreted stepwise against the current triangulation
    std::optional<ClosingIso> closing;
};

// t(S, delta) = -2 chi(S) + |boundary arcs|; with delta the whole
// boundary the arc count is zero.
inline int triangular_number(int euler_char, int boundary_arc_count) {
    return -2 * euler_char + boundary_arc_count;
}

// Shortest flip sequence taking a to b up to relabeling, breadth-first
// over canonical forms with neighbors expanded in edge-index order. Each
// returned edge id refers to the canonical form of the previous step's
// result (re-canonicalize after every flip to replay the path).
inline std::optional<FlipSequence> flip_path_bfs(const SurfaceIdealTri& a, const SurfaceIdealTri& b,
                                                 int max_depth) {
    if (a.triangle_count() != b.triangle_count()) return std::nullopt;
    SurfaceIdealTri ca = canonical_form(a), cb = canonical_form(b);
    std::string target = detail::encode_surface(cb);
    struct Node {
        SurfaceIdealTri tri;
        int depth;
    };
    std::map<std::string, std::pair<std::string, int>> parent;  // enc -> (parent enc, edge id)
    std::string start = detail::encode_surface(ca);
    if (start == target) return FlipSequence{};
    std::queue<Node> q;
    q.push({ca, 0});
    parent[start] = {"", -1};
    while (!q.empty()) {
        Node nd = q.front();
        q.pop();
        if (nd.depth >= max_depth) continue;
        auto es = nd.tri.edges();
        std::string enc = detail::encode_surface(nd.tri);
        for (int e = 0; e < static_cast<int>(es.size()); ++e) {
            if (es[static_cast<size_t>(e)].first.tri == es[static_cast<size_t>(e)].second.tri) continue;
            SurfaceIdealTri next = canonical_form(apply_flip(nd.tri, e));
            std::string nenc = detail::encode_surface(next);
            if (parent.count(nenc)) continue;
            parent[nenc] = {enc, e};
            if (nenc == target) {
                FlipSequence seq;
                std::string cur = nenc;
                while (parent[cur].second >= 0) {
                    seq.edge_ids.push_back(parent[cur].second);
                    cur = parent[cur].first;
                }
                std::reverse(seq.edge_ids.begin(), seq.edge_ids.end());
                return seq;
            }
            q.push({next, nd.depth + 1});
        }
    }
    return std::nullopt;
}

// ---- text format ---------------------------------------------------------
//
//   surf 1
//   tris N
//   tri I: T0 P0 | T1 P1 | T2 P2
//
// Pk is a 2-symbol map: the images of side k's ascending vertex pair.

inline SurfaceIdealTri parse_surface(const std::string& text) {
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
        if (magic != "surf" || ver != 1) throw parse_error(lineno, "expected 'surf 1' header");
    }
    if (!next_line(l)) throw parse_error(lineno, "missing 'tris N' line");
    int n = 0;
    {
        std::istringstream ls(l);
        std::string kw;
        ls >> kw >> n;
        if (kw != "tris" || ls.fail() || n <= 0) throw parse_error(lineno, "expected 'tris N' with N >= 1");
    }
    std::vector<std::array<SGluing, 3>> gl(static_cast<size_t>(n));
    std::vector<bool> have(static_cast<size_t>(n), false);
    while (next_line(l)) {
        std::istringstream ls(l);
        std::string kw;
        int idx = -1;
        char colon = 0;
        ls >> kw >> idx >> colon;
        if (kw != "tri" || ls.fail() || colon != ':' || idx < 0 || idx >= n)
            throw parse_error(lineno, "bad 'tri I:' line");
        if (have[static_cast<size_t>(idx)]) throw parse_error(lineno, "duplicate tri " + std::to_string(idx));
        for (int s = 0; s < 3; ++s) {
            int tgt = -1;
            std::string pstr;
            ls >> tgt >> pstr;
            if (ls.fail()) throw parse_error(lineno, "expected 'T P' for side " + std::to_string(s));
            if (tgt < 0 || tgt >= n) throw parse_error(lineno, "dangling side target");
            if (pstr.size() != 2 || pstr[0] < '0' || pstr[0] > '2' || pstr[1] < '0' || pstr[1] > '2' ||
                pstr[0] == pstr[1])
                throw parse_error(lineno, "side map must be two distinct symbols in 0..2");
            int a = pstr[0] - '0', b = pstr[1] - '0';
            Perm3 p = make_side_perm(s, a, b);
            gl[static_cast<size_t>(idx)][static_cast<size_t>(s)] = SGluing{SideRef{tgt, p[s]}, p};
            if (s < 2) {
                char bar = 0;
                ls >> bar;
                if (bar != '|') throw parse_error(lineno, "expected '|' between sides");
            }
        }
        have[static_cast<size_t>(idx)] = true;
    }
    for (int t = 0; t < n; ++t)
        if (!have[static_cast<size_t>(t)]) throw parse_error(lineno, "missing 'tri " + std::to_string(t) + ":' line");
    try {
        return SurfaceIdealTri::make(std::move(gl));
    } catch (const validation_error& e) {
        throw parse_error(lineno, e.what());
    }
}

inline std::string serialize_surface(const SurfaceIdealTri& s) {
    std::ostringstream out;
    out << "surf 1\n";
    out << "tris " << s.triangle_count() << "\n";
    for (int t = 0; t < s.triangle_count(); ++t) {
        out << "tri " << t << ":";
        for (int side = 0; side < 3; ++side) {
            const SGluing& g = s.gluing(t, side);
            auto sv = side_vertices(side);
            out << " " << g.to.tri << " " << static_cast<int>(g.perm[sv[0]])
                << static_cast<int>(g.perm[sv[1]]);
            if (side < 2) out << " |";
        }
        out << "\n";
    }
    return out.str();
}

// The standard 2-triangle once-punctured torus: a unit square with
// opposite sides identified by translation and the (1,0)->(0,1) diagonal.
// Triangle 0 = (P00, P10, P01), triangle 1 = (P11, P01, P10); side k of
// triangle 0 is glued to side k of triangle 1.
inline SurfaceIdealTri ptorus_base() {
    return parse_surface(
        "surf 1\n"
        "tris 2\n"
        "tri 0: 1 21 | 1 20 | 1 10\n"
        "tri 1: 0 21 | 0 20 | 0 10\n");
}

}  // namespace tautforge
