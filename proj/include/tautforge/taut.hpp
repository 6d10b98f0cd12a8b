#pragma once

// Transverse orientations (coorientations) on the faces of an ideal
// triangulation and the taut conditions.
//
// A coorientation is stored per face class, so glued consistency holds by
// construction: the bit says whether the orientation points out of the
// representative slot's tetrahedron. The induced interior angle at an
// edge corner of a tet is pi exactly when the corner's two faces carry
// equal in/out flags there, 0 otherwise. Angles are integers in units of
// pi throughout.
//
// A structure is taut when every tet has two in-faces and two out-faces
// and every edge class has exactly two pi corners. Proposition-9 style
// checking replaces "exactly two" by "at least one" and is only valid
// when every cusp is a torus.

#include <cstdint>
#include <string>
#include <vector>

#include "tautforge/tri3.hpp"

namespace tautforge {

class Coorientation {
public:
    Coorientation() = default;
    Coorientation(const IdealTriangulation& tri, std::vector<bool> out_of_rep)
        : bits_(std::move(out_of_rep)) {
        if (static_cast<int>(bits_.size()) != tri.face_class_count())
            throw validation_error("coorientation needs one bit per face class");
    }

    // true when the transverse orientation points out of tet `t` across
    // face `f`.
    bool out(const IdealTriangulation& tri, int t, int f) const {
        int c = tri.face_class(t, f);
        FaceRef rep = tri.face_class_rep(c);
        bool is_rep = (rep.tet == t && rep.face == f);
        return is_rep ? bits_[static_cast<size_t>(c)] : !bits_[static_cast<size_t>(c)];
    }

    const std::vector<bool>& bits() const { return bits_; }

    Coorientation negated() const {
        Coorientation c = *this;
        for (size_t k = 0; k < c.bits_.size(); ++k) c.bits_[k] = !c.bits_[k];
        return c;
    }

    bool operator==(const Coorientation& o) const { return bits_ == o.bits_; }
    bool operator<(const Coorientation& o) const { return bits_ < o.bits_; }

    // Raw per-(tet,face) out flags, e.g. for the file format's coor block.
    std::vector<std::array<bool, 4>> raw_flags(const IdealTriangulation& tri) const {
        std::vector<std::array<bool, 4>> r(static_cast<size_t>(tri.tet_count()));
        for (int t = 0; t < tri.tet_count(); ++t)
            for (int f = 0; f < 4; ++f) r[static_cast<size_t>(t)][static_cast<size_t>(f)] = out(tri, t, f);
        return r;
    }

    // Builds from raw flags, checking glued consistency (out on one slot,
    // in on its partner).
    static Coorientation from_raw_flags(const IdealTriangulation& tri,
                                        const std::vector<std::array<bool, 4>>& flags) {
        if (static_cast<int>(flags.size()) != tri.tet_count())
            throw validation_error("coor flags must cover every tet");
        std::vector<bool> bits(static_cast<size_t>(tri.face_class_count()));
        for (int c = 0; c < tri.face_class_count(); ++c) {
            FaceRef rep = tri.face_class_rep(c);
            bits[static_cast<size_t>(c)] =
                flags[static_cast<size_t>(rep.tet)][static_cast<size_t>(rep.face)];
        }
        Coorientation coor(tri, bits);
        for (int t = 0; t < tri.tet_count(); ++t)
            for (int f = 0; f < 4; ++f) {
                FaceRef p = tri.partner(t, f);
                bool a = flags[static_cast<size_t>(t)][static_cast<size_t>(f)];
                bool b = flags[static_cast<size_t>(p.tet)][static_cast<size_t>(p.face)];
                if (a == b)
                    throw validation_error("coor block not glued-consistent at tet " +
                                           std::to_string(t) + " face " + std::to_string(f));
            }
        return coor;
    }

private:
    std::vector<bool> bits_;
};

// Angles in units of pi: angle(t, {i,j}) is 0 or 1.
struct CornerAngles {
    // indexed [tet][edge_pair_index]
    std::vector<std::array<int, 6>> angle;

    int at(int tet, int i, int j) const {
        return angle[static_cast<size_t>(tet)][static_cast<size_t>(edge_pair_index(i, j))];
    }
};

inline CornerAngles corner_angles(const IdealTriangulation& tri, const Coorientation& coor) {
    CornerAngles ca;
    ca.angle.resize(static_cast<size_t>(tri.tet_count()));
    for (int t = 0; t < tri.tet_count(); ++t)
        for (int e = 0; e < 6; ++e) {
            auto [i, j] = edge_pair_from_index(e);
            auto fcs = faces_of_edge(i, j);
            bool a = coor.out(tri, t, fcs[0]);
            bool b = coor.out(tri, t, fcs[1]);
            ca.angle[static_cast<size_t>(t)][static_cast<size_t>(e)] = (a == b) ? 1 : 0;
        }
    return ca;
}

inline int in_face_count(const IdealTriangulation& tri, const Coorientation& coor, int tet) {
    int cnt = 0;
    for (int f = 0; f < 4; ++f)
        if (!coor.out(tri, tet, f)) ++cnt;
    return cnt;
}

// Every tet has precisely two faces oriented inwards.
inline bool check_tet_condition(const IdealTriangulation& tri, const Coorientation& coor) {
    for (int t = 0; t < tri.tet_count(); ++t)
        if (in_face_count(tri, coor, t) != 2) return false;
    return true;
}

inline int edge_pi_count(const EdgeClass& ec, const CornerAngles& ca) {
    int cnt = 0;
    for (const EdgeCorner& c : ec.corners) cnt += ca.at(c.tet, c.i, c.j);
    return cnt;
}

// Full taut check: tet condition plus exactly two pi corners around every
// edge class.
inline bool check_full_taut(const IdealTriangulation& tri, const Coorientation& coor,
                            const std::vector<EdgeClass>& edges) {
    if (!check_tet_condition(tri, coor)) return false;
    CornerAngles ca = corner_angles(tri, coor);
    for (const EdgeClass& ec : edges)
        if (edge_pi_count(ec, ca) != 2) return false;
    return true;
}

inline bool check_full_taut(const IdealTriangulation& tri, const Coorientation& coor) {
    return check_full_taut(tri, coor, edge_classes(tri));
}

// Weaker per-edge condition (at least one non-cusped pair), valid as a
// tautness certificate only when every cusp is a torus; callers must have
// verified that. Throws if they have not.
inline bool check_prop9(const IdealTriangulation& tri, const Coorientation& coor,
                        const std::vector<EdgeClass>& edges, const ValidationReport& report) {
    if (!report.all_cusps_tori)
        throw validation_error("prop9 check requires every cusp to be a torus");
    if (!check_tet_condition(tri, coor)) return false;
    CornerAngles ca = corner_angles(tri, coor);
    for (const EdgeClass& ec : edges)
        if (edge_pi_count(ec, ca) < 1) return false;
    return true;
}

inline bool check_prop9(const IdealTriangulation& tri, const Coorientation& coor) {
    return check_prop9(tri, coor, edge_classes(tri), validate(tri));
}

// ---- enumeration ---------------------------------------------------------

// All coorientations passing check_full_taut, in lexicographic order of
// their face-class bit vectors (false < true). Exhaustive backtracking
// over face classes with per-tet and per-edge pruning.
inline std::vector<Coorientation> enumerate_taut(const IdealTriangulation& tri) {
    ValidationReport rep = validate(tri);
    if (!rep.orientable) throw validation_error("enumerate_taut requires an orientable triangulation");
    if (!rep.connected) throw validation_error("enumerate_taut requires a connected triangulation");
    if (!rep.all_cusps_tori) throw validation_error("enumerate_taut requires torus cusps");

    std::vector<EdgeClass> edges = edge_classes(tri);
    int nc = tri.face_class_count();

    // Per tet, the face classes of its four faces; a face class can show
    // up twice on one tet (both slots of the pair).
    struct TetView {
        std::array<int, 4> cls;
        std::array<bool, 4> flip;  // true when this slot is the non-rep slot
    };
    std::vector<TetView> tets(static_cast<size_t>(tri.tet_count()));
    for (int t = 0; t < tri.tet_count(); ++t)
        for (int f = 0; f < 4; ++f) {
            int c = tri.face_class(t, f);
            FaceRef repr = tri.face_class_rep(c);
            tets[static_cast<size_t>(t)].cls[static_cast<size_t>(f)] = c;
            tets[static_cast<size_t>(t)].flip[static_cast<size_t>(f)] =
                !(repr.tet == t && repr.face == f);
        }

    std::vector<int> assigned(static_cast<size_t>(nc), -1);  // -1 / 0 / 1 (rep-out bit)
    std::vector<Coorientation> result;

    auto slot_out = [&](int t, int f) -> int {
        const TetView& tv = tets[static_cast<size_t>(t)];
        int bit = assigned[static_cast<size_t>(tv.cls[static_cast<size_t>(f)])];
        if (bit < 0) return -1;
        return tv.flip[static_cast<size_t>(f)] ? 1 - bit : bit;
    };

    // Prune on any tet whose decided faces already force more than two
    // in-faces or more than two out-faces, and on any edge whose decided
    // corners already carry more than two pi angles (or all decided and
    // not exactly two).
    auto consistent = [&]() -> bool {
        for (int t = 0; t < tri.tet_count(); ++t) {
            int ins = 0, outs = 0, undecided = 0;
            for (int f = 0; f < 4; ++f) {
                int o = slot_out(t, f);
                if (o < 0)
                    ++undecided;
                else if (o == 1)
                    ++outs;
                else
                    ++ins;
            }
            if (ins > 2 || outs > 2) return false;
            (void)undecided;
        }
        for (const EdgeClass& ec : edges) {
            int pi = 0, undecided = 0;
            for (const EdgeCorner& c : ec.corners) {
                auto fcs = faces_of_edge(c.i, c.j);
                int a = slot_out(c.tet, fcs[0]);
                int b = slot_out(c.tet, fcs[1]);
                if (a < 0 || b < 0)
                    ++undecided;
                else if (a == b)
                    ++pi;
            }
            if (pi > 2) return false;
            if (undecided == 0 && pi != 2) return false;
        }
        return true;
    };

    std::function<void(int)> go = [&](int c) {
        if (!consistent()) return;
        if (c == nc) {
            std::vector<bool> bits(static_cast<size_t>(nc));
            for (int k = 0; k < nc; ++k) bits[static_cast<size_t>(k)] = assigned[static_cast<size_t>(k)] == 1;
            result.emplace_back(tri, bits);
            return;
        }
        for (int v = 0; v <= 1; ++v) {
            assigned[static_cast<size_t>(c)] = v;
            go(c + 1);
        }
        assigned[static_cast<size_t>(c)] = -1;
    };
    go(0);
    return result;
}

// ---- dual cycle -----------------------------------------------------------

// Oriented 4-valent graph: one node per tet, one directed edge per face
// class, pointing from the tet the coorientation leaves to the tet it
// enters.
struct DualCycle {
    struct Edge {
        int face_class;
        int from_tet;
        int to_tet;
        bool along = true;  // directed with the coorientation
    };
    std::vector<Edge> edges;  // indexed by face class
    int node_count = 0;
};

inline DualCycle dual_cycle(const IdealTriangulation& tri, const Coorientation& coor) {
    if (!check_full_taut(tri, coor)) throw validation_error("dual_cycle requires a taut structure");
    DualCycle g;
    g.node_count = tri.tet_count();
    for (int c = 0; c < tri.face_class_count(); ++c) {
        FaceRef rep = tri.face_class_rep(c);
        FaceRef other = tri.partner(rep.tet, rep.face);
        bool rep_out = coor.out(tri, rep.tet, rep.face);
        int from = rep_out ? rep.tet : other.tet;
        int to = rep_out ? other.tet : rep.tet;
        g.edges.push_back({c, from, to, true});
    }
    return g;
}

// ---- cusp angle profile ----------------------------------------------------

// Number of pi interior angles at each vertex of each cusp triangulation.
// Indexed by link-vertex orbit; for a taut structure every entry is 2.
struct CuspAngleProfile {
    std::vector<int> pi_count;          // per link-vertex orbit
    std::vector<int> cusp_of_vertex;    // cusp index per orbit
};

inline CuspAngleProfile cusp_angle_profile(const IdealTriangulation& tri, const Coorientation& coor,
                                           const CuspData& cd) {
    CornerAngles ca = corner_angles(tri, coor);
    CuspAngleProfile p;
    p.pi_count.assign(static_cast<size_t>(cd.link_vertex_orbits), 0);
    p.cusp_of_vertex.assign(static_cast<size_t>(cd.link_vertex_orbits), -1);
    for (int t = 0; t < tri.tet_count(); ++t)
        for (int v = 0; v < 4; ++v)
            for (int w = 0; w < 4; ++w) {
                if (w == v) continue;
                int id = cd.link_vertex_of[static_cast<size_t>(12 * t + 3 * v + detail::wslot(v, w))];
                p.pi_count[static_cast<size_t>(id)] += ca.at(t, v, w);
                p.cusp_of_vertex[static_cast<size_t>(id)] = cd.cusp_of[static_cast<size_t>(4 * t + v)];
            }
    return p;
}

inline CuspAngleProfile cusp_angle_profile(const IdealTriangulation& tri, const Coorientation& coor) {
    return cusp_angle_profile(tri, coor, cusp_triangulations(tri));
}

}  // namespace tautforge
