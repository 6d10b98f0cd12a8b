#pragma once

// The layered mapping-torus construction: one taut tetrahedron per
// elementary move of the fiber, top layer glued to the bottom through the
// closing isomorphism.
//
// Each flip's square A,B,C,D (see surface.hpp) becomes an ideal
// tetrahedron with vertices 0=A, 1=B, 2=C, 3=D:
//
//   face 2 = (A,B,D) covers the pre-flip triangle T1   } bottom, oriented in
//   face 0 = (B,C,D) covers the pre-flip triangle T2   }
//   face 3 = (A,B,C) carries the post-flip triangle U  } top, oriented out
//   face 1 = (A,C,D) carries the post-flip triangle V  }
//
// so the edge B-D shared by the two in-faces (the flipped-away diagonal)
// and the edge A-C shared by the two out-faces (the new diagonal) get
// interior angle pi, and every layered tetrahedron is two-in/two-out on
// its own.
//
// Triangles of the fiber never touched by any flip do not get a
// tetrahedron; their product region collapses and the closing map chains
// through them. A triangle orbit entirely untouched by flips leaves no
// tetrahedron to attach to and is reported as a construction failure.

#include <optional>
#include <string>
#include <vector>

#include "tautforge/ptorus.hpp"
#include "tautforge/surface.hpp"
#include "tautforge/taut.hpp"
#include "tautforge/tri3.hpp"

namespace tautforge {

struct MonodromySpec {
    SurfaceIdealTri base;
    FlipSequence flips;  // closing isomorphism required
};

// Verifies that `iso` is a simplicial isomorphism from `from` onto `to`.
inline void verify_closing_iso(const SurfaceIdealTri& from, const SurfaceIdealTri& to,
                               const ClosingIso& iso) {
    int n = from.triangle_count();
    if (to.triangle_count() != n || static_cast<int>(iso.tri_image.size()) != n ||
        static_cast<int>(iso.label_map.size()) != n)
        throw construction_error("closing isomorphism has the wrong shape");
    std::vector<bool> hit(static_cast<size_t>(n), false);
    for (int x = 0; x < n; ++x) {
        int y = iso.tri_image[static_cast<size_t>(x)];
        if (y < 0 || y >= n || hit[static_cast<size_t>(y)])
            throw construction_error("closing isomorphism is not a triangle bijection");
        hit[static_cast<size_t>(y)] = true;
    }
    for (int x = 0; x < n; ++x) {
        const Perm3& rho = iso.label_map[static_cast<size_t>(x)];
        int y = iso.tri_image[static_cast<size_t>(x)];
        for (int s = 0; s < 3; ++s) {
            const SGluing& g = from.gluing(x, s);
            const Perm3& rho2 = iso.label_map[static_cast<size_t>(g.to.tri)];
            const SGluing& h = to.gluing(y, rho[s]);
            if (!(h.to == SideRef{iso.tri_image[static_cast<size_t>(g.to.tri)], rho2[g.to.side]}))
                throw construction_error("closing map does not respect gluings");
            Perm3 expect = rho.inverse().then(g.perm).then(rho2);
            if (!(h.perm == expect))
                throw construction_error("closing map does not respect gluing permutations");
        }
    }
}

class LayeredComplex {
public:
    IdealTriangulation tri;
    Coorientation coor;
    int flip_count = 0;

    // Weight vector of the layer-k fiber (k = 0..flip_count; the top layer
    // resolves to the same weights as layer 0 through the closing map).
    std::vector<long long> fiber_weights(int layer_index) const {
        if (layer_index < 0 || layer_index > flip_count)
            throw validation_error("layer index out of range");
        std::vector<long long> w(static_cast<size_t>(tri.face_class_count()), 0);
        for (int fc : layer_faces_[static_cast<size_t>(layer_index)])
            ++w[static_cast<size_t>(fc)];
        return w;
    }

    // face classes (with multiplicity) realizing each layer
    std::vector<std::vector<int>> layer_faces_;
};

namespace detail {

// correspondence from a layer triangle to a tet face: triangle label u
// sits at tet vertex map3[u]
struct TetFaceRef {
    int tet = -1;
    int face = -1;
    std::array<int, 3> map3{};  // triangle labels -> tet vertex labels
};

struct LayerRef {
    bool realized = false;
    TetFaceRef tf;        // when realized
    int base_tri = -1;    // when not: which base triangle this still is
    Perm3 to_base;        // cur labels -> base labels
};

}  // namespace detail

inline LayeredComplex build_mapping_torus(const MonodromySpec& spec) {
    if (spec.flips.edge_ids.empty())
        throw construction_error("mapping torus needs a non-empty flip sequence");
    if (!spec.flips.closing)
        throw construction_error("mapping torus needs a closing isomorphism");

    const SurfaceIdealTri& base = spec.base;
    int T = base.triangle_count();
    int n = static_cast<int>(spec.flips.edge_ids.size());

    std::vector<std::array<std::optional<Gluing>, 4>> gl(static_cast<size_t>(n));
    auto add_gluing = [&](int at, int af, int bt, int bf, const Perm4& p) {
        if (p[af] != bf) throw std::logic_error("layering: bad gluing perm");
        if (gl[static_cast<size_t>(at)][static_cast<size_t>(af)] ||
            gl[static_cast<size_t>(bt)][static_cast<size_t>(bf)])
            throw construction_error("layering: face glued twice (degenerate monodromy)");
        gl[static_cast<size_t>(at)][static_cast<size_t>(af)] = Gluing{FaceRef{bt, bf}, p};
        gl[static_cast<size_t>(bt)][static_cast<size_t>(bf)] = Gluing{FaceRef{at, af}, p.inverse()};
    };

    SurfaceIdealTri cur = base;
    std::vector<detail::LayerRef> ref(static_cast<size_t>(T));
    for (int t = 0; t < T; ++t) {
        ref[static_cast<size_t>(t)].base_tri = t;
        ref[static_cast<size_t>(t)].to_base = Perm3();
    }
    // base_slot[b]: the tet face realizing base triangle b from below
    std::vector<std::optional<detail::TetFaceRef>> base_slot(static_cast<size_t>(T));
    auto base_map3 = [](const Perm3& to_base_inv, const std::array<int, 3>& tri_map) {
        // base labels -> cur labels -> tet labels
        std::array<int, 3> r{};
        for (int u = 0; u < 3; ++u) r[static_cast<size_t>(u)] = tri_map[to_base_inv[u]];
        return r;
    };

    std::vector<std::vector<detail::LayerRef>> layers;
    layers.push_back(ref);

    for (int k = 0; k < n; ++k) {
        FlipRecord rec = apply_flip_detailed(cur, spec.flips.edge_ids[static_cast<size_t>(k)]);
        // correspondences of the four faces of tet k
        std::array<int, 3> mu1{};  // T1 labels -> tet: s1->0, x1->1, y1->3
        mu1[static_cast<size_t>(rec.s1)] = 0;
        mu1[static_cast<size_t>(rec.x1)] = 1;
        mu1[static_cast<size_t>(rec.y1)] = 3;
        std::array<int, 3> mu2{};  // T2 labels -> tet: s2->2, x2->1, y2->3
        mu2[static_cast<size_t>(rec.s2)] = 2;
        mu2[static_cast<size_t>(rec.x2)] = 1;
        mu2[static_cast<size_t>(rec.y2)] = 3;

        auto attach_bottom = [&](int face, const std::array<int, 3>& mu, int layer_tri) {
            const detail::LayerRef& r = ref[static_cast<size_t>(layer_tri)];
            if (r.realized) {
                // tet-k face <-> earlier tet face
                Perm4 p;
                std::array<bool, 4> set{false, false, false, false};
                for (int u = 0; u < 3; ++u) {
                    p.img[static_cast<size_t>(mu[static_cast<size_t>(u)])] =
                        static_cast<uint8_t>(r.tf.map3[static_cast<size_t>(u)]);
                    set[static_cast<size_t>(mu[static_cast<size_t>(u)])] = true;
                }
                for (int v = 0; v < 4; ++v)
                    if (!set[static_cast<size_t>(v)]) p.img[static_cast<size_t>(v)] = static_cast<uint8_t>(r.tf.face);
                add_gluing(k, face, r.tf.tet, r.tf.face, p);
            } else {
                if (base_slot[static_cast<size_t>(r.base_tri)])
                    throw construction_error("layering: base triangle realized twice");
                detail::TetFaceRef tf;
                tf.tet = k;
                tf.face = face;
                tf.map3 = base_map3(r.to_base.inverse(), mu);
                base_slot[static_cast<size_t>(r.base_tri)] = tf;
            }
        };
        attach_bottom(2, mu1, rec.t1);
        attach_bottom(0, mu2, rec.t2);

        // new top faces
        ref[static_cast<size_t>(rec.t1)] = detail::LayerRef{true, {k, 3, {0, 1, 2}}, -1, Perm3()};
        ref[static_cast<size_t>(rec.t2)] = detail::LayerRef{true, {k, 1, {0, 2, 3}}, -1, Perm3()};

        cur = rec.after;
        layers.push_back(ref);
    }

    const ClosingIso& iso = *spec.flips.closing;
    verify_closing_iso(cur, base, iso);

    // Resolve the bottom cell of base triangle y, chaining through
    // untouched triangles; the returned map3 sends y's labels to tet
    // vertices. Errors out on a triangle orbit untouched by flips.
    std::function<detail::TetFaceRef(int)> resolve_bottom = [&](int y0) {
        int y = y0;
        Perm3 acc;  // y0 labels -> y labels
        for (int guard = 0; guard <= T + 1; ++guard) {
            if (base_slot[static_cast<size_t>(y)]) {
                const detail::TetFaceRef& tf = *base_slot[static_cast<size_t>(y)];
                detail::TetFaceRef out = tf;
                for (int u = 0; u < 3; ++u)
                    out.map3[static_cast<size_t>(u)] = tf.map3[static_cast<size_t>(acc[u])];
                return out;
            }
            // y is untouched, so it survives to the top layer as itself;
            // its top cell closes onto base triangle iso(y).
            if (ref[static_cast<size_t>(y)].realized || ref[static_cast<size_t>(y)].base_tri != y)
                throw std::logic_error("layering: unrealized base slot is not an untouched triangle");
            acc = acc.then(iso.label_map[static_cast<size_t>(y)]);
            y = iso.tri_image[static_cast<size_t>(y)];
            if (y == y0)
                throw construction_error(
                    "degenerate monodromy: a fiber triangle orbit is untouched by every flip");
        }
        throw std::logic_error("layering: bottom resolution did not terminate");
    };

    for (int x = 0; x < T; ++x) {
        const detail::LayerRef& r = ref[static_cast<size_t>(x)];
        if (!r.realized) continue;  // untouched; handled inside chains
        int y = iso.tri_image[static_cast<size_t>(x)];
        const Perm3& lam = iso.label_map[static_cast<size_t>(x)];
        detail::TetFaceRef bot = resolve_bottom(y);
        Perm4 p;
        std::array<bool, 4> set{false, false, false, false};
        for (int u = 0; u < 3; ++u) {
            int from = r.tf.map3[static_cast<size_t>(u)];
            int to = bot.map3[static_cast<size_t>(lam[u])];
            p.img[static_cast<size_t>(from)] = static_cast<uint8_t>(to);
            set[static_cast<size_t>(from)] = true;
        }
        for (int v = 0; v < 4; ++v)
            if (!set[static_cast<size_t>(v)]) p.img[static_cast<size_t>(v)] = static_cast<uint8_t>(bot.face);
        add_gluing(r.tf.tet, r.tf.face, bot.tet, bot.face, p);
    }

    // every fiber triangle must resolve to a tetrahedron face; a pure
    // untouched orbit would silently drop its product region
    for (int b = 0; b < T; ++b) (void)resolve_bottom(b);

    // every face must now be glued
    std::vector<std::array<Gluing, 4>> final_gl(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            if (!gl[static_cast<size_t>(t)][static_cast<size_t>(f)])
                throw construction_error("layering left an unglued face (degenerate monodromy)");
            final_gl[static_cast<size_t>(t)][static_cast<size_t>(f)] =
                *gl[static_cast<size_t>(t)][static_cast<size_t>(f)];
        }

    LayeredComplex lc{IdealTriangulation(), Coorientation(), n, {}};
    lc.tri = IdealTriangulation::make(std::move(final_gl));
    lc.flip_count = n;

    // coorientation: bottoms (faces 0,2) in, tops (faces 1,3) out
    std::vector<std::array<bool, 4>> flags(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) flags[static_cast<size_t>(t)] = {false, true, false, true};
    lc.coor = Coorientation::from_raw_flags(lc.tri, flags);

    // re-verify everything before returning
    ValidationReport rep = validate(lc.tri);
    if (!rep.orientable)
        throw construction_error("layered complex is not orientable (degenerate monodromy)");
    if (!rep.connected) throw construction_error("layered complex is disconnected");
    if (!rep.all_cusps_tori)
        throw construction_error("layered complex has a non-torus cusp (degenerate monodromy)");
    std::vector<EdgeClass> edges = edge_classes(lc.tri);
    if (!check_full_taut(lc.tri, lc.coor, edges))
        throw construction_error("layered complex is not taut (degenerate monodromy)");
    CuspData cd = cusp_triangulations(lc.tri);
    CuspAngleProfile prof = cusp_angle_profile(lc.tri, lc.coor, cd);
    for (int c : prof.pi_count)
        if (c != 2)
            throw construction_error("layered complex fails the cusp angle profile");

    // layer snapshots -> face classes
    for (const auto& layer : layers) {
        std::vector<int> faces;
        for (int t = 0; t < T; ++t) {
            const detail::LayerRef& r = layer[static_cast<size_t>(t)];
            detail::TetFaceRef tf = r.realized
                                        ? r.tf
                                        : resolve_bottom(r.base_tri);
            faces.push_back(lc.tri.face_class(tf.tet, tf.face));
        }
        std::sort(faces.begin(), faces.end());
        lc.layer_faces_.push_back(std::move(faces));
    }
    return lc;
}

// Convenience: layer a punctured-torus word.
inline LayeredComplex layer_ptorus_word(const std::string& word) {
    auto [base, seq] = ptorus_word_to_flips(word);
    return build_mapping_torus(MonodromySpec{base, seq});
}

}  // namespace tautforge
