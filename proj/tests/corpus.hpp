#pragma once

// Shared fixtures: small hand-built complexes and the layered word corpus.

#include <string>
#include <utility>
#include <vector>

#include "tautforge/layering.hpp"
#include "tautforge/surface.hpp"
#include "tautforge/tri3.hpp"

namespace corpus {

// the abstract double of a tetrahedron: orientable, four sphere cusps
inline tautforge::IdealTriangulation pillow() {
    using namespace tautforge;
    std::vector<std::array<Gluing, 4>> gl(2);
    for (int f = 0; f < 4; ++f) {
        gl[0][static_cast<size_t>(f)] = Gluing{FaceRef{1, f}, Perm4()};
        gl[1][static_cast<size_t>(f)] = Gluing{FaceRef{0, f}, Perm4()};
    }
    return IdealTriangulation::make(gl);
}

// one tet with even self-gluings: valid but non-orientable
inline tautforge::IdealTriangulation nonorientable_one_tet() {
    using namespace tautforge;
    std::vector<std::array<Gluing, 4>> gl(1);
    Perm4 p(1, 2, 0, 3), q(1, 0, 3, 2);
    gl[0][0] = Gluing{FaceRef{0, 1}, p};
    gl[0][1] = Gluing{FaceRef{0, 0}, p.inverse()};
    gl[0][2] = Gluing{FaceRef{0, 3}, q};
    gl[0][3] = Gluing{FaceRef{0, 2}, q.inverse()};
    return IdealTriangulation::make(gl);
}

// doubled square: a four-triangle ideal triangulation of the
// four-punctured sphere (front triangles 0,1; back triangles 2,3)
inline tautforge::SurfaceIdealTri four_punctured_sphere() {
    using namespace tautforge;
    std::vector<std::array<SGluing, 3>> gl(4);
    auto pair = [&](int t1, int s1, int t2, int s2, int a, int b) {
        Perm3 p = make_side_perm(s1, a, b);
        gl[static_cast<size_t>(t1)][static_cast<size_t>(s1)] = SGluing{SideRef{t2, s2}, p};
        gl[static_cast<size_t>(t2)][static_cast<size_t>(s2)] = SGluing{SideRef{t1, s1}, p.inverse()};
    };
    pair(0, 0, 1, 0, 2, 1);  // front diagonal
    pair(2, 0, 3, 0, 2, 1);  // back diagonal
    pair(0, 1, 2, 1, 0, 2);  // outer sides front <-> back
    pair(0, 2, 2, 2, 0, 1);
    pair(1, 1, 3, 1, 0, 2);
    pair(1, 2, 3, 2, 0, 1);
    return SurfaceIdealTri::make(gl);
}

// every word of length 2..4 over {R,L} whose layered complex builds
inline std::vector<std::pair<std::string, tautforge::LayeredComplex>>& layered_words() {
    static std::vector<std::pair<std::string, tautforge::LayeredComplex>> c = [] {
        std::vector<std::pair<std::string, tautforge::LayeredComplex>> out;
        std::vector<std::string> words{""};
        for (int len = 1; len <= 4; ++len) {
            std::vector<std::string> next;
            for (const auto& w : words)
                for (char ch : {'R', 'L'}) next.push_back(w + ch);
            words = next;
            if (len < 2) continue;
            for (const auto& w : words) {
                try {
                    out.push_back({w, tautforge::layer_ptorus_word(w)});
                } catch (const tautforge::construction_error&) {
                    // degenerate monodromy, skipped by design
                }
            }
        }
        return out;
    }();
    return c;
}

inline tautforge::LayeredComplex& figure_eight() {
    static tautforge::LayeredComplex lc = tautforge::layer_ptorus_word("RL");
    return lc;
}

}  // namespace corpus
