#include <catch2/catch_amalgamated.hpp>

#include "tautforge/carried.hpp"
#include "tautforge/layering.hpp"
#include "tests/corpus.hpp"

using namespace tautforge;

TEST_CASE("switch system of the figure-eight") {
    LayeredComplex& lc = corpus::figure_eight();
    auto edges = edge_classes(lc.tri);
    SwitchSystem sys = switch_system(lc.tri, lc.coor, edges);
    SECTION("two equations in four unknowns") {
        CHECK(sys.edges.size() == 2);
        CHECK(sys.face_class_count == 4);
    }
    SECTION("each side is non-empty") {
        for (const auto& e : sys.edges) {
            CHECK(!e.side_a.empty());
            CHECK(!e.side_b.empty());
        }
    }
    SECTION("side multiplicities account for every face side") {
        long long sides = 0;
        for (const auto& e : sys.edges) sides += static_cast<long long>(e.side_a.size() + e.side_b.size());
        CHECK(sides == 3LL * lc.tri.face_class_count());
    }
    SECTION("the fiber satisfies the equations by direct substitution") {
        WeightVector w = lc.fiber_weights(0);
        for (const auto& e : sys.edges) {
            long long a = 0, b = 0;
            for (const auto& s : e.side_a) a += w[static_cast<size_t>(s.face_class)];
            for (const auto& s : e.side_b) b += w[static_cast<size_t>(s.face_class)];
            CHECK(a == b);
        }
    }
    SECTION("only taut structures have switch systems") {
        std::vector<bool> bits(static_cast<size_t>(lc.tri.face_class_count()), true);
        Coorientation bad(lc.tri, bits);
        CHECK_THROWS_AS(switch_system(lc.tri, bad, edges), validation_error);
    }
}

TEST_CASE("solution enumeration") {
    LayeredComplex& lc = corpus::figure_eight();
    SwitchSystem sys = switch_system(lc.tri, lc.coor);
    SECTION("max_total 0 gives exactly the zero vector") {
        auto sols = enumerate_solutions(sys, 0);
        REQUIRE(sols.size() == 1);
        CHECK(total_weight(sols[0]) == 0);
    }
    SECTION("the fiber appears at max_total 2") {
        auto sols = enumerate_solutions(sys, 2);
        WeightVector fiber = lc.fiber_weights(0);
        CHECK(std::find(sols.begin(), sols.end(), fiber) != sols.end());
    }
    SECTION("lexicographic order, even totals, closure under addition") {
        auto sols = enumerate_solutions(sys, 8);
        for (size_t k = 1; k < sols.size(); ++k) CHECK(sols[k - 1] < sols[k]);
        for (const auto& w : sols) CHECK(total_weight(w) % 2 == 0);
        // spot-check additivity: sums of small solutions solve too
        for (size_t i = 0; i < sols.size() && i < 6; ++i)
            for (size_t j = 0; j < sols.size() && j < 6; ++j) {
                WeightVector sum = sols[i];
                for (size_t c = 0; c < sum.size(); ++c) sum[c] += sols[j][c];
                CHECK(satisfies(sys, sum));
            }
    }
    SECTION("negative bound is rejected") {
        CHECK_THROWS_AS(enumerate_solutions(sys, -1), validation_error);
    }
}

TEST_CASE("euler characteristic from the identity") {
    CHECK(euler_char(WeightVector{1, 0, 1, 0}) == -1);
    CHECK(euler_char(WeightVector{0, 0, 0, 0}) == 0);
    CHECK(euler_char(WeightVector{2, 0, 2, 0}) == -2);
    CHECK_THROWS_AS(euler_char(WeightVector{1, 0, 0, 0}), validation_error);
}

TEST_CASE("carried-surface identity across the corpus") {
    // |pairing| = total = -2 chi for every switch solution with total <= 8,
    // and reconstruction agrees component by component
    for (auto& [word, lc] : corpus::layered_words()) {
        auto edges = edge_classes(lc.tri);
        CuspData cd = cusp_triangulations(lc.tri);
        for (const Coorientation& coor : enumerate_taut(lc.tri)) {
            SwitchSystem sys = switch_system(lc.tri, coor, edges);
            DualCycle g = dual_cycle(lc.tri, coor);
            for (const WeightVector& w : enumerate_solutions(sys, 8)) {
                long long tot = total_weight(w);
                REQUIRE(tot % 2 == 0);
                long long chi = euler_char(w);
                long long pr = pairing(g, w);
                CHECK(std::abs(pr) == tot);
                CHECK(tot == -2 * chi);
                SurfaceReport rep = reconstruct(lc.tri, coor, w, sys, cd);
                CHECK(rep.total_euler == chi);
                long long sheets = 0;
                for (const auto& c : rep.components) {
                    sheets += c.sheets;
                    CHECK(c.boundary_curves >= 1);  // carried pieces always reach the cusps
                    CHECK(c.euler < 0);
                }
                CHECK(sheets == tot);
            }
        }
    }
}

TEST_CASE("pairing is linear") {
    LayeredComplex& lc = corpus::figure_eight();
    SwitchSystem sys = switch_system(lc.tri, lc.coor);
    DualCycle g = dual_cycle(lc.tri, lc.coor);
    auto sols = enumerate_solutions(sys, 6);
    for (size_t i = 0; i < sols.size(); ++i)
        for (size_t j = 0; j < sols.size(); ++j) {
            WeightVector sum = sols[i];
            for (size_t c = 0; c < sum.size(); ++c) sum[c] += sols[j][c];
            CHECK(pairing(g, sum) == pairing(g, sols[i]) + pairing(g, sols[j]));
        }
}

TEST_CASE("reconstruction of the figure-eight fiber") {
    LayeredComplex& lc = corpus::figure_eight();
    SwitchSystem sys = switch_system(lc.tri, lc.coor);
    CuspData cd = cusp_triangulations(lc.tri);
    SECTION("one genus-one piece with one boundary curve") {
        SurfaceReport rep = reconstruct(lc.tri, lc.coor, lc.fiber_weights(0), sys, cd);
        REQUIRE(rep.components.size() == 1);
        CHECK(rep.components[0].euler == -1);
        CHECK(rep.components[0].boundary_curves == 1);
        REQUIRE(rep.boundary_curves_per_cusp.size() == 1);
        CHECK(rep.boundary_curves_per_cusp[0] == 1);
    }
    SECTION("the doubled fiber is two parallel copies") {
        WeightVector w = lc.fiber_weights(0);
        for (auto& x : w) x *= 2;
        SurfaceReport rep = reconstruct(lc.tri, lc.coor, w, sys, cd);
        REQUIRE(rep.components.size() == 2);
        for (const auto& c : rep.components) {
            CHECK(c.euler == -1);
            CHECK(c.boundary_curves == 1);
        }
    }
    SECTION("the zero vector reconstructs to the empty surface") {
        SurfaceReport rep = reconstruct(lc.tri, lc.coor, WeightVector(4, 0), sys, cd);
        CHECK(rep.components.empty());
        CHECK(rep.total_euler == 0);
        for (int b : rep.boundary_curves_per_cusp) CHECK(b == 0);
    }
    SECTION("non-solutions are rejected") {
        WeightVector w = lc.fiber_weights(0);
        w[0] += 1;
        bool bad = !satisfies(sys, w);
        if (bad) CHECK_THROWS_AS(reconstruct(lc.tri, lc.coor, w, sys, cd), validation_error);
        CHECK_THROWS_AS(reconstruct(lc.tri, lc.coor, WeightVector{-1, 1, 0, 0}, sys, cd),
                        validation_error);
    }
}
