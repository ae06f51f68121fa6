#include "torelli/bounds.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace torelli;

TEST_CASE("marking stability thresholds")
{
    // k = 0: the isomorphism threshold is 2 rank + 2.
    for (int r = 0; r <= 6; ++r) {
        StableRange s = homology_marking_range(r, 0);
        REQUIRE(s.iso_genus == 2 * r + 2);
    }
}

TEST_CASE("surjection threshold is one below the isomorphism threshold")
{
    for (int r = 0; r <= 8; ++r)
        for (int k = 0; k <= 8; ++k) {
            StableRange s = homology_marking_range(r, k);
            REQUIRE(s.surjection_genus == s.iso_genus - 1);
            StableRange t = nonabelian_marking_range(r, k);
            REQUIRE(t.surjection_genus == t.iso_genus - 1);
        }
}

TEST_CASE("rank 2h specializes to the fixed-subspace thresholds")
{
    // Projection markings onto a genus-h subspace have coefficient rank 2h,
    // and the threshold specializes to (2h+2)k + (4h+2).
    for (int h = 1; h <= 10; ++h)
        for (int k = 1; k <= 10; ++k) {
            StableRange s = homology_marking_range(2 * h, k);
            REQUIRE(s.iso_genus == Int(2 * h + 2) * k + (4 * h + 2));
        }
}

TEST_CASE("subsurface complex connectivity and nonemptiness")
{
    REQUIRE(subsurface_complex_connectivity(5, 1) == Rat(1));
    REQUIRE(subsurface_complex_connectivity(4, 1) == Rat(1, 2));
    // A space is (-1)-connected when it is nonempty: the bound gives
    // nonemptiness exactly for g >= h.
    for (int g = 0; g <= 8; ++g)
        for (int h = 1; h <= 8; ++h)
            REQUIRE(subsurface_complex_nonempty(g, h) == (g >= h));
}

TEST_CASE("vanishing complex connectivity values")
{
    REQUIRE(vanishing_subsurface_connectivity(10, 2, 1) == Rat(10 - 7, 4));
    REQUIRE(vanishing_loop_connectivity(10, 2) == Rat(3, 4));
    REQUIRE(vanishing_loop_connectivity(7, 2) == Rat(0));
    // The loop bound is the h = 1 subsurface bound shifted by the rank...
    // checked against the displayed formulas directly.
    for (int g = 0; g <= 10; ++g)
        for (int r = 0; r <= 4; ++r)
            {
                Rat expect(g - (2 * r + 3), r + 2);
                expect.canonicalize();
                REQUIRE(vanishing_loop_connectivity(g, r) == expect);
            }
}

TEST_CASE("machine connectivity hypothesis")
{
    REQUIRE(machine_connectivity(1, 2) == Rat(0));
    REQUIRE(machine_connectivity(8, 3) == Rat(7, 3));
    REQUIRE_THROWS_AS(machine_connectivity(5, 1), std::invalid_argument);
}

TEST_CASE("bounds queries bundle the applicable formulas")
{
    BoundsQuery q;
    q.size = 2;
    q.k = Int(1);
    q.genus = Int(10);
    q.h = Int(1);
    StableRangeResult r = stable_range(q);
    REQUIRE(r.range->iso_genus == 10);
    REQUIRE(r.range->surjection_genus == 9);
    REQUIRE(*r.subsurfaces == Rat(7, 2));
    REQUIRE(*r.vanishing_subsurfaces == Rat(3, 4));
    REQUIRE(*r.vanishing_loops == Rat(3, 4));
    REQUIRE(*r.k_max == 1);

    BoundsQuery nq;
    nq.kind = BoundsQuery::Coefficients::group_order;
    nq.size = 6;
    nq.k = Int(2);
    StableRangeResult nr = stable_range(nq);
    REQUIRE(nr.range->iso_genus == (6 + 2) * 2 + (2 * 6 + 2));
    REQUIRE_FALSE(nr.k_max.has_value());
}

TEST_CASE("largest stable degree")
{
    // rank 2, genus 20: 20 >= 4k + 6 up to k = 3.
    REQUIRE(*max_stable_degree(20, 2) == 3);
    REQUIRE(*max_stable_degree(6, 2) == 0);
    REQUIRE_FALSE(max_stable_degree(5, 2).has_value());
    // Consistency with the threshold formula.
    for (int g = 0; g <= 30; ++g)
        for (int r = 0; r <= 4; ++r) {
            auto k = max_stable_degree(g, r);
            if (k) {
                REQUIRE(homology_marking_range(r, *k).iso_genus <= g);
                REQUIRE(homology_marking_range(r, *k + 1).iso_genus > g);
            }
            else {
                REQUIRE(homology_marking_range(r, 0).iso_genus > g);
            }
        }
}
