#include "torelli/surface.hpp"

#include "cw_oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace torelli;

namespace {

PartitionedSurface surf(std::size_t g, const std::vector<std::vector<int>> &blocks)
{
    std::size_t b = 0;
    for (const auto &blk : blocks)
        b += blk.size();
    PartitionedSurface s;
    s.genus = g;
    for (std::size_t i = 1; i <= b; ++i)
        s.boundary.push_back("d" + std::to_string(i));
    for (const auto &blk : blocks) {
        std::vector<std::string> named;
        for (int i : blk)
            named.push_back("d" + std::to_string(i + 1));
        s.partition.push_back(named);
    }
    return s;
}

} // namespace

TEST_CASE("partitioned homology rank on the motivating surface")
{
    // Genus 3 with six boundary components split 4 + 2.
    PartitionedHomology h(surf(3, {{0, 1, 2, 3}, {4, 5}}));
    REQUIRE(h.rank() == 10);
}

TEST_CASE("one boundary component has no arc classes")
{
    for (std::size_t g = 0; g <= 4; ++g) {
        PartitionedHomology h(one_boundary_surface(g));
        REQUIRE(h.rank() == 2 * g);
        REQUIRE(h.arcs().empty());
    }
}

TEST_CASE("genus zero annulus in one block has a single arc class")
{
    PartitionedHomology h(surf(0, {{0, 1}}));
    REQUIRE(h.rank() == 1);
    REQUIRE(h.arcs().size() == 1);
}

TEST_CASE("rank formula against the chain-level oracle for g <= 4, b <= 6")
{
    for (std::size_t g = 0; g <= 4; ++g)
        for (int b = 1; b <= 6; ++b) {
            cw::Model model(g, b);
            REQUIRE(model.relative_h1_rank() == 2 * g + b - 1);
            for (const auto &blocks : cw::all_partitions(b)) {
                PartitionedHomology h(surf(g, blocks));
                std::size_t expected = 2 * g;
                for (const auto &blk : blocks)
                    expected += blk.size() - 1;
                REQUIRE(h.rank() == expected);
                REQUIRE(model.partitioned_span_rank(blocks) == h.rank());
            }
        }
}

TEST_CASE("surface validation rejects malformed partitions")
{
    PartitionedSurface s = surf(1, {{0, 1}});
    s.partition[0].pop_back(); // d2 no longer covered
    REQUIRE_THROWS_AS(PartitionedHomology(s), std::invalid_argument);
    PartitionedSurface t = surf(1, {{0}, {0, 1}});
    REQUIRE_THROWS_AS(PartitionedHomology(t), std::invalid_argument);
}

TEST_CASE("intersection map on basis classes")
{
    PartitionedHomology h(surf(2, {{0, 1, 2}}));
    std::vector<IntVec> loops;
    for (const std::string &name : h.surface().boundary)
        loops.push_back(h.boundary_loop(name));

    // Closed curves have zero boundary.
    for (std::size_t i = 0; i < 4; ++i) {
        IntVec x(h.rank(), Int(0));
        x[i] = 1;
        IntVec c = h.isect(loops, x);
        for (const Int &v : c)
            REQUIRE(v == 0);
    }
    // The arc from d1 to d2 hits d2 once positively and d1 once negatively.
    IntVec arc(h.rank(), Int(0));
    arc[h.arc_index(0)] = 1;
    IntVec c = h.isect({loops[0], loops[1]}, arc);
    REQUIRE(c == IntVec{Int(-1), Int(1)});
    // The zero class maps to zero.
    IntVec zero(h.rank(), Int(0));
    for (const Int &v : h.isect(loops, zero))
        REQUIRE(v == 0);
}

TEST_CASE("total boundary map: kernel, image and zero-sum")
{
    PartitionedHomology h(surf(1, {{0, 1, 2}, {3}}));
    AbHom t = h.total_boundary();
    // Closed basis vectors die.
    for (std::size_t i = 0; i < 2; ++i) {
        IntVec x(h.rank(), Int(0));
        x[i] = 1;
        REQUIRE(t.target().is_zero_element(t.apply(x)));
    }
    // Each arc maps to its own (far - anchor) coordinate: the arc basis of a
    // block maps onto a basis of the block's zero-sum lattice.
    for (std::size_t k = 0; k < h.arcs().size(); ++k) {
        IntVec x(h.rank(), Int(0));
        x[h.arc_index(k)] = 1;
        IntVec v = t.apply(x);
        for (std::size_t i = 0; i < v.size(); ++i)
            REQUIRE(v[i] == (i == k ? 1 : 0));
    }
    // isect over the loops of a block always has zero coefficient sum.
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int trial = 0; trial < 20; ++trial) {
        IntVec x(h.rank());
        for (Int &v : x)
            v = d(rng);
        for (const auto &block : h.surface().partition) {
            std::vector<IntVec> loops;
            for (const std::string &name : block)
                loops.push_back(h.boundary_loop(name));
            IntVec c = h.isect(loops, x);
            Int sum = 0;
            for (const Int &v : c)
                sum += v;
            REQUIRE(sum == 0);
        }
    }
}

TEST_CASE("closed marking kills boundary loops and keeps handles")
{
    PartitionedSurface s = surf(1, {{0, 1}});
    FgAbGroup z2(0, {Int(2)});
    // mu(a1) = 1, everything else zero.
    Mat m(1, 3);
    m(0, 0) = 1;
    Marking mk = make_marking(s, z2, m);
    ClosedMarking hat = closed_marking(mk);
    REQUIRE(hat.hat_mu.apply(mk.homology.boundary_loop("d1")) == IntVec{Int(0)});
    REQUIRE(hat.hat_mu.apply(mk.homology.boundary_loop("d2")) == IntVec{Int(0)});
    IntVec a1(4, Int(0));
    a1[0] = 1;
    REQUIRE(hat.hat_mu.apply(a1) == IntVec{Int(1)});

    // A marking supported on arc symbols has zero closed marking.
    Mat arc_only(1, 3);
    arc_only(0, 2) = 1;
    Marking mk2 = make_marking(s, z2, arc_only);
    REQUIRE(closed_marking(mk2).hat_mu.is_zero());
}

TEST_CASE("single-block surfaces with one boundary are always supported")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int t = 0; t < 10; ++t) {
        PartitionedSurface s = one_boundary_surface(2);
        FgAbGroup a(0, {Int(4)});
        Mat m(1, 4);
        for (std::size_t j = 0; j < 4; ++j)
            m(0, j) = d(rng);
        SupportCheck c = is_supported_on_symplectic(make_marking(s, a, m));
        REQUIRE(c.supported);
    }
}

TEST_CASE("the boundary-map marking is not supported")
{
    PartitionedHomology h(surf(1, {{0, 1}}));
    AbHom t = h.total_boundary();
    Marking mk(h, t);
    REQUIRE_FALSE(is_supported_on_symplectic(mk).supported);
}

TEST_CASE("the zero marking is supported for every partition")
{
    for (const auto &blocks : cw::all_partitions(3)) {
        PartitionedSurface s = surf(1, blocks);
        PartitionedHomology h(s);
        Marking mk(h, AbHom::zero(h.group(), FgAbGroup(0, {Int(6)})));
        SupportCheck c = is_supported_on_symplectic(mk);
        REQUIRE(c.supported);
        REQUIRE(c.witness->subspace.genus() == 0);
    }
}

TEST_CASE("support witness restabilizes to the marking")
{
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> d(-3, 3);
    std::vector<FgAbGroup> targets = {FgAbGroup(0, {Int(2)}), FgAbGroup(0, {Int(2), Int(4)}),
                                      FgAbGroup(1, {})};
    for (int t = 0; t < 40; ++t) {
        std::size_t g = 1 + rng() % 3;
        auto parts = cw::all_partitions(1 + rng() % 3);
        PartitionedSurface s = surf(g, parts[rng() % parts.size()]);
        PartitionedHomology h(s);
        const FgAbGroup &a = targets[rng() % targets.size()];

        // Build a marking that is a stabilization by construction: a random
        // closed marking on the genus part plus random closed arc corrections.
        Mat base(a.gen_count(), 2 * g);
        for (std::size_t i = 0; i < base.rows(); ++i)
            for (std::size_t j = 0; j < base.cols(); ++j)
                base(i, j) = d(rng);
        AbHom mu1(FgAbGroup::free_group(2 * g), a, base);
        Mat corr(2 * g, h.arcs().size());
        for (std::size_t i = 0; i < corr.rows(); ++i)
            for (std::size_t j = 0; j < corr.cols(); ++j)
                corr(i, j) = d(rng);
        AbHom restriction = support_restriction(h, corr);
        Marking mk(h, mu1.compose(restriction));

        SupportCheck c = is_supported_on_symplectic(mk);
        REQUIRE(c.supported);
        const SupportWitness &w = *c.witness;
        REQUIRE(w.subspace.genus() <= a.rank());
        REQUIRE(vanishes_on_perp(w.destabilized, w.subspace));
        // Restabilizing the witness data recovers mu exactly.
        AbHom rebuilt = w.destabilized.compose(support_restriction(h, w.arc_corrections));
        REQUIRE(rebuilt.equals(mk.mu));
    }
}

TEST_CASE("support criterion matches the image-membership oracle")
{
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int t = 0; t < 60; ++t) {
        std::size_t g = rng() % 3;
        auto parts = cw::all_partitions(1 + rng() % 3);
        PartitionedSurface s = surf(g, parts[rng() % parts.size()]);
        PartitionedHomology h(s);
        FgAbGroup a(0, {Int(2), Int(4)});
        Mat m(a.gen_count(), h.rank());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                m(i, j) = d(rng);
        Marking mk(h, AbHom(h.group(), a, m));
        // Oracle: supported iff every arc value lies in the image of the
        // closed marking.
        AbHom sym = symplectic_part(mk);
        bool oracle = true;
        for (std::size_t k = 0; k < h.arcs().size(); ++k)
            if (!sym.preimage(a.reduce(m.column(h.arc_index(k)))))
                oracle = false;
        REQUIRE(is_supported_on_symplectic(mk).supported == oracle);
    }
}
