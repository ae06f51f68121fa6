#pragma once

#include "torelli/int.hpp"

#include <optional>
#include <stdexcept>

namespace torelli {

namespace detail {
inline Rat make_rat(const Int &num, const Int &den)
{
    Rat r(num, den);
    r.canonicalize();
    return r;
}
} // namespace detail

/// Genus thresholds for stability of the partial Torelli groups under
/// homology markings with coefficients of the given rank: H_k maps are
/// isomorphisms from iso_genus on and surjections at surjection_genus.
struct StableRange {
    Int iso_genus;
    Int surjection_genus;
};

inline StableRange homology_marking_range(const Int &rank_a, const Int &k)
{
    if (rank_a < 0 || k < 0)
        throw std::invalid_argument("bounds take nonnegative inputs");
    Int iso = (rank_a + 2) * k + (2 * rank_a + 2);
    return StableRange{iso, iso - 1};
}

/// Same thresholds for markings by a finite group of the given order.
inline StableRange nonabelian_marking_range(const Int &lambda_order, const Int &k)
{
    if (lambda_order < 0 || k < 0)
        throw std::invalid_argument("bounds take nonnegative inputs");
    Int iso = (lambda_order + 2) * k + (2 * lambda_order + 2);
    return StableRange{iso, iso - 1};
}

/// Connectivity of the complex of genus-h subsurfaces (tethered or not) of
/// a genus-g surface, as an exact rational.
inline Rat subsurface_complex_connectivity(const Int &g, const Int &h)
{
    if (g < 0 || h < 1)
        throw std::invalid_argument("needs g >= 0 and h >= 1");
    return detail::make_rat(g - (2 * h + 1), h + 1);
}

/// Nonemptiness of the genus-h subsurface complex: (-1)-connectivity.
inline bool subsurface_complex_nonempty(const Int &g, const Int &h)
{
    return subsurface_complex_connectivity(g, h) >= -1;
}

/// Connectivity of the complex of vanishing genus-h subsurfaces for a
/// marking with coefficients of the given rank (or order, in the
/// nonabelian case).
inline Rat vanishing_subsurface_connectivity(const Int &g, const Int &rank_a, const Int &h)
{
    if (g < 0 || h < 1 || rank_a < 0)
        throw std::invalid_argument("needs g >= 0, h >= 1, rank >= 0");
    return detail::make_rat(g - (2 * rank_a + 2 * h + 1), rank_a + h + 1);
}

/// Connectivity of the complexes of (tethered / double-tethered /
/// order-preserving double-tethered) vanishing loops.
inline Rat vanishing_loop_connectivity(const Int &g, const Int &rank_a)
{
    if (g < 0 || rank_a < 0)
        throw std::invalid_argument("needs g >= 0 and rank >= 0");
    return detail::make_rat(g - (2 * rank_a + 3), rank_a + 2);
}

/// The connectivity hypothesis of the homological stability machine.
inline Rat machine_connectivity(const Int &n, const Int &c)
{
    if (c < 2)
        throw std::invalid_argument("the machine needs c >= 2");
    return detail::make_rat(n - 1, c);
}

/// Largest homology degree k with g >= (rank+2) k + (2 rank + 2), if any.
inline std::optional<Int> max_stable_degree(const Int &g, const Int &rank_a)
{
    Int base = 2 * rank_a + 2;
    if (g < base)
        return std::nullopt;
    Int k;
    mpz_fdiv_q(k.get_mpz_t(), Int(g - base).get_mpz_t(), Int(rank_a + 2).get_mpz_t());
    return k;
}

/// Query for the bound formulas: the coefficient size is either the rank of
/// an abelian group or the order of a finite group, with optional genus,
/// subsurface genus and homology degree.
struct BoundsQuery {
    enum class Coefficients { abelian_rank, group_order };
    Coefficients kind = Coefficients::abelian_rank;
    Int size = 0;
    std::optional<Int> genus;
    std::optional<Int> h;
    std::optional<Int> k;
};

/// Everything the query determines, as exact values (never floored).
struct StableRangeResult {
    std::optional<StableRange> range;           // when k is given
    std::optional<Rat> subsurfaces;             // when genus and h are given
    std::optional<Rat> vanishing_subsurfaces;   // when genus and h are given
    std::optional<Rat> vanishing_loops;         // when genus is given
    std::optional<Int> k_max;                   // when genus is given (abelian only)
};

inline StableRangeResult stable_range(const BoundsQuery &q)
{
    StableRangeResult out;
    const bool abelian = q.kind == BoundsQuery::Coefficients::abelian_rank;
    if (q.k)
        out.range = abelian ? homology_marking_range(q.size, *q.k)
                            : nonabelian_marking_range(q.size, *q.k);
    if (q.genus && q.h) {
        out.subsurfaces = subsurface_complex_connectivity(*q.genus, *q.h);
        out.vanishing_subsurfaces = vanishing_subsurface_connectivity(*q.genus, q.size, *q.h);
    }
    if (q.genus) {
        out.vanishing_loops = vanishing_loop_connectivity(*q.genus, q.size);
        if (abelian)
            out.k_max = max_stable_degree(*q.genus, q.size);
    }
    return out;
}

} // namespace torelli
