#pragma once

#include "torelli/symplat.hpp"

#include <map>
#include <set>
#include <string>

namespace torelli {

/// Combinatorial summary of a partitioned surface: genus, labeled boundary
/// components, and a partition of the boundary into blocks. No embedded
/// curve geometry is stored. A closed surface (no boundary) is permitted as
/// the target of a capping morphism.
struct PartitionedSurface {
    std::size_t genus = 0;
    std::vector<std::string> boundary;              // ordered labels
    std::vector<std::vector<std::string>> partition; // blocks, each in listed order

    void validate() const
    {
        std::set<std::string> seen;
        for (const std::string &b : boundary)
            if (!seen.insert(b).second)
                throw std::invalid_argument("duplicate boundary label: " + b);
        std::set<std::string> covered;
        for (const auto &block : partition) {
            if (block.empty())
                throw std::invalid_argument("empty partition block");
            for (const std::string &b : block) {
                if (!seen.count(b))
                    throw std::invalid_argument("partition names unknown boundary: " + b);
                if (!covered.insert(b).second)
                    throw std::invalid_argument("partition blocks overlap at: " + b);
            }
        }
        if (covered.size() != boundary.size())
            throw std::invalid_argument("partition does not cover the boundary");
    }

    std::size_t boundary_index(const std::string &name) const
    {
        for (std::size_t i = 0; i < boundary.size(); ++i)
            if (boundary[i] == name)
                return i;
        throw std::invalid_argument("unknown boundary component: " + name);
    }

    std::size_t block_of(const std::string &name) const
    {
        for (std::size_t p = 0; p < partition.size(); ++p)
            for (const std::string &b : partition[p])
                if (b == name)
                    return p;
        throw std::invalid_argument("boundary component not in any block: " + name);
    }

    friend bool operator==(const PartitionedSurface &x, const PartitionedSurface &y)
    {
        return x.genus == y.genus && x.boundary == y.boundary && x.partition == y.partition;
    }
    friend bool operator!=(const PartitionedSurface &x, const PartitionedSurface &y)
    {
        return !(x == y);
    }
};

inline PartitionedSurface one_boundary_surface(std::size_t genus, const std::string &label = "d1")
{
    return PartitionedSurface{genus, {label}, {{label}}};
}

/// The partitioned homology of (Sigma, P): the free lattice on the basis
/// a1, b1, ..., ag, bg followed by, for each block p = (c1, ..., ck) in
/// partition order, the arc classes from the anchor c1 to cj for j = 2..k.
/// Also carries the intersection pairing against absolute homology in the
/// coordinate order (a1, b1, ..., ag, bg, boundary loops in listed order);
/// boundary loops themselves are zero in these relative coordinates.
class PartitionedHomology {
  public:
    struct Arc {
        std::size_t block;  // index into partition
        std::size_t anchor; // boundary index of the block anchor
        std::size_t far;    // boundary index of the far endpoint
    };

    explicit PartitionedHomology(PartitionedSurface s) : surface_(std::move(s))
    {
        surface_.validate();
        const std::size_t g = surface_.genus;
        for (std::size_t p = 0; p < surface_.partition.size(); ++p) {
            const auto &block = surface_.partition[p];
            std::size_t anchor = surface_.boundary_index(block[0]);
            for (std::size_t j = 1; j < block.size(); ++j)
                arcs_.push_back(Arc{p, anchor, surface_.boundary_index(block[j])});
        }
        const std::size_t n = 2 * g + arcs_.size();
        const std::size_t m = 2 * g + surface_.boundary.size();
        pairing_ = Mat(n, m);
        for (std::size_t i = 0; i < g; ++i) {
            pairing_(2 * i, 2 * i + 1) = 1;     // omega(a_i, b_i) = +1
            pairing_(2 * i + 1, 2 * i) = -1;    // omega(b_i, a_i) = -1
        }
        for (std::size_t k = 0; k < arcs_.size(); ++k) {
            // An arc from s to t has boundary t - s: it crosses the loop
            // around t once positively and the loop around s once negatively.
            pairing_(2 * g + k, 2 * g + arcs_[k].far) = 1;
            pairing_(2 * g + k, 2 * g + arcs_[k].anchor) = -1;
        }
        closed_to_rel_ = Mat(n, m);
        for (std::size_t i = 0; i < 2 * g; ++i)
            closed_to_rel_(i, i) = 1;
    }

    const PartitionedSurface &surface() const { return surface_; }
    std::size_t genus() const { return surface_.genus; }
    std::size_t rank() const { return 2 * surface_.genus + arcs_.size(); }
    std::size_t closed_dim() const { return 2 * surface_.genus + surface_.boundary.size(); }
    const std::vector<Arc> &arcs() const { return arcs_; }
    std::size_t arc_index(std::size_t k) const { return 2 * surface_.genus + k; }

    FgAbGroup group() const { return FgAbGroup::free_group(rank()); }
    FgAbGroup closed_group() const { return FgAbGroup::free_group(closed_dim()); }

    /// Pairing of relative classes (rows) with absolute classes (columns).
    const Mat &pairing() const { return pairing_; }

    /// Image of absolute homology in the partitioned relative coordinates:
    /// handles map to themselves, boundary loops to zero.
    const Mat &closed_to_partitioned() const { return closed_to_rel_; }

    /// Absolute class of the loop around a boundary component.
    IntVec boundary_loop(const std::string &name) const
    {
        IntVec v(closed_dim(), Int(0));
        v[2 * surface_.genus + surface_.boundary_index(name)] = 1;
        return v;
    }

    Int omega(const IntVec &x, const IntVec &c) const
    {
        if (x.size() != rank() || c.size() != closed_dim())
            throw std::invalid_argument("pairing dimension mismatch");
        IntVec pc = pairing_ * c;
        Int s = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            s += x[i] * pc[i];
        return s;
    }

    /// q-intersection map: coefficient of each curve gamma in q is
    /// omega(x, [gamma]).
    IntVec isect(const std::vector<IntVec> &q, const IntVec &x) const
    {
        IntVec out(q.size());
        for (std::size_t i = 0; i < q.size(); ++i)
            out[i] = omega(x, q[i]);
        return out;
    }

    /// Coordinate labels of the total boundary target: one coordinate per
    /// arc, meaning (far - anchor) inside that block's zero-sum lattice.
    std::size_t boundary_target_rank() const { return arcs_.size(); }

    /// Total boundary map into the direct sum over blocks of the zero-sum
    /// lattices, written in the (far - anchor) coordinates. Derived from
    /// the pairing with the boundary loops of each block.
    AbHom total_boundary() const
    {
        const std::size_t g = surface_.genus;
        Mat m(arcs_.size(), rank());
        for (std::size_t k = 0; k < arcs_.size(); ++k)
            for (std::size_t x = 0; x < rank(); ++x)
                m(k, x) = pairing_(x, 2 * g + arcs_[k].far);
        return AbHom(group(), FgAbGroup::free_group(arcs_.size()), m);
    }

  private:
    PartitionedSurface surface_;
    std::vector<Arc> arcs_;
    Mat pairing_;
    Mat closed_to_rel_;
};

/// An A-homology marking: a homomorphism from the partitioned homology
/// lattice to a finitely generated abelian group A.
struct Marking {
    PartitionedHomology homology;
    AbHom mu; // source = homology.group()

    Marking(PartitionedHomology h, AbHom m) : homology(std::move(h)), mu(std::move(m))
    {
        if (!(mu.source() == homology.group()))
            throw std::invalid_argument("marking matrix does not match the homology basis");
    }

    const FgAbGroup &coefficients() const { return mu.target(); }
};

inline Marking make_marking(const PartitionedSurface &s, const FgAbGroup &a, Mat matrix)
{
    PartitionedHomology h(s);
    AbHom mu(h.group(), a, std::move(matrix));
    return Marking(std::move(h), std::move(mu));
}

/// Closed marking: the composite of absolute homology into partitioned
/// homology with mu. It kills every boundary loop by construction.
struct ClosedMarking {
    AbHom hat_mu; // source = free(2g + b) in (a, b, loops) coordinates
};

inline ClosedMarking closed_marking(const Marking &m)
{
    Mat hat = m.mu.matrix() * m.homology.closed_to_partitioned();
    return ClosedMarking{AbHom(m.homology.closed_group(), m.mu.target(), hat)};
}

/// Restriction of the closed marking to the genus (symplectic) part, as a
/// marking on the standard symplectic lattice Z^{2g}.
inline AbHom symplectic_part(const Marking &m)
{
    const std::size_t g = m.homology.genus();
    Mat part(m.mu.matrix().rows(), 2 * g);
    for (std::size_t i = 0; i < part.rows(); ++i)
        for (std::size_t j = 0; j < 2 * g; ++j)
            part(i, j) = m.mu.matrix()(i, j);
    return AbHom(FgAbGroup::free_group(2 * g), m.mu.target(), part);
}

/// Witness data for a marking supported on a symplectic subsurface: the
/// destabilized marking on a one-boundary genus-g subsurface, the closed
/// classes correcting each basis arc into the kernel, and the genus-bounded
/// symplectic support subspace of the destabilized marking.
struct SupportWitness {
    AbHom destabilized;   // marking on Z^{2g}, the homology of the subsurface
    Mat arc_corrections;  // 2g x (#arcs): closed classes c with mu(arc) = mu-hat(c)
    SymplSubspace subspace;
};

struct SupportCheck {
    bool supported = false;
    std::optional<SupportWitness> witness;
};

/// Criterion for support on a symplectic subsurface: the total boundary map
/// carries ker(mu) onto the full zero-sum target lattice. When it holds, a
/// witness is produced: each basis arc can be corrected by a closed class
/// into ker(mu), which destabilizes mu to the one-boundary subsurface, and
/// the constructive support algorithm bounds the genus by rank(A).
inline SupportCheck is_supported_on_symplectic(const Marking &m)
{
    const PartitionedHomology &h = m.homology;
    KernelResult k = kernel(m.mu);
    Mat boundary = h.total_boundary().matrix();
    Mat image = boundary * k.inclusion.matrix();
    bool supported = h.boundary_target_rank() == 0 || spans_full_lattice(image);
    if (!supported)
        return SupportCheck{false, std::nullopt};

    AbHom destab = symplectic_part(m);
    const std::size_t g = h.genus();
    Mat corrections(2 * g, h.arcs().size());
    for (std::size_t j = 0; j < h.arcs().size(); ++j) {
        IntVec mu_arc = m.mu.matrix().column(h.arc_index(j));
        std::optional<IntVec> c = destab.preimage(m.coefficients().reduce(mu_arc));
        if (!c)
            throw std::logic_error("support criterion held but an arc has no closed correction");
        corrections.set_column(j, *c);
    }
    SymplSubspace w = support_subspace(destab, SymplLattice(g));
    return SupportCheck{true, SupportWitness{destab, corrections, w}};
}

/// The induced map of the standard one-boundary subsurface inclusion with
/// the given arc corrections: handles restrict to themselves, the basis arc
/// j restricts to its correcting closed class. Stabilizing the destabilized
/// marking along this map recovers mu.
inline AbHom support_restriction(const PartitionedHomology &h, const Mat &arc_corrections)
{
    const std::size_t g = h.genus();
    Mat r(2 * g, h.rank());
    for (std::size_t i = 0; i < 2 * g; ++i)
        r(i, i) = 1;
    for (std::size_t j = 0; j < h.arcs().size(); ++j)
        for (std::size_t i = 0; i < 2 * g; ++i)
            r(i, h.arc_index(j)) = arc_corrections(i, j);
    return AbHom(h.group(), FgAbGroup::free_group(2 * g), r);
}

} // namespace torelli
