#pragma once

#include "torelli/smith.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>

namespace torelli {

/// Finitely generated abelian group held in canonical invariant-factor form:
/// torsion Z/d1 + ... + Z/dt with d1 | d2 | ... | dt (each >= 2), plus a free
/// part Z^free_rank. The canonical generating set lists the torsion
/// generators first (in chain order), then the free generators.
class FgAbGroup {
  public:
    FgAbGroup() = default;

    // Normalizing constructor: arbitrary torsion entries are canonicalized
    // (negatives folded, 1s dropped, 0s moved to the free part, chain fixed
    // up by SNF of the diagonal presentation).
    FgAbGroup(std::size_t free_rank, IntVec torsion)
    {
        std::size_t extra_free = 0;
        IntVec ts;
        for (Int &d : torsion) {
            Int a = abs(d);
            if (a == 0)
                ++extra_free;
            else if (a != 1)
                ts.push_back(a);
        }
        free_rank_ = free_rank + extra_free;
        if (ts.empty())
            return;
        bool chain = true;
        for (std::size_t i = 0; i + 1 < ts.size(); ++i)
            if (!divides(ts[i], ts[i + 1])) {
                chain = false;
                break;
            }
        if (chain) {
            torsion_ = std::move(ts);
            return;
        }
        Mat rel(ts.size(), ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i)
            rel(i, i) = ts[i];
        SmithDecomposition s = smith_normal_form(rel);
        for (std::size_t i = 0; i < ts.size(); ++i)
            if (s.d(i, i) != 1)
                torsion_.push_back(s.d(i, i));
    }

    static FgAbGroup free_group(std::size_t rank) { return FgAbGroup(rank, {}); }
    static FgAbGroup trivial() { return FgAbGroup(); }

    std::size_t free_rank() const { return free_rank_; }
    const IntVec &torsion() const { return torsion_; }

    /// Minimal size of a generating set.
    std::size_t rank() const { return free_rank_ + torsion_.size(); }
    std::size_t gen_count() const { return free_rank_ + torsion_.size(); }

    bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
    bool is_finite() const { return free_rank_ == 0; }

    /// Order of the i-th canonical generator; 0 for free generators.
    Int gen_order(std::size_t i) const
    {
        return i < torsion_.size() ? torsion_[i] : Int(0);
    }

    /// Relation lattice in Z^{gen_count}: columns d_i * e_i per torsion gen.
    Mat relation_matrix() const
    {
        Mat r(gen_count(), torsion_.size());
        for (std::size_t i = 0; i < torsion_.size(); ++i)
            r(i, i) = torsion_[i];
        return r;
    }

    /// Canonical coordinate representative: torsion entries reduced to [0, d).
    IntVec reduce(IntVec x) const
    {
        if (x.size() != gen_count())
            throw std::invalid_argument("coordinate dimension mismatch");
        for (std::size_t i = 0; i < torsion_.size(); ++i)
            x[i] = mod_reduce(x[i], torsion_[i]);
        return x;
    }

    bool is_zero_element(const IntVec &x) const
    {
        IntVec r = reduce(x);
        for (const Int &v : r)
            if (v != 0)
                return false;
        return true;
    }

    friend bool operator==(const FgAbGroup &a, const FgAbGroup &b)
    {
        return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
    }
    friend bool operator!=(const FgAbGroup &a, const FgAbGroup &b) { return !(a == b); }

  private:
    std::size_t free_rank_ = 0;
    IntVec torsion_;
};

/// Z^n modulo the column span of a relation matrix, in canonical form,
/// together with ambient Z^n coordinates for each canonical generator.
struct CanonicalQuotient {
    FgAbGroup group;
    Mat generator_coords; // n x group.gen_count()
};

inline CanonicalQuotient canonical_quotient(std::size_t n, const Mat &relations)
{
    if (relations.rows() != n)
        throw std::invalid_argument("relation matrix row count mismatch");
    SmithDecomposition s = smith_normal_form(relations);
    Mat uinv = unimodular_inverse(s.u);
    std::size_t r = std::min(n, relations.cols());

    IntVec torsion;
    std::vector<std::size_t> keep_torsion, keep_free;
    for (std::size_t i = 0; i < n; ++i) {
        Int di = i < r ? s.d(i, i) : Int(0);
        if (di == 1)
            continue;
        if (di == 0)
            keep_free.push_back(i);
        else {
            torsion.push_back(di);
            keep_torsion.push_back(i);
        }
    }
    FgAbGroup g(keep_free.size(), torsion);
    Mat coords(n, g.gen_count());
    std::size_t col = 0;
    for (std::size_t i : keep_torsion)
        coords.set_column(col++, uinv.column(i));
    for (std::size_t i : keep_free)
        coords.set_column(col++, uinv.column(i));
    return CanonicalQuotient{g, coords};
}

/// Homomorphism between finitely generated abelian groups, stored as an
/// integer matrix over the canonical generating sets (one column per source
/// generator, one row per target generator). Well-definedness is checked at
/// construction: d_j times column j must land in the target relation lattice.
class AbHom {
  public:
    AbHom(FgAbGroup source, FgAbGroup target, Mat matrix)
        : source_(std::move(source)), target_(std::move(target)), m_(std::move(matrix))
    {
        if (m_.rows() != target_.gen_count() || m_.cols() != source_.gen_count())
            throw std::invalid_argument("hom matrix shape mismatch");
        for (std::size_t j = 0; j < source_.torsion().size(); ++j) {
            const Int &dj = source_.torsion()[j];
            for (std::size_t i = 0; i < m_.rows(); ++i) {
                Int v = dj * m_(i, j);
                if (!divides(target_.gen_order(i), v))
                    throw std::invalid_argument("hom does not respect source relations");
            }
        }
    }

    static AbHom zero(FgAbGroup source, FgAbGroup target)
    {
        Mat m(target.gen_count(), source.gen_count());
        return AbHom(std::move(source), std::move(target), std::move(m));
    }

    static AbHom identity(FgAbGroup g)
    {
        Mat m = Mat::identity(g.gen_count());
        FgAbGroup h = g;
        return AbHom(std::move(g), std::move(h), std::move(m));
    }

    const FgAbGroup &source() const { return source_; }
    const FgAbGroup &target() const { return target_; }
    const Mat &matrix() const { return m_; }

    IntVec apply(const IntVec &x) const { return target_.reduce(m_ * x); }

    /// this after inner: (*this) o inner.
    AbHom compose(const AbHom &inner) const
    {
        if (!(inner.target_ == source_))
            throw std::invalid_argument("hom composition mismatch");
        return AbHom(inner.source_, target_, m_ * inner.m_);
    }

    bool is_zero() const
    {
        for (std::size_t j = 0; j < m_.cols(); ++j)
            if (!target_.is_zero_element(m_.column(j)))
                return false;
        return true;
    }

    /// Equality as homomorphisms (matrices may differ by target relations).
    bool equals(const AbHom &other) const
    {
        if (!(source_ == other.source_) || !(target_ == other.target_))
            return false;
        for (std::size_t j = 0; j < m_.cols(); ++j) {
            IntVec a = target_.reduce(m_.column(j));
            IntVec b = target_.reduce(other.m_.column(j));
            if (a != b)
                return false;
        }
        return true;
    }

    /// Does w lie in the image? Solves m x = w modulo target relations.
    std::optional<IntVec> preimage(const IntVec &w) const
    {
        Mat stacked = Mat::hcat(m_, target_.relation_matrix());
        std::optional<IntVec> sol = solve(stacked, w);
        if (!sol)
            return std::nullopt;
        IntVec x(m_.cols());
        for (std::size_t i = 0; i < m_.cols(); ++i)
            x[i] = (*sol)[i];
        return x;
    }

    /// Image of the hom as an abstract canonical group.
    FgAbGroup image() const
    {
        // im(f) = source / kernel-lattice, computed from a presentation of
        // the subgroup of the target generated by the columns.
        Mat stacked = Mat::hcat(m_, target_.relation_matrix());
        Mat k = kernel_basis(stacked);
        Mat proj(m_.cols(), k.cols());
        for (std::size_t i = 0; i < m_.cols(); ++i)
            for (std::size_t j = 0; j < k.cols(); ++j)
                proj(i, j) = k(i, j);
        // source coordinates x with f(x) = 0 in the target, plus source
        // relations, present the image as Z^{cols} / ker.
        return canonical_quotient(m_.cols(), proj).group;
    }

  private:
    FgAbGroup source_, target_;
    Mat m_;
};

struct KernelResult {
    FgAbGroup group;
    AbHom inclusion; // into the source of the original hom
};

/// Kernel of f as an abstract group with its inclusion into f's source.
inline KernelResult kernel(const AbHom &f)
{
    const std::size_t m = f.source().gen_count();
    // Lattice K = {x in Z^m : f(x) lies in the target relation lattice}.
    Mat stacked = Mat::hcat(f.matrix(), f.target().relation_matrix());
    Mat knl = kernel_basis(stacked);
    Mat gens(m, knl.cols());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < knl.cols(); ++j)
            gens(i, j) = knl(i, j);
    Mat basis = lattice_basis(gens);

    // K / (source relations) presents the kernel subgroup.
    Mat src_rel = f.source().relation_matrix();
    Mat rel(basis.cols(), src_rel.cols());
    for (std::size_t j = 0; j < src_rel.cols(); ++j) {
        std::optional<IntVec> c = solve(basis, src_rel.column(j));
        if (!c)
            throw std::logic_error("source relation not in kernel lattice");
        rel.set_column(j, *c);
    }
    CanonicalQuotient q = canonical_quotient(basis.cols(), rel);
    Mat inc = basis * q.generator_coords;
    return KernelResult{q.group, AbHom(q.group, f.source(), inc)};
}

/// rank(A): minimal size of a generating set.
inline std::size_t rank(const FgAbGroup &a) { return a.rank(); }

/// Exterior power of a canonical group, p = 2 or 3, via the direct-sum
/// expansion over canonical cyclic summands: each p-subset S of generators
/// contributes a cyclic factor Z/gcd of the orders (0 meaning Z), and the
/// exterior powers of single cyclic summands vanish. Exposes evaluation of
/// decomposables a1 ^ ... ^ ap in the subset-coordinate basis.
struct ExteriorPower {
    FgAbGroup base;
    int p = 2;
    std::vector<std::array<std::size_t, 3>> subsets; // third entry unused for p = 2
    IntVec moduli;                                   // per coordinate, 0 = free
    FgAbGroup group;                                 // canonical form

    std::size_t dim() const { return subsets.size(); }

    IntVec reduce(IntVec coords) const
    {
        if (coords.size() != dim())
            throw std::invalid_argument("exterior coordinate mismatch");
        for (std::size_t s = 0; s < coords.size(); ++s)
            coords[s] = mod_reduce(coords[s], moduli[s]);
        return coords;
    }

    bool is_zero(const IntVec &coords) const
    {
        IntVec r = reduce(coords);
        for (const Int &x : r)
            if (x != 0)
                return false;
        return true;
    }

    /// Coordinates of v1 ^ v2 (^ v3), inputs in base-group coordinates.
    IntVec eval(const std::vector<IntVec> &vs) const
    {
        if (static_cast<int>(vs.size()) != p)
            throw std::invalid_argument("wrong number of factors");
        for (const IntVec &v : vs)
            if (v.size() != base.gen_count())
                throw std::invalid_argument("factor dimension mismatch");
        IntVec out(dim(), Int(0));
        for (std::size_t s = 0; s < dim(); ++s) {
            const auto &t = subsets[s];
            if (p == 2) {
                out[s] = vs[0][t[0]] * vs[1][t[1]] - vs[0][t[1]] * vs[1][t[0]];
            }
            else {
                const std::size_t i = t[0], j = t[1], k = t[2];
                out[s] = vs[0][i] * (vs[1][j] * vs[2][k] - vs[1][k] * vs[2][j]) -
                         vs[0][j] * (vs[1][i] * vs[2][k] - vs[1][k] * vs[2][i]) +
                         vs[0][k] * (vs[1][i] * vs[2][j] - vs[1][j] * vs[2][i]);
            }
            out[s] = mod_reduce(out[s], moduli[s]);
        }
        return out;
    }
};

inline ExteriorPower exterior_power(const FgAbGroup &a, int p)
{
    if (p != 2 && p != 3)
        throw std::invalid_argument("exterior power implemented for p = 2, 3 only");
    ExteriorPower e;
    e.base = a;
    e.p = p;
    const std::size_t n = a.gen_count();
    if (p == 2) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                Int g = gcd(a.gen_order(i), a.gen_order(j));
                if (g == 1)
                    continue;
                e.subsets.push_back({i, j, 0});
                e.moduli.push_back(g);
            }
    }
    else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k) {
                    Int g = gcd(gcd(a.gen_order(i), a.gen_order(j)), a.gen_order(k));
                    if (g == 1)
                        continue;
                    e.subsets.push_back({i, j, k});
                    e.moduli.push_back(g);
                }
    }
    std::size_t free = 0;
    IntVec torsion;
    for (const Int &m : e.moduli) {
        if (m == 0)
            ++free;
        else
            torsion.push_back(m);
    }
    std::sort(torsion.begin(), torsion.end());
    e.group = FgAbGroup(free, torsion);
    return e;
}

} // namespace torelli
