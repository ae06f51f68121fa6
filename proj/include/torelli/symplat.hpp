#pragma once

#include "torelli/abgroup.hpp"

namespace torelli {

/// Free lattice Z^{2g} with the standard symplectic form in the coordinate
/// order (a1, b1, a2, b2, ..., ag, bg): omega(a_i, b_i) = +1,
/// omega(b_i, a_i) = -1, all other basis pairings zero.
class SymplLattice {
  public:
    explicit SymplLattice(std::size_t genus) : genus_(genus) {}

    std::size_t genus() const { return genus_; }
    std::size_t dim() const { return 2 * genus_; }

    FgAbGroup group() const { return FgAbGroup::free_group(dim()); }

    /// Gram matrix J of the form; J^2 = -I.
    Mat gram() const
    {
        Mat j(dim(), dim());
        for (std::size_t i = 0; i < genus_; ++i) {
            j(2 * i, 2 * i + 1) = 1;
            j(2 * i + 1, 2 * i) = -1;
        }
        return j;
    }

    Int omega(const IntVec &u, const IntVec &v) const
    {
        if (u.size() != dim() || v.size() != dim())
            throw std::invalid_argument("symplectic pairing dimension mismatch");
        Int s = 0;
        for (std::size_t i = 0; i < genus_; ++i)
            s += u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i];
        return s;
    }

    friend bool operator==(const SymplLattice &x, const SymplLattice &y)
    {
        return x.genus_ == y.genus_;
    }

  private:
    std::size_t genus_;
};

/// Sublattice of a symplectic lattice on which the restricted form is
/// unimodular (so the ambient splits as W + W-perp). Basis vectors are the
/// columns of `basis`.
struct SymplSubspace {
    SymplLattice ambient;
    Mat basis;

    std::size_t genus() const { return basis.cols() / 2; }

    Mat gram() const { return basis.transpose() * ambient.gram() * basis; }
};

/// True iff the Gram matrix of the restricted form on the span of the given
/// vectors is unimodular (skew is automatic). Odd or degenerate spans give
/// false, not an error.
inline bool is_symplectic_subspace(const std::vector<IntVec> &vectors, const SymplLattice &v)
{
    Mat b = Mat::from_columns(v.dim(), vectors);
    Mat g = b.transpose() * v.gram() * b;
    if (g.rows() == 0)
        return true; // the zero subspace is symplectic of genus 0
    Int d = g.det();
    return d == 1 || d == -1;
}

inline SymplSubspace make_symplectic_subspace(const SymplLattice &v, const Mat &basis)
{
    std::vector<IntVec> cols;
    for (std::size_t j = 0; j < basis.cols(); ++j)
        cols.push_back(basis.column(j));
    if (!is_symplectic_subspace(cols, v))
        throw std::invalid_argument("not a symplectic subspace");
    return SymplSubspace{v, basis};
}

namespace detail {

/// Change of basis bringing a unimodular skew Gram matrix to the standard
/// block form: returns T with T^t G T = J. Integer symplectic Gram-Schmidt.
inline Mat standard_symplectic_transform(Mat g)
{
    const std::size_t n = g.rows();
    if (n % 2 != 0)
        throw std::invalid_argument("odd rank cannot be symplectic");

    std::vector<IntVec> out;
    std::vector<IntVec> work;
    for (std::size_t j = 0; j < n; ++j)
        work.push_back(Mat::identity(n).column(j));

    while (!work.empty()) {
        // u = first working vector; its pairing functional is primitive
        // because the form is unimodular on the working sublattice.
        Mat wb = Mat::from_columns(n, work);
        Mat gw = wb.transpose() * g * wb; // Gram in working coordinates
        const std::size_t m = work.size();
        IntVec r(m);
        for (std::size_t j = 0; j < m; ++j)
            r[j] = gw(0, j);
        Mat rm(1, m);
        for (std::size_t j = 0; j < m; ++j)
            rm(0, j) = r[j];
        SmithDecomposition s = smith_normal_form(rm);
        if (s.d(0, 0) != 1)
            throw std::invalid_argument("form is not unimodular on the subspace");
        // Particular solution of r . w = 1.
        IntVec e(1, Int(0));
        e[0] = s.u(0, 0); // u is 1x1, +-1
        IntVec wcoef = s.v.column(0);
        for (Int &c : wcoef)
            c *= e[0];
        // u, v pair in ambient coordinates.
        IntVec u = work[0];
        IntVec v(n, Int(0));
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < n; ++i)
                v[i] += wcoef[j] * work[j][i];
        // Project the remaining working vectors into the perp of <u, v>:
        // y -> y + omega(v,y) u - omega(u,y) v, with omega(u,v) = 1.
        auto om = [&](const IntVec &x, const IntVec &y) {
            Int acc = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (g(i, j) != 0)
                        acc += x[i] * g(i, j) * y[j];
            return acc;
        };
        std::vector<IntVec> next;
        for (std::size_t j = 1; j < m; ++j) {
            IntVec y = work[j];
            Int cu = om(v, y), cv = om(u, y);
            for (std::size_t i = 0; i < n; ++i)
                y[i] += cu * u[i] - cv * v[i];
            next.push_back(std::move(y));
        }
        // Drop the dependent vector (v was a combination of work vectors);
        // the projected family spans the perp complement with one redundancy.
        // Reduce to a basis of the projected lattice.
        if (!next.empty()) {
            Mat nm = Mat::from_columns(n, next);
            Mat nb = lattice_basis(nm);
            next.clear();
            for (std::size_t j = 0; j < nb.cols(); ++j)
                next.push_back(nb.column(j));
        }
        out.push_back(u);
        out.push_back(v);
        work = std::move(next);
    }
    return Mat::from_columns(n, out);
}

} // namespace detail

/// Orthogonal complement with respect to the symplectic form; the returned
/// basis is itself in symplectic standard form, so ambient = W + W-perp.
inline SymplSubspace perp_complement(const SymplSubspace &w)
{
    const SymplLattice &v = w.ambient;
    if (w.basis.cols() > 0) {
        Int d = w.gram().det();
        if (d != 1 && d != -1)
            throw std::invalid_argument("not a symplectic subspace");
    }
    // Kernel of x -> (omega(w_j, x))_j.
    Mat pair = w.basis.transpose() * v.gram(); // (2h) x (2g)
    Mat perp = kernel_basis(pair);
    if (perp.cols() == 0)
        return SymplSubspace{v, Mat(v.dim(), 0)};
    Mat gram = perp.transpose() * v.gram() * perp;
    Mat t = detail::standard_symplectic_transform(gram);
    return SymplSubspace{v, perp * t};
}

namespace detail {

/// Primitive vector congruent to m mod d whose pairing functional is
/// surjective: content 1. Uses gcd(content(m), d) = 1.
inline IntVec primitive_lift(const IntVec &m, const Int &d)
{
    Int c = content(m);
    if (c == 1)
        return m;
    if (d == 0)
        throw std::logic_error("functional not primitive with no modulus to adjust by");
    Mat col(m.size(), 1);
    for (std::size_t i = 0; i < m.size(); ++i)
        col(i, 0) = m[i];
    SmithDecomposition s = smith_normal_form(col);
    // u * (v00 * m) = (c, 0, ..., 0); adding d * u^{-1} e2 makes the content
    // gcd(c, d) = 1, and the sign flip keeps the result congruent to m mod d.
    if (m.size() < 2)
        throw std::logic_error("rank too small to adjust lift");
    Mat uinv = unimodular_inverse(s.u);
    Int v00 = s.v(0, 0);
    IntVec adj = uinv.column(1);
    IntVec out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        out[i] = m[i] + v00 * d * adj[i];
    return out;
}

} // namespace detail

/// Constructive symplectic support: given a homomorphism mu from a
/// symplectic lattice V to a finitely generated abelian group A, produce a
/// symplectic subspace W of genus at most rank(A) with mu vanishing on
/// W-perp. Inductive construction: replace A by the image of mu, split off a
/// cyclic quotient through the last canonical generator, realize the lifted
/// functional as omega(a, -) with a primitive, pick b with omega(a, b) = 1
/// (deterministic SNF particular solution), and recurse on <a, b>-perp.
inline SymplSubspace support_subspace(const AbHom &mu_in, const SymplLattice &v)
{
    if (!(mu_in.source() == v.group()))
        throw std::invalid_argument("marking source is not the symplectic lattice");

    std::vector<IntVec> pairs; // accumulated standard-basis vectors of W

    // Work state: embedding of the current symplectic sublattice into V
    // (columns in standard symplectic order) and the restricted marking.
    Mat embed = Mat::identity(v.dim());
    Mat mu = mu_in.matrix();
    FgAbGroup target = mu_in.target();

    for (;;) {
        std::size_t dim = embed.cols();
        if (dim == 0)
            break;
        // Canonicalize onto the image of the current marking.
        Mat stacked = Mat::hcat(mu, target.relation_matrix());
        Mat knl = kernel_basis(stacked);
        Mat proj(dim, knl.cols());
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < knl.cols(); ++j)
                proj(i, j) = knl(i, j);
        CanonicalQuotient img = canonical_quotient(dim, proj);
        if (img.group.is_trivial())
            break;
        // Surjection onto the image in canonical coordinates: x maps to its
        // class in Z^dim / ker; generator_coords columns are a section, and
        // the change of coordinates recovering class coordinates is the
        // corresponding block of u from the SNF used by canonical_quotient.
        // Recompute directly: solve generator_coords * y = x mod ker.
        // Cheaper: express the quotient map via the kernel presentation.
        Mat full = Mat::hcat(img.generator_coords, proj);
        // full has full column-rank span = Z^dim; solve for each basis vector.
        Mat quot(img.group.gen_count(), dim);
        for (std::size_t j = 0; j < dim; ++j) {
            IntVec ej(dim, Int(0));
            ej[j] = 1;
            std::optional<IntVec> sol = solve(full, ej);
            if (!sol)
                throw std::logic_error("image section failed to span");
            for (std::size_t i = 0; i < img.group.gen_count(); ++i)
                quot(i, j) = (*sol)[i];
        }
        // Cyclic quotient through the last canonical generator.
        std::size_t last = img.group.gen_count() - 1;
        Int d = img.group.gen_order(last);
        IntVec functional = quot.row(last); // V_cur -> Z/d (or Z), surjective
        for (Int &x : functional)
            x = mod_reduce(x, d);
        IntVec prim = detail::primitive_lift(functional, d);

        // a = J m' realizes omega(a, -) = m'; b solves omega(a, b) = 1.
        SymplLattice cur(dim / 2);
        Mat j = cur.gram();
        IntVec a(dim, Int(0));
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t k = 0; k < dim; ++k)
                if (j(i, k) != 0)
                    a[i] += j(i, k) * prim[k];
        Mat arow(1, dim);
        {
            IntVec af = prim; // omega(a, x) = prim . x
            for (std::size_t k = 0; k < dim; ++k)
                arow(0, k) = af[k];
        }
        SmithDecomposition s = smith_normal_form(arow);
        if (s.d(0, 0) != 1)
            throw std::logic_error("primitive functional expected");
        IntVec b = s.v.column(0);
        for (Int &x : b)
            x *= s.u(0, 0);

        pairs.push_back(embed * a);
        pairs.push_back(embed * b);

        // Perp of <a, b> inside the current lattice, in standard form.
        Mat ab = Mat::from_columns(dim, {a, b});
        Mat pairrows = ab.transpose() * j;
        Mat perp = kernel_basis(pairrows);
        if (perp.cols() == 0)
            break;
        Mat gram = perp.transpose() * j * perp;
        Mat t = detail::standard_symplectic_transform(gram);
        Mat step = perp * t;
        mu = mu * step;
        embed = embed * step;
    }

    Mat basis = Mat::from_columns(v.dim(), pairs);
    return SymplSubspace{v, basis};
}

/// Independent postcondition check: mu restricted to the perp of W is zero.
inline bool vanishes_on_perp(const AbHom &mu, const SymplSubspace &w)
{
    SymplSubspace p = perp_complement(w);
    Mat restricted = mu.matrix() * p.basis;
    for (std::size_t jcol = 0; jcol < restricted.cols(); ++jcol)
        if (!mu.target().is_zero_element(restricted.column(jcol)))
            return false;
    return true;
}

} // namespace torelli
