#pragma once

#include "torelli/matrix.hpp"

#include <cstdlib>
#include <optional>
#include <stdexcept>

namespace torelli {

// Smith decomposition d = u * m * v with u, v unimodular and d diagonal
// with a divisibility chain d1 | d2 | ... All arithmetic is exact.
struct SmithDecomposition {
    Mat u, d, v;

    std::size_t rank() const
    {
        std::size_t r = 0;
        std::size_t n = std::min(d.rows(), d.cols());
        for (std::size_t i = 0; i < n; ++i)
            if (d(i, i) != 0)
                ++r;
        return r;
    }

    IntVec diagonal() const
    {
        std::size_t n = std::min(d.rows(), d.cols());
        IntVec out(n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = d(i, i);
        return out;
    }
};

namespace detail {

inline void add_row(Mat &a, Mat &u, std::size_t dst, std::size_t src, const Int &c)
{
    for (std::size_t j = 0; j < a.cols(); ++j)
        a(dst, j) += c * a(src, j);
    for (std::size_t j = 0; j < u.cols(); ++j)
        u(dst, j) += c * u(src, j);
}

inline void add_col(Mat &a, Mat &v, std::size_t dst, std::size_t src, const Int &c)
{
    for (std::size_t i = 0; i < a.rows(); ++i)
        a(i, dst) += c * a(i, src);
    for (std::size_t i = 0; i < v.rows(); ++i)
        v(i, dst) += c * v(i, src);
}

inline void swap_rows(Mat &a, Mat &u, std::size_t i, std::size_t j)
{
    if (i == j)
        return;
    for (std::size_t k = 0; k < a.cols(); ++k)
        std::swap(a(i, k), a(j, k));
    for (std::size_t k = 0; k < u.cols(); ++k)
        std::swap(u(i, k), u(j, k));
}

inline void swap_cols(Mat &a, Mat &v, std::size_t i, std::size_t j)
{
    if (i == j)
        return;
    for (std::size_t k = 0; k < a.rows(); ++k)
        std::swap(a(k, i), a(k, j));
    for (std::size_t k = 0; k < v.rows(); ++k)
        std::swap(v(k, i), v(k, j));
}

inline void negate_row(Mat &a, Mat &u, std::size_t i)
{
    for (std::size_t k = 0; k < a.cols(); ++k)
        a(i, k) = -a(i, k);
    for (std::size_t k = 0; k < u.cols(); ++k)
        u(i, k) = -u(i, k);
}

} // namespace detail

inline SmithDecomposition smith_normal_form(const Mat &m)
{
    Mat a = m;
    Mat u = Mat::identity(m.rows());
    Mat v = Mat::identity(m.cols());
    const std::size_t n = std::min(m.rows(), m.cols());

    for (std::size_t s = 0; s < n; ++s) {
        for (;;) {
            // Pivot: smallest nonzero |entry| in the trailing block.
            std::size_t pi = s, pj = s;
            bool found = false;
            for (std::size_t i = s; i < a.rows(); ++i)
                for (std::size_t j = s; j < a.cols(); ++j)
                    if (a(i, j) != 0) {
                        if (!found || cmp(abs(a(i, j)), abs(a(pi, pj))) < 0) {
                            pi = i;
                            pj = j;
                            found = true;
                        }
                    }
            if (!found)
                goto done;
            detail::swap_rows(a, u, s, pi);
            detail::swap_cols(a, v, s, pj);

            bool clean = true;
            for (std::size_t i = s + 1; i < a.rows(); ++i)
                if (a(i, s) != 0) {
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), a(i, s).get_mpz_t(), a(s, s).get_mpz_t());
                    detail::add_row(a, u, i, s, -q);
                    if (a(i, s) != 0)
                        clean = false;
                }
            for (std::size_t j = s + 1; j < a.cols(); ++j)
                if (a(s, j) != 0) {
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), a(s, j).get_mpz_t(), a(s, s).get_mpz_t());
                    detail::add_col(a, v, j, s, -q);
                    if (a(s, j) != 0)
                        clean = false;
                }
            if (!clean)
                continue;

            // Pivot divides every entry of the trailing block, or pull a bad
            // row up and restart this stage.
            bool divides_all = true;
            for (std::size_t i = s + 1; i < a.rows() && divides_all; ++i)
                for (std::size_t j = s + 1; j < a.cols(); ++j)
                    if (!divides(a(s, s), a(i, j))) {
                        detail::add_row(a, u, s, i, Int(1));
                        divides_all = false;
                        break;
                    }
            if (divides_all)
                break;
        }
    }
done:
    for (std::size_t s = 0; s < n; ++s)
        if (a(s, s) < 0)
            detail::negate_row(a, u, s);
    return SmithDecomposition{std::move(u), std::move(a), std::move(v)};
}

// Basis of the integer kernel lattice {x : m x = 0}, as matrix columns.
inline Mat kernel_basis(const Mat &m)
{
    SmithDecomposition s = smith_normal_form(m);
    std::size_t r = s.rank();
    Mat k(m.cols(), m.cols() - r);
    for (std::size_t j = r; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.cols(); ++i)
            k(i, j - r) = s.v(i, j);
    return k;
}

// One integer solution of m x = w, if any.
inline std::optional<IntVec> solve(const Mat &m, const IntVec &w)
{
    if (w.size() != m.rows())
        throw std::invalid_argument("solve: dimension mismatch");
    SmithDecomposition s = smith_normal_form(m);
    IntVec y = s.u * w;
    IntVec z(m.cols(), Int(0));
    std::size_t n = std::min(m.rows(), m.cols());
    for (std::size_t i = 0; i < y.size(); ++i) {
        Int di = i < n ? s.d(i, i) : Int(0);
        if (di == 0) {
            if (y[i] != 0)
                return std::nullopt;
        }
        else {
            if (!divides(di, y[i]))
                return std::nullopt;
            z[i] = y[i] / di;
        }
    }
    return s.v * z;
}

inline bool lattice_contains(const Mat &basis, const IntVec &x)
{
    return solve(basis, x).has_value();
}

// Column span comparison of two lattices in the same ambient Z^n.
inline bool lattice_subset(const Mat &inner, const Mat &outer)
{
    for (std::size_t j = 0; j < inner.cols(); ++j)
        if (!lattice_contains(outer, inner.column(j)))
            return false;
    return true;
}

inline bool lattice_equal(const Mat &a, const Mat &b)
{
    return lattice_subset(a, b) && lattice_subset(b, a);
}

// True when the columns of m span all of Z^rows (all invariant factors 1).
inline bool spans_full_lattice(const Mat &m)
{
    SmithDecomposition s = smith_normal_form(m);
    if (s.rank() != m.rows())
        return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (s.d(i, i) != 1)
            return false;
    return true;
}

// Inverse of a unimodular matrix, exact.
inline Mat unimodular_inverse(const Mat &m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("matrix is not square");
    SmithDecomposition s = smith_normal_form(m);
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
        if (s.d(i, i) != 1)
            throw std::invalid_argument("matrix is not unimodular");
    // d = u m v = I, so m^{-1} = v u.
    return s.v * s.u;
}

// Basis (as columns) of the lattice spanned by the columns of gens.
inline Mat lattice_basis(const Mat &gens)
{
    SmithDecomposition s = smith_normal_form(gens);
    std::size_t r = s.rank();
    Mat uinv = unimodular_inverse(s.u);
    Mat basis(gens.rows(), r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < gens.rows(); ++i)
            basis(i, j) = uinv(i, j) * s.d(j, j);
    return basis;
}

inline bool is_unimodular(const Mat &m)
{
    if (m.rows() != m.cols())
        return false;
    Int d = m.det();
    return d == 1 || d == -1;
}

} // namespace torelli
