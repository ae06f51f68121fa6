#pragma once

#include "torelli/int.hpp"

#include <cassert>
#include <initializer_list>
#include <stdexcept>
#include <utility>

namespace torelli {

// Dense integer matrix, row-major. Small by design: every matrix in this
// library is a presentation, pairing or action matrix of desk-scale size.
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

    Mat(std::initializer_list<std::initializer_list<long>> init)
    {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (const auto &row : init) {
            if (row.size() != cols_)
                throw std::invalid_argument("ragged matrix initializer");
            for (long x : row)
                a_.emplace_back(x);
        }
    }

    static Mat identity(std::size_t n)
    {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static Mat from_columns(std::size_t dim, const std::vector<IntVec> &cols)
    {
        Mat m(dim, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != dim)
                throw std::invalid_argument("column dimension mismatch");
            for (std::size_t i = 0; i < dim; ++i)
                m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int &operator()(std::size_t i, std::size_t j)
    {
        assert(i < rows_ && j < cols_);
        return a_[i * cols_ + j];
    }
    const Int &operator()(std::size_t i, std::size_t j) const
    {
        assert(i < rows_ && j < cols_);
        return a_[i * cols_ + j];
    }

    IntVec column(std::size_t j) const
    {
        IntVec v(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            v[i] = (*this)(i, j);
        return v;
    }

    IntVec row(std::size_t i) const
    {
        IntVec v(cols_);
        for (std::size_t j = 0; j < cols_; ++j)
            v[j] = (*this)(i, j);
        return v;
    }

    void set_column(std::size_t j, const IntVec &v)
    {
        assert(v.size() == rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) = v[i];
    }

    Mat transpose() const
    {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const
    {
        for (const Int &x : a_)
            if (x != 0)
                return false;
        return true;
    }

    friend bool operator==(const Mat &x, const Mat &y)
    {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const Mat &x, const Mat &y) { return !(x == y); }

    friend Mat operator*(const Mat &x, const Mat &y)
    {
        if (x.cols_ != y.rows_)
            throw std::invalid_argument("matrix product shape mismatch");
        Mat z(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const Int &xik = x(i, k);
                if (xik == 0)
                    continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    z(i, j) += xik * y(k, j);
            }
        return z;
    }

    friend Mat operator+(const Mat &x, const Mat &y)
    {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw std::invalid_argument("matrix sum shape mismatch");
        Mat z = x;
        for (std::size_t i = 0; i < z.a_.size(); ++i)
            z.a_[i] += y.a_[i];
        return z;
    }

    friend Mat operator-(const Mat &x, const Mat &y)
    {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw std::invalid_argument("matrix difference shape mismatch");
        Mat z = x;
        for (std::size_t i = 0; i < z.a_.size(); ++i)
            z.a_[i] -= y.a_[i];
        return z;
    }

    friend IntVec operator*(const Mat &m, const IntVec &v)
    {
        if (m.cols_ != v.size())
            throw std::invalid_argument("matrix-vector shape mismatch");
        IntVec w(m.rows_, Int(0));
        for (std::size_t i = 0; i < m.rows_; ++i)
            for (std::size_t j = 0; j < m.cols_; ++j)
                if (m(i, j) != 0)
                    w[i] += m(i, j) * v[j];
        return w;
    }

    // Exact determinant by fraction-free (Bareiss) elimination.
    Int det() const
    {
        if (rows_ != cols_)
            throw std::invalid_argument("determinant of non-square matrix");
        std::size_t n = rows_;
        if (n == 0)
            return 1;
        Mat a = *this;
        Int prev = 1;
        int sign = 1;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (a(k, k) == 0) {
                std::size_t piv = k;
                while (piv < n && a(piv, k) == 0)
                    ++piv;
                if (piv == n)
                    return 0;
                for (std::size_t j = 0; j < n; ++j)
                    std::swap(a(k, j), a(piv, j));
                sign = -sign;
            }
            for (std::size_t i = k + 1; i < n; ++i)
                for (std::size_t j = k + 1; j < n; ++j) {
                    Int num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                    mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                }
            prev = a(k, k);
        }
        return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
    }

    // Horizontal concatenation [x | y].
    static Mat hcat(const Mat &x, const Mat &y)
    {
        if (x.rows_ != y.rows_)
            throw std::invalid_argument("hcat row mismatch");
        Mat z(x.rows_, x.cols_ + y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i) {
            for (std::size_t j = 0; j < x.cols_; ++j)
                z(i, j) = x(i, j);
            for (std::size_t j = 0; j < y.cols_; ++j)
                z(i, x.cols_ + j) = y(i, j);
        }
        return z;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

} // namespace torelli
