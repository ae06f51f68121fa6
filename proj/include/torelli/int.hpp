#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace torelli {

// Exact arbitrary-precision integers and rationals. The whole library is
// integer-exact; no floating point is used anywhere.
using Int = mpz_class;
using Rat = mpq_class;

using IntVec = std::vector<Int>;

inline Int gcd(const Int &a, const Int &b)
{
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int &a, const Int &b)
{
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Canonical representative of x modulo d in [0, d). d = 0 means no reduction.
inline Int mod_reduce(const Int &x, const Int &d)
{
    if (d == 0)
        return x;
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    return r;
}

inline bool divides(const Int &d, const Int &x)
{
    if (d == 0)
        return x == 0;
    return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

// gcd of a vector's entries (content); 0 for the zero vector.
inline Int content(const IntVec &v)
{
    Int g = 0;
    for (const Int &x : v)
        g = gcd(g, x);
    return g;
}

inline std::string to_string(const Int &x) { return x.get_str(); }

} // namespace torelli
