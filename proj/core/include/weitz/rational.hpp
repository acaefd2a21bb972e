#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "weitz/errors.hpp"

namespace weitz {

/// Exact rational scalar. All algebra in the library is exact; doubles
/// appear only in the Monte Carlo sampler and the eigenvalue bridge.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

inline std::string to_string(const Rat& q) { return q.get_str(); }

/// Parses "p" or "p/q". Throws input_error on junk.
inline Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw input_error("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

inline double to_double(const Rat& q) { return q.get_d(); }

/// Splits a positive rational as q = (p/r)^2 * s with s squarefree,
/// by trial division of num*den. Used when a square root of q is required.
struct SquarefreeSplit {
    Rat root_rational;  // p/r
    long squarefree;    // s
};

inline SquarefreeSplit squarefree_split(const Rat& q) {
    if (sgn(q) <= 0) throw input_error("squarefree_split: argument must be positive");
    mpz_class n = q.get_num() * q.get_den();
    mpz_class k = 1;
    long s = 1;
    for (mpz_class p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        for (unsigned i = 0; i + 1 < e; i += 2) k *= p;
        if (e % 2 == 1) {
            if (!p.fits_slong_p()) throw structural_error("squarefree part overflow");
            s *= p.get_si();
        }
    }
    if (n > 1) {
        if (!n.fits_slong_p()) throw structural_error("squarefree part overflow");
        s *= n.get_si();
    }
    Rat root(k, q.get_den());
    root.canonicalize();
    return {root, s};
}

}  // namespace weitz
