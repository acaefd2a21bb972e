#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "weitz/rational.hpp"

namespace weitz {

/// Element of the field Q(i, sqrt2, sqrt3), stored on the basis
///   1, i, r2, i*r2, r3, i*r3, r6, i*r6        (r2 = sqrt2, r3 = sqrt3, r6 = r2*r3).
/// Component index bits: bit0 = i, bit1 = r2, bit2 = r3. This covers every
/// irrational constant the supported holonomy contexts produce: basis
/// normalizations with squarefree norm part in {1,2,3,6}, Clifford sqrt2
/// and the complex unit.
class Scalar {
public:
    Scalar() = default;
    Scalar(const Rat& r) { c_[0] = r; }          // NOLINT: implicit by design
    Scalar(long n) { c_[0] = rat(n); }           // NOLINT
    Scalar(long n, long d) { c_[0] = rat(n, d); }

    static Scalar i() { return unit(1); }
    static Scalar r2() { return unit(2); }
    static Scalar r3() { return unit(4); }
    static Scalar r6() { return unit(6); }

    /// sqrt of a positive rational; requires squarefree part in {1,2,3,6}.
    static Scalar sqrt_rational(const Rat& q);

    const Rat& comp(int k) const { return c_[k]; }
    Rat& comp(int k) { return c_[k]; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (sgn(x) != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (int k = 1; k < 8; ++k)
            if (sgn(c_[k]) != 0) return false;
        return true;
    }
    bool is_real() const {
        for (int k : {1, 3, 5, 7})
            if (sgn(c_[k]) != 0) return false;
        return true;
    }
    const Rat& rational_part() const { return c_[0]; }

    /// Exact rational value; throws if irrational components are present.
    Rat to_rational() const {
        if (!is_rational()) throw structural_error("scalar is not rational: " + to_string());
        return c_[0];
    }

    Scalar conj_i() const { return flip(1); }    // i -> -i
    Scalar conj_r2() const { return flip(2); }   // r2 -> -r2
    Scalar conj_r3() const { return flip(4); }   // r3 -> -r3

    Scalar operator-() const {
        Scalar r;
        for (int k = 0; k < 8; ++k) r.c_[k] = -c_[k];
        return r;
    }

    Scalar& operator+=(const Scalar& o) {
        for (int k = 0; k < 8; ++k)
            if (sgn(o.c_[k]) != 0) c_[k] += o.c_[k];
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        for (int k = 0; k < 8; ++k)
            if (sgn(o.c_[k]) != 0) c_[k] -= o.c_[k];
        return *this;
    }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this * o.inverse(); }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        Scalar r;
        for (int k = 0; k < 8; ++k) {
            if (sgn(a.c_[k]) == 0) continue;
            for (int l = 0; l < 8; ++l) {
                if (sgn(b.c_[l]) == 0) continue;
                Rat t = a.c_[k] * b.c_[l];
                if (k & l & 1) t = -t;        // i*i = -1
                if (k & l & 2) t *= 2;        // r2*r2 = 2
                if (k & l & 4) t *= 3;        // r3*r3 = 3
                r.c_[k ^ l] += t;
            }
        }
        return r;
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        for (int k = 0; k < 8; ++k)
            if (a.c_[k] != b.c_[k]) return false;
        return true;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar inverse() const;

    /// Complex conjugate (i -> -i); real square roots are fixed.
    Scalar conj() const { return conj_i(); }

    double to_double_real() const;   // real part as double
    double to_double_imag() const;   // imaginary part as double

    /// Exact-scalar string encoding: sum of terms "p/q", "p/q*i", "p/q*r2",
    /// "p/q*i*r2", "p/q*r3", ... Zero prints as "0".
    std::string to_string() const;

    /// Parse the to_string encoding.
    static Scalar from_string(const std::string& s);

private:
    static Scalar unit(int k) {
        Scalar s;
        s.c_[k] = 1;
        return s;
    }
    Scalar flip(int bit) const {
        Scalar r = *this;
        for (int k = 0; k < 8; ++k)
            if (k & bit) r.c_[k] = -r.c_[k];
        return r;
    }

    std::array<Rat, 8> c_{};
};

inline Scalar operator*(const Rat& a, const Scalar& b) { return Scalar(a) * b; }

}  // namespace weitz
