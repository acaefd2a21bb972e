#pragma once

#include <cstdint>
#include <random>

#include "weitz/rational.hpp"

namespace weitz {

/// Deterministic seeded generator. std::mt19937_64 has a fixed cross-platform
/// sequence; distributions are hand-rolled below because the standard ones are
/// not reproducible across implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return gen_() % n; }

    /// Uniform integer in [lo, hi].
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Small random rational: numerator in [-max_num, max_num], denominator in [1, max_den].
    Rat rational(long max_num, long max_den) {
        return rat(range(-max_num, max_num), range(1, max_den));
    }

    /// Uniform double in [0,1).
    double real() { return static_cast<double>(gen_() >> 11) * (1.0 / 9007199254740992.0); }

    /// Standard normal (Box-Muller).
    double normal();

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

inline double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0, u2 = 0.0;
    do {
        u1 = real();
    } while (u1 <= 1e-300);
    u2 = real();
    double mag = std::sqrt(-2.0 * std::log(u1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    spare_ = mag * std::sin(two_pi * u2);
    have_spare_ = true;
    return mag * std::cos(two_pi * u2);
}

}  // namespace weitz
