#pragma once

#include <cstdint>

#include "mpair/field.hpp"

namespace mpair {

// splitmix64. Self-contained so seeded streams are identical across
// platforms and standard library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

    bool chance(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return next() < static_cast<std::uint64_t>(p * 18446744073709551615.0);
    }

    Coefficient element(Field f) {
        if (f.is_rationals()) {
            const long long num = static_cast<long long>(below(9)) - 4;
            const long long den = 1 + static_cast<long long>(below(3));
            return Coefficient::from_rational(f, Rational(num, den));
        }
        return Coefficient::from_integer(f, static_cast<long long>(below(f.characteristic())));
    }

    Coefficient nonzero_element(Field f) {
        if (f.is_rationals()) {
            const long long mag = 1 + static_cast<long long>(below(4));
            const long long den = 1 + static_cast<long long>(below(3));
            const long long sign = chance(0.5) ? 1 : -1;
            return Coefficient::from_rational(f, Rational(sign * mag, den));
        }
        return Coefficient::from_integer(f, 1 + static_cast<long long>(below(f.characteristic() - 1)));
    }

private:
    std::uint64_t s_;
};

} // namespace mpair
