#pragma once

#include <cstdint>
#include <random>

#include "viikit/rational.hpp"

namespace viikit {

// Deterministic random source for property suites and identity trials.
// mt19937_64 output is fully specified by the standard, and we reduce by
// modulo (never std::uniform_int_distribution, whose mapping is
// implementation-defined), so a seed pins the exact stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64(std::uint64_t bound) {
        if (bound == 0) throw Error("Rng: zero bound");
        return engine_() % bound;
    }

    long long integer(long long lo, long long hi) {
        if (lo > hi) throw Error("Rng: empty range");
        return lo + (long long)next_u64((std::uint64_t)(hi - lo + 1));
    }

    // Positive rational with numerator and denominator uniform in [1, 50].
    Rational rational() { return Rational(BigInt(integer(1, 50)), BigInt(integer(1, 50))); }

private:
    std::mt19937_64 engine_;
};

}  // namespace viikit
