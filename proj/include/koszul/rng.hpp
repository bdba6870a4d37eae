#pragma once
// Deterministic splitmix64 stream; identical across platforms and compilers,
// so seeded corpora and frozen expected values are stable.

#include <cstdint>

namespace koszul {

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// uniform in [0, n)
    std::uint64_t uniform(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
    /// uniform in [lo, hi] inclusive
    long range(long lo, long hi) { return lo + static_cast<long>(uniform(static_cast<std::uint64_t>(hi - lo + 1))); }
    Rng fork(std::uint64_t salt) { return Rng(next() ^ (salt * 0x9e3779b97f4a7c15ULL)); }
};

}  // namespace koszul
