#pragma once

#include <cstdint>

namespace polyapx {

// Counter-based splitmix64: value i of stream `seed` is mix(seed + (i+1)·γ).
// Portable; any implementation can regenerate the same corpus from the seed.
class Rng {
public:
    explicit Rng(uint64_t seed) : seed_(seed) {}

    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    uint64_t next() { return mix(seed_ + (++ctr_) * 0x9E3779B97F4A7C15ULL); }
    // uniform in [0, bound) by rejection
    uint64_t below(uint64_t bound) {
        if (bound <= 1) return 0;
        const uint64_t lim = UINT64_MAX - UINT64_MAX % bound;
        uint64_t x;
        do x = next();
        while (x >= lim);
        return x % bound;
    }
    long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1))); }
    bool coin() { return next() >> 63; }

private:
    uint64_t seed_;
    uint64_t ctr_ = 0;
};

}  // namespace polyapx
