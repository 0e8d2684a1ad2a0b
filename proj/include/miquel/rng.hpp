#pragma once

#include <cstdint>

namespace miquel {

/// splitmix64: tiny, portable, identical across platforms. Streams are split
/// per row so partial regeneration is stable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    static Rng stream(std::uint64_t seed, std::uint64_t idx) {
        Rng r(seed ^ (0x9E3779B97F4A7C15ULL * (idx + 1)));
        r.next();
        return r;
    }

    std::uint64_t next() {
        s_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = s_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform(double lo = 0.0, double hi = 1.0) {
        return lo + (hi - lo) * (double(next() >> 11) * 0x1p-53);
    }

private:
    std::uint64_t s_;
};

}  // namespace miquel
