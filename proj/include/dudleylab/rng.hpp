#pragma once

#include <cstdint>

namespace dudleylab {

// SplitMix64 (Steele/Lea/Flood). Chosen over <random> engines because the
// output stream is fixed by the algorithm, not by the standard library
// implementation, so seeded results are reproducible bit-for-bit across
// platforms. split() derives an independent stream per index, which keeps
// per-entry sampling order-independent.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 random bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform integer in {lo, ..., hi}. Modulo bias is irrelevant at the
    // ranges used here (spans far below 2^32).
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next() % span);
    }

    // Independent child stream; deterministic in (state, stream).
    SplitMix64 split(std::uint64_t stream) const {
        SplitMix64 mixer(state_ ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
        return SplitMix64(mixer.next());
    }

private:
    std::uint64_t state_;
};

} // namespace dudleylab
