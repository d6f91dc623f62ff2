// rng.hpp — per-trajectory random streams keyed by (seed, stream index)

#pragma once

#include <cstdint>
#include <random>

namespace rydcqed {

// A Mersenne-Twister engine whose state is derived from (seed, stream) through
// std::seed_seq, so trajectory i draws the same numbers no matter which worker
// runs it or in which order.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t stream) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream),
                          static_cast<std::uint32_t>(stream >> 32), 0x9e3779b9u};
        engine_.seed(seq);
    }

    // Uniform in the open interval (0, 1), 53-bit resolution.
    double uniform_open() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace rydcqed
