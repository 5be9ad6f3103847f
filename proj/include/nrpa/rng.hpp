#pragma once

#include <cstdint>
#include <random>

namespace nrpa {

/// Reproducible random stream. Child streams are derived with split(), which
/// consumes exactly one draw of the parent, so a fan-out of P children can be
/// prepared up front and consumed in any order or on any thread.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(mix(seed)) {}

    std::uint64_t next() {
        ++draws_;
        return engine_();
    }

    /// Uniform double in [0, 1) built from the top 53 bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    RngStream split() { return RngStream(next()); }

    /// Number of values drawn from this stream (children not included).
    std::uint64_t draws() const noexcept { return draws_; }

private:
    // SplitMix64 finaliser; decorrelates nearby seeds before they reach the engine.
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
    std::uint64_t draws_ = 0;
};

} // namespace nrpa
