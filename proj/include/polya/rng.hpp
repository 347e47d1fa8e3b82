#ifndef POLYA_RNG_HPP
#define POLYA_RNG_HPP

#include <cmath>
#include <cstdint>

namespace polya {

/// SplitMix64: a 64-bit generator with a one-word state, used both as the
/// per-stream generator and as the mixing function that derives independent
/// streams. Stream derivation: the state of stream (seed, replica, tag) is
/// obtained by running the finalizer over the three words, so replicas and
/// logical substreams (jump chain vs holding times) never share a state.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in (0, 1] (never 0, so log() is safe).
    double uniform_pos() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Exponential(rate) by inverse transform.
    double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

    double normal() {
        // Box-Muller; one value per call keeps the stream layout simple.
        const double u = uniform_pos();
        const double v = uniform01();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586477 * v);
    }

    /// Gamma(shape, unit scale), Marsaglia-Tsang with the shape<1 boost.
    double gamma(double shape) {
        if (shape < 1.0) {
            const double u = uniform_pos();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_pos();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

  private:
    std::uint64_t state_;
};

/// Deterministic stream derivation from (seed, replica, tag).
inline SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t replica, std::uint64_t tag) {
    SplitMix64 mixer(seed);
    std::uint64_t s = mixer.next();
    SplitMix64 mixer2(s ^ (replica * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL));
    s = mixer2.next();
    SplitMix64 mixer3(s ^ (tag * 0xda942042e4dd58b5ULL + 1));
    return SplitMix64(mixer3.next());
}

}  // namespace polya

#endif
