#pragma once

// Splittable 64-bit PRNG (SplitMix64, Vigna) plus the variate transforms the
// simulations need. Seed derivation goes through mix64 so per-cell streams
// are independent of any execution schedule.

#include <cmath>
#include <cstdint>

#include "mcmap/specfun.hpp"

namespace mcmap {

inline constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t seed_combine(std::uint64_t seed, std::uint64_t v) {
    return mix64(seed ^ (v + golden_gamma + (seed << 6) + (seed >> 2)));
}

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += golden_gamma;
        return mix64(state_);
    }

    // 53-bit uniform on [0,1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform on the open interval (0,1); safe to feed to quantile transforms
    double uniform_open() {
        return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52;
    }

    double normal() { return std_normal_quantile(uniform_open()); }

    // Marsaglia-Tsang squeeze; shapes below 1 go through the Γ(a+1)·U^{1/a} boost.
    double gamma(double shape) {
        if (shape < 1.0) {
            const double u = uniform_open();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / (3.0 * std::sqrt(d));
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_open();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double beta(double a, double b) {
        const double x = gamma(a);
        const double y = gamma(b);
        return x / (x + y);
    }

  private:
    std::uint64_t state_;
};

}  // namespace mcmap
