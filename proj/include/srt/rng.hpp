#pragma once

#include <cmath>
#include <cstdint>

#include "srt/linalg.hpp"

namespace srt {

/// Deterministic sample generator. The algorithm is part of the toolkit's
/// external contract (docs/conventions.md) so that reports are reproducible
/// bit-exactly from the seed, including by reimplementations:
///
///   - stream: splitmix64 (Steele/Lea/Flood constants)
///   - uniform01: top 53 bits scaled by 2^-53
///   - gaussian: Box-Muller cosine branch, u1 shifted away from zero
///   - unit vector in R^n: n gaussians, normalized
///   - point in ball of radius r: unit vector times r * u^(1/n)
class SampleGen {
  public:
    explicit SampleGen(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double gaussian() {
        const double u1 = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    Vec gaussian_vec(int n) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = gaussian();
        return v;
    }

    Vec unit_vector(int n) {
        while (true) {
            Vec v = gaussian_vec(n);
            const double norm = v.norm();
            if (norm > 1e-12) return v / norm;
        }
    }

    Vec ball_point(int n, double radius) {
        const double r = radius * std::pow(uniform01(), 1.0 / n);
        return Vec(r * unit_vector(n));
    }

  private:
    uint64_t state_;
};

}  // namespace srt
