// Deterministic random streams and the geometric samplers built on them.
//
// RandomStream is keyed by (master seed, stream index): the same pair always
// reproduces the same sequence, and distinct indices give statistically
// independent streams, so Monte Carlo tries can run on any number of workers
// and still aggregate to identical results.
#pragma once

#include <cstdint>
#include <stdexcept>

#include "onedens/geometry.hpp"

namespace onedens {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
inline std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
}  // namespace detail

// xoshiro256++ seeded through splitmix64 from (seed, stream).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed = 0, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream) {
        std::uint64_t s = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
        detail::splitmix64(s);
        bool all_zero = true;
        for (auto& w : state_) {
            w = detail::splitmix64(s);
            all_zero = all_zero && w == 0;
        }
        if (all_zero) state_[0] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform index in [0, n) via 128-bit multiply.
    std::uint64_t uniform_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Standard normal via Box-Muller; second deviate is cached.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::uint64_t state_[4];
    std::uint64_t seed_;
    std::uint64_t stream_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

// Uniform point in a tetrahedron: three sorted uniforms give Dirichlet(1,1,1,1)
// barycentric weights, so no rejection is involved.
inline Point3 sample_uniform_tetra(const Tetrahedron& t, RandomStream& rs) {
    if (tetra_volume(t) <= 0.0) throw std::invalid_argument("degenerate simplex");
    double a = rs.uniform01(), b = rs.uniform01(), c = rs.uniform01();
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    const double w0 = a, w1 = b - a, w2 = c - b, w3 = 1.0 - c;
    return w0 * t.v[0] + w1 * t.v[1] + w2 * t.v[2] + w3 * t.v[3];
}

// Uniform direction on the unit sphere: normalized Gaussian triple.
inline Vec3 sample_uniform_sphere_direction(RandomStream& rs) {
    for (;;) {
        const Vec3 g{rs.normal(), rs.normal(), rs.normal()};
        const double n = norm(g);
        if (n > 1e-12) return (1.0 / n) * g;
    }
}

}  // namespace onedens
