#pragma once

#include "vi/core.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <initializer_list>
#include <random>
#include <string_view>

namespace vi {

// Reproducible random streams.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The std::*_distribution adaptors are not (their algorithms are
// implementation-defined), so the transforms below are done by hand:
//   uniform01: top 53 bits of one draw, scaled by 2^-53, in [0, 1)
//   normal:    Box-Muller using two uniform01 draws, cosine branch only
//   integer:   rejection sampling on the raw 64-bit draw
// Streams are split by hashing (seed, labels...) through splitmix64.

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> labels)
{
    std::uint64_t h = splitmix64(seed);
    for (auto l : labels) {
        h = splitmix64(h ^ splitmix64(l));
    }
    return h;
}

inline std::uint64_t hash_label(std::string_view s)
{
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double normal()
    {
        double u1 = uniform01();
        while (u1 <= 0.0) {
            u1 = uniform01();
        }
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    /// Uniform integer in the closed range [lo, hi].
    std::int64_t integer(std::int64_t lo, std::int64_t hi)
    {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} - span + 1) % span;
        std::uint64_t r = engine_();
        while (span != 0 && r < limit) {
            r = engine_();
        }
        return lo + static_cast<std::int64_t>(span == 0 ? r : r % span);
    }

    Vector normal_vector(Eigen::Index n)
    {
        Vector v(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            v[i] = normal();
        }
        return v;
    }

    /// Uniformly distributed direction on the Euclidean unit sphere.
    Vector unit_direction(Eigen::Index n)
    {
        Vector v = normal_vector(n);
        double nv = v.norm();
        while (nv == 0.0) {
            v = normal_vector(n);
            nv = v.norm();
        }
        return v / nv;
    }

private:
    std::mt19937_64 engine_;
};

/// Digest of a point's exact bit pattern, used to derive per-point streams.
template <typename Derived>
std::uint64_t digest(const Eigen::MatrixBase<Derived>& x)
{
    std::uint64_t h = 0x84222325cbf29ce4ULL ^ static_cast<std::uint64_t>(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        double v = x[i];
        if (v == 0.0) {
            v = 0.0;  // fold -0.0 onto +0.0
        }
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        h = splitmix64(h ^ bits);
    }
    return h;
}

}  // namespace vi
