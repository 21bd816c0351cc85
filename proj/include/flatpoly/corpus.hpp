#pragma once

// Deterministic seeded corpora for property sweeps. The generator is a
// self-contained splitmix64 so corpora are reproducible across platforms and
// standard-library versions.

#include <cstdint>
#include <vector>

#include "flatpoly/generators.hpp"
#include "flatpoly/poly.hpp"

namespace flatpoly {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound) by rejection; bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % bound;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

/// Random class B polynomial: m in [2, max_m], m-1 distinct exponents from
/// [1, max_exponent].
inline TrigPoly random_class_b(SplitMix64& rng, int max_m = 16, std::int64_t max_exponent = 64) {
    const int m = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_m - 1)));
    std::vector<std::int64_t> pool;
    for (std::int64_t r = 1; r <= max_exponent; ++r) pool.push_back(r);
    // partial Fisher-Yates for m-1 distinct draws
    std::vector<std::int64_t> picked;
    for (int i = 0; i < m - 1; ++i) {
        const std::size_t j =
            static_cast<std::size_t>(i) + static_cast<std::size_t>(rng.below(pool.size() - static_cast<std::size_t>(i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
        picked.push_back(pool[static_cast<std::size_t>(i)]);
    }
    std::sort(picked.begin(), picked.end());
    ClassBSpec spec;
    spec.m = m;
    spec.exponents = std::move(picked);
    return class_b(spec);
}

struct RootedPoly {
    TrigPoly poly;
    std::vector<cplx> roots;  // ground truth, no root within 0.05 of the circle
};

/// Random analytic polynomial built from its roots: degree in [2, max_degree],
/// each root inside (|a| in [0.15, 0.9]) or outside (|a| in [1.1, 2.2]) the
/// unit circle, scaled to unit L2 norm. Root positions are the ground truth
/// for factorization checks.
inline RootedPoly random_rooted_poly(SplitMix64& rng, int max_degree = 32) {
    const int degree = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_degree - 1)));
    RootedPoly out;
    TrigPoly p = TrigPoly::constant(cplx{1.0, 0.0});
    for (int i = 0; i < degree; ++i) {
        const bool inside = rng.below(2) == 0;
        const double radius = inside ? rng.uniform(0.15, 0.9) : rng.uniform(1.1, 2.2);
        const cplx alpha = std::polar(radius, rng.uniform(0.0, kTwoPi));
        out.roots.push_back(alpha);
        TrigPoly factor = TrigPoly::constant(-alpha);
        factor.set(1, cplx{1.0, 0.0});
        p = p * factor;
    }
    out.poly = normalize_l2(p);
    return out;
}

}  // namespace flatpoly
