#pragma once

// Shared helpers for the test suite: small literals and random fans/functions.

#include "klytor/plfunc.hpp"

#include <cmath>
#include <random>

namespace kt {
using namespace klytor;

inline QVec q(std::initializer_list<long> xs) {
    QVec v;
    for (auto x : xs)
        v.emplace_back(make_rat(x));
    return v;
}

/// Complete 2D fan from rays listed in any order: cones between angular neighbours.
inline Fan fan_from_cyclic_rays(std::vector<IVec> rays) {
    std::sort(rays.begin(), rays.end(), [](const IVec& a, const IVec& b) {
        return std::atan2(double(a[1]), double(a[0])) < std::atan2(double(b[1]), double(b[0]));
    });
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t i = 0; i < rays.size(); ++i)
        cones.push_back({i, (i + 1) % rays.size()});
    return Fan(2, rays, cones);
}

/// Smooth complete 2D fan: P^2 or P^1 x P^1 with random blow-ups v_i + v_{i+1}.
inline Fan random_smooth_fan_2d(std::mt19937_64& rng, int blowups) {
    std::vector<IVec> rays;
    if (rng() % 2 == 0)
        rays = {{1, 0}, {0, 1}, {-1, -1}};
    else
        rays = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int k = 0; k < blowups; ++k) {
        Fan f = fan_from_cyclic_rays(rays);
        const auto& c = f.maximal_cones()[rng() % f.num_cones()];
        IVec a = f.ray(c[0]), b = f.ray(c[1]);
        if (std::abs(a[0] + b[0]) > 6 || std::abs(a[1] + b[1]) > 6)
            continue;
        rays.push_back({a[0] + b[0], a[1] + b[1]});
    }
    return fan_from_cyclic_rays(rays);
}

inline PLFunction random_integral_pl(std::mt19937_64& rng, const Fan& f, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> d(lo, hi);
    QVec vals;
    for (std::size_t r = 0; r < f.num_rays(); ++r)
        vals.emplace_back(d(rng));
    return PLFunction::from_ray_values(f, vals);
}

inline QVec random_point(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> d(-40, 40);
    QVec x;
    for (std::size_t i = 0; i < n; ++i)
        x.push_back(make_rat(d(rng), 7));
    return x;
}

}  // namespace kt
