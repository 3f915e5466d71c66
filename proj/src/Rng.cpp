/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#include "snowlab/Rng.h"

#include <cmath>

namespace snowlab::rnd {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t deriveSeed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    return mix(mix(master + stream * 0xD1B54A32D192ED03ULL) + index);
}

double NormalSampler::uniform() {
    // 53-bit mantissa in [0, 1).
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

double NormalSampler::next(double sigma) {
    if (hasCached) {
        hasCached = false;
        return cached * sigma;
    }
    // Box-Muller: two uniforms -> two independent standard normals.
    double u1 = uniform();
    while (u1 <= 0.0)
        u1 = uniform();
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * M_PI * u2;
    cached = radius * std::sin(angle);
    hasCached = true;
    return radius * std::cos(angle) * sigma;
}

} // namespace snowlab::rnd
