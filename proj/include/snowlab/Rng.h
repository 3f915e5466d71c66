/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <random>

namespace snowlab::rnd {

/// splitmix64 finalizer.  Used to derive decorrelated child seeds from a
/// master seed in closed form, so trace i's randomness never depends on how
/// many draws earlier traces consumed.
std::uint64_t mix(std::uint64_t x);

/// Child seed for (master, stream, index).  Distinct streams keep noise, IV,
/// mask and shuffle randomness independent even under the same master seed.
std::uint64_t deriveSeed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

/// Stream identifiers for deriveSeed.
inline constexpr std::uint64_t kStreamNoise = 1;
inline constexpr std::uint64_t kStreamIv = 2;
inline constexpr std::uint64_t kStreamMask = 3;
inline constexpr std::uint64_t kStreamShuffle = 4;
inline constexpr std::uint64_t kStreamKey = 5;

/// Gaussian sampler over mt19937_64 using the Box-Muller transform.  The
/// transform is spelled out (rather than std::normal_distribution) because
/// the exact draw sequence is part of the reproducibility contract and must
/// not drift across standard library versions.
class NormalSampler {
  public:
    explicit NormalSampler(std::uint64_t seed) : engine(seed) {}

    /// One sample from N(0, sigma^2).
    double next(double sigma);

    /// Uniform double in [0, 1).
    double uniform();

    std::mt19937_64 &raw() { return engine; }

  private:
    std::mt19937_64 engine;
    bool hasCached = false;
    double cached = 0.0;
};

} // namespace snowlab::rnd
