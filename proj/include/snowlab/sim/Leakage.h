/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "snowlab/cm/Countermeasures.h"
#include "snowlab/snowv/SnowV.h"

namespace snowlab::sim {

/// Hamming-weight leakage model with additive Gaussian noise.
///
/// A value sample (U/V words or their shares) leaks
///     hwScale * HW(value) + N(0, noiseSigma^2)
/// and a branch sample leaks
///     branchDelta * taken + N(0, noiseSigma^2)
/// where `taken` is 1 when the conditional reduction fired.  `rounds` selects
/// how many initialization rounds are instrumented (1 = the attacked first
/// round, 16 = the whole initialization).
struct LeakageModel {
    double hwScale = 1.0;
    double noiseSigma = 0.1;
    double branchDelta = 1.0;
    int rounds = 1;
};

/// One sample position in a trace.  `slot` is the schedule position within
/// the round; for non-shuffled variants it equals the logical sub-iteration.
struct SamplePoint {
    int round = 0;
    int slot = 0;
    snowv::TapKind kind = snowv::TapKind::U;

    std::string id() const; // e.g. "r0.s3.u"
    bool operator==(const SamplePoint &) const = default;
};

/// The sample map for a variant: per instrumented round, per slot,
///   reference/shuffled: branch_a, u, branch_b, v            (32 per round)
///   ct:                 u, v                                (16 per round)
///   masked:             branch_a, u_share0, u_share1,
///                       branch_b, v_share0, v_share1        (48 per round)
std::vector<SamplePoint> traceLayout(cm::Variant variant, int rounds);

/// Column index of (round, slot, kind) in `points`, or -1 when absent.
int columnOf(const std::vector<SamplePoint> &points, int round, int slot, snowv::TapKind kind);

/// Per-trace metadata.  The key is recorded for evaluation/profiling sets
/// and omitted for attack sets; the first keystream block documents that
/// every variant computed the same cipher.
struct TraceRecord {
    snowv::Iv128 iv;
    std::optional<snowv::Key256> key;
    std::uint64_t seed = 0;
    snowv::Block128 keystream0;
};

/// In-memory trace set: row-major float32 samples plus self-describing
/// metadata.
struct TraceSet {
    cm::Variant variant = cm::Variant::Reference;
    LeakageModel model;
    std::uint64_t masterSeed = 0;
    std::vector<SamplePoint> points;
    std::vector<TraceRecord> traces;
    std::vector<float> samples;

    std::size_t nTraces() const { return traces.size(); }
    std::size_t nSamples() const { return points.size(); }
    const float *row(std::size_t t) const { return samples.data() + t * points.size(); }
    float at(std::size_t t, std::size_t s) const { return samples[t * points.size() + s]; }
};

/// Key selection per trace: one fixed key, fresh random keys, or an explicit
/// list indexed modulo its size.
struct FixedKey {
    snowv::Key256 key;
};
struct RandomKeys {};
struct KeyList {
    std::vector<snowv::Key256> keys;
};
using KeyPolicy = std::variant<FixedKey, RandomKeys, KeyList>;

struct FixedIv {
    snowv::Iv128 iv;
};
struct RandomIvs {};
struct IvList {
    std::vector<snowv::Iv128> ivs;
};
using IvPolicy = std::variant<FixedIv, RandomIvs, IvList>;

struct SimulateOptions {
    cm::Variant variant = cm::Variant::Reference;
    std::uint64_t masterSeed = 1;
    /// Record the key of every trace in the metadata (evaluation sets).
    bool recordKeys = true;
    /// Draw masks from the OS entropy pool instead of the seed schedule;
    /// the set is then not reproducible.
    bool entropyMasks = false;
};

/// Simulates one trace.  `traceSeed` is the per-trace seed from which the
/// noise, mask and shuffle streams are derived; `keystream0` (when non-null)
/// receives the first keystream block of the fully initialized cipher.
std::vector<float> simulateTrace(const snowv::Key256 &key, const snowv::Iv128 &iv,
                                 const LeakageModel &model, cm::Variant variant,
                                 std::uint64_t traceSeed, snowv::Block128 *keystream0 = nullptr,
                                 cm::MaskStream *externalMasks = nullptr);

/// Simulates a set of `n` traces.  Trace i depends only on (masterSeed, i)
/// and the policies, never on how many traces precede it, so sets can be
/// regenerated or extended reproducibly.
TraceSet simulateTraceSet(const KeyPolicy &keys, const IvPolicy &ivs, std::size_t n,
                          const LeakageModel &model, const SimulateOptions &options = {});

} // namespace snowlab::sim
