/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "snowlab/sca/Target.h"
#include "snowlab/sim/Leakage.h"

namespace snowlab::sca {

/// Low seven bits of mulXInv applied to a byte-valued cell word: the part of
/// the feedback word's low half that the key byte controls.  Bit 7 of the
/// result of mulXInv depends on cell bit 8, which is outside the byte, so a
/// byte hypothesis predicts exactly these seven bits.
std::uint8_t contribution7(std::uint8_t byte, snowv::Word16 d);

/// The byte with the opposite low bit but the same 7-bit contribution.
std::uint8_t ghostPartner(std::uint8_t byte, snowv::Word16 d);

/// The four bytes a 7-bit correlation attack cannot tell apart by magnitude:
/// {a, b} share the top hypothesis's contribution (correlation +rho),
/// {c, d} produce its bitwise complement (correlation -rho).  a/c carry low
/// bit 0, b/d low bit 1.
struct GhostSet {
    std::uint8_t a = 0, b = 0, c = 0, d = 0;
    bool operator==(const GhostSet &) const = default;
    bool containsPositive(std::uint8_t byte) const { return byte == a || byte == b; }
    bool contains(std::uint8_t byte) const {
        return byte == a || byte == b || byte == c || byte == d;
    }
};

GhostSet ghostSetFor(std::uint8_t topHypothesis, snowv::Word16 d);

enum class Half { Low, High };

struct CpaOptions {
    /// Sample window [windowBegin, windowEnd); windowEnd -1 means the whole
    /// trace.
    int windowBegin = 0;
    int windowEnd = -1;
    /// Recovered low byte of the target word (required for Half::High).
    std::uint8_t knownLowByte = 0;
    /// Use only the first maxTraces traces (0 = all).
    std::size_t maxTraces = 0;
};

struct CpaByteResult {
    Target target;
    Half half = Half::Low;
    /// Signed correlation at each hypothesis's best window column.
    std::array<double, 256> peak{};
    std::array<int, 256> column{};
    /// All 256 hypotheses: positive peaks by descending value, then the rest
    /// by descending magnitude; ties break toward the smaller byte.
    std::array<std::uint8_t, 256> ranking{};
    /// Ghost set of the top-ranked hypothesis (Half::Low only).
    std::optional<GhostSet> ghosts;
    std::size_t tracesUsed = 0;

    int rankOf(std::uint8_t byte) const;
};

/// Correlation attack on one key byte of one first-round feedback word.
/// `known` supplies previously recovered key words for targets whose known
/// contribution needs them (DependencyError otherwise).  Keys in the trace
/// metadata are not consulted.
CpaByteResult cpaByte(const sim::TraceSet &ts, Target target, Half half,
                      const std::map<int, snowv::Word16> &known, const CpaOptions &opt = {});

struct MtdOptions {
    int windowBegin = 0;
    int windowEnd = -1;
    std::size_t stride = 1;
    std::size_t maxTraces = 0;
};

struct MtdPoint {
    std::size_t n;
    std::uint8_t top, second;
    double topPeak;
    bool pairLeads; // both top ranks in the true byte's positive ghost pair
};

struct MtdCurve {
    GhostSet ghosts; // of the true byte
    std::vector<MtdPoint> points;
    /// Smallest evaluated prefix from which the positive ghost pair holds the
    /// top two ranks at every later checkpoint; unset when it never locks in.
    std::optional<std::size_t> mtd;
};

/// Minimum-traces-to-disclosure curve for the low half of one target word.
MtdCurve mtdCurve(const sim::TraceSet &ts, Target target, std::uint8_t trueByte,
                  const std::map<int, snowv::Word16> &known, const MtdOptions &opt = {});

} // namespace snowlab::sca
