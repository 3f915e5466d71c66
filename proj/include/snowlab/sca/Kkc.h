/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <vector>

#include "snowlab/sca/Target.h"
#include "snowlab/sim/Leakage.h"

namespace snowlab::sca {

/// Width of the Hamming-weight model used by the known-key correlation: the
/// low 4, 6 or 8 bits of the true feedback word, or all 16.
enum class HwBits { B4 = 4, B6 = 6, B8 = 8, B16 = 16 };

HwBits hwBitsFromInt(int bits);

struct KkcResult {
    Target target;
    HwBits bits = HwBits::B16;
    std::vector<double> corr; // signed Pearson correlation per sample column
    int poi = -1;             // column of max |corr| (first on ties)
    double peak = 0;          // signed correlation at poi
    std::size_t tracesUsed = 0;
};

/// Known-key correlation: correlates HW of the true first-round feedback
/// word (evaluation mode; every used trace must carry its key) against each
/// sample column, locating where the target leaks.
KkcResult kkc(const sim::TraceSet &ts, Target target, HwBits bits = HwBits::B16,
              std::size_t maxTraces = 0);

} // namespace snowlab::sca
