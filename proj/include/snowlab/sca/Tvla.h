/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <optional>
#include <vector>

#include "snowlab/sim/Leakage.h"

namespace snowlab::sca {

/// Conventional leakage-assessment pass/fail threshold on |t|.
inline constexpr double kTvlaThreshold = 4.5;

/// Welch's t per sample column between two groups.
struct TvlaResult {
    std::vector<double> t;        // 0 where flagged degenerate
    std::vector<bool> degenerate; // both group variances vanished
    double maxAbsT = 0;
    int argmax = -1;
    std::size_t nA = 0, nB = 0;
};

/// Core on raw row-major matrices with `nCols` columns each.
TvlaResult welchT(const float *rowsA, std::size_t nA, const float *rowsB, std::size_t nB,
                  std::size_t nCols);

/// Trace-set wrapper; both sets must share the identical sample map.
TvlaResult welchT(const sim::TraceSet &a, const sim::TraceSet &b);

struct TvlaCurvePoint {
    std::size_t n; // traces per group in this prefix
    double maxAbsT;
};

struct TvlaCurve {
    std::vector<TvlaCurvePoint> points;
    std::optional<std::size_t> firstCrossing; // smallest n with maxAbsT > threshold
    double threshold = kTvlaThreshold;
};

/// Evaluates max |t| on growing prefixes (n = stride, 2*stride, ..., plus
/// the full length when it is not a stride multiple) of both groups and
/// records the earliest crossing of `threshold`.
TvlaCurve tvlaIncremental(const sim::TraceSet &a, const sim::TraceSet &b, std::size_t stride = 1,
                          double threshold = kTvlaThreshold);

} // namespace snowlab::sca
