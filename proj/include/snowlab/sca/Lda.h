/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "snowlab/sca/Target.h"
#include "snowlab/sim/Leakage.h"

namespace snowlab::sca {

/// Fisher linear discriminant over a sample window, trained to separate the
/// two values of one key-word bit (in this laboratory: the low bit that
/// selects the conditional reduction).
struct LdaModel {
    int windowBegin = 0;
    int windowEnd = 0;
    std::vector<double> weights; // one per window column
    double threshold = 0;        // midpoint of the projected class means
    double mean0 = 0, mean1 = 0; // projected class means (diagnostics)
    double epsilon = 0;          // scatter regularizer actually used
    double trainAccuracy = 0;
};

/// Extracts the per-trace label for `target`: the low bit of the key word
/// the target's inverse tap consumes.  Throws std::invalid_argument when a
/// trace carries no key.
std::vector<std::uint8_t> lsbLabels(const sim::TraceSet &ts, Target target);

/// Trains on the window [windowBegin, windowEnd).  Both classes must be
/// present.  The scatter matrix is regularized by epsilon = 1e-6 times the
/// mean diagonal (floored at 1e-12), which keeps perfectly separable data
/// (zero within-class variance) well defined.
LdaModel ldaTrain(const sim::TraceSet &ts, std::span<const std::uint8_t> labels, int windowBegin,
                  int windowEnd);

/// Predicted bit for one trace row.
int ldaPredict(const LdaModel &model, const float *row);

/// Fraction of traces whose prediction matches `labels`.
double ldaAccuracy(const LdaModel &model, const sim::TraceSet &ts,
                   std::span<const std::uint8_t> labels);

} // namespace snowlab::sca
