/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace snowlab::sca {

/// Per-column mean and unbiased variance of a row-major sample matrix.
struct ColumnMoments {
    std::size_t n = 0;
    std::vector<double> mean;
    std::vector<double> var;
};

ColumnMoments columnMoments(const float *rows, std::size_t n, std::size_t nCols);

/// Two-pass Pearson correlation.  Returns 0 when either side has zero
/// variance (the convention used throughout the ranking code, where a
/// degenerate predictor carries no evidence).
double pearson(std::span<const double> x, std::span<const double> y);

/// Solves (A + epsilon*I) x = b for symmetric positive semi-definite A via
/// Cholesky.  `a` is row-major n x n and is left unmodified.
std::vector<double> solveSpd(std::span<const double> a, std::span<const double> b, std::size_t n,
                             double epsilon);

} // namespace snowlab::sca
