/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#include "snowlab/sca/Stats.h"

#include <cmath>
#include <stdexcept>

namespace snowlab::sca {

ColumnMoments columnMoments(const float *rows, std::size_t n, std::size_t nCols) {
    if (n < 2)
        throw std::invalid_argument("columnMoments: need at least two rows");
    ColumnMoments m;
    m.n = n;
    m.mean.assign(nCols, 0.0);
    m.var.assign(nCols, 0.0);
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t s = 0; s < nCols; ++s)
            m.mean[s] += rows[t * nCols + s];
    for (std::size_t s = 0; s < nCols; ++s)
        m.mean[s] /= static_cast<double>(n);
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t s = 0; s < nCols; ++s) {
            double d = rows[t * nCols + s] - m.mean[s];
            m.var[s] += d * d;
        }
    for (std::size_t s = 0; s < nCols; ++s)
        m.var[s] /= static_cast<double>(n - 1);
    return m;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("pearson: need two equal-length series");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0)
        return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> solveSpd(std::span<const double> a, std::span<const double> b, std::size_t n,
                             double epsilon) {
    if (a.size() != n * n || b.size() != n)
        throw std::invalid_argument("solveSpd: dimension mismatch");
    // Cholesky factorization of A + epsilon*I.
    std::vector<double> l(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a[i * n + j] + (i == j ? epsilon : 0.0);
            for (std::size_t k = 0; k < j; ++k)
                sum -= l[i * n + k] * l[j * n + k];
            if (i == j) {
                if (sum <= 0.0)
                    throw std::runtime_error("solveSpd: matrix not positive definite");
                l[i * n + i] = std::sqrt(sum);
            } else {
                l[i * n + j] = sum / l[j * n + j];
            }
        }
    }
    // Forward then back substitution.
    std::vector<double> y(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = b[i];
        for (std::size_t k = 0; k < i; ++k)
            sum -= l[i * n + k] * y[k];
        y[i] = sum / l[i * n + i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double sum = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k)
            sum -= l[k * n + ii] * x[k];
        x[ii] = sum / l[ii * n + ii];
    }
    return x;
}

} // namespace snowlab::sca
