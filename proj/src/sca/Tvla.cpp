/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#include "snowlab/sca/Tvla.h"

#include <cmath>
#include <stdexcept>

#include "snowlab/sca/Stats.h"

namespace snowlab::sca {

TvlaResult welchT(const float *rowsA, std::size_t nA, const float *rowsB, std::size_t nB,
                  std::size_t nCols) {
    if (nA < 2 || nB < 2)
        throw std::invalid_argument("welchT: each group needs at least two traces");
    ColumnMoments a = columnMoments(rowsA, nA, nCols);
    ColumnMoments b = columnMoments(rowsB, nB, nCols);
    TvlaResult r;
    r.nA = nA;
    r.nB = nB;
    r.t.resize(nCols);
    r.degenerate.assign(nCols, false);
    for (std::size_t s = 0; s < nCols; ++s) {
        double denom = a.var[s] / static_cast<double>(nA) + b.var[s] / static_cast<double>(nB);
        if (denom <= 0.0) {
            // Both samples are constant: no evidence either way; flag it.
            r.t[s] = 0.0;
            r.degenerate[s] = true;
        } else {
            r.t[s] = (a.mean[s] - b.mean[s]) / std::sqrt(denom);
        }
        if (std::abs(r.t[s]) > r.maxAbsT) {
            r.maxAbsT = std::abs(r.t[s]);
            r.argmax = static_cast<int>(s);
        }
    }
    return r;
}

TvlaResult welchT(const sim::TraceSet &a, const sim::TraceSet &b) {
    if (a.points != b.points)
        throw std::invalid_argument("welchT: trace sets have different sample maps");
    return welchT(a.samples.data(), a.nTraces(), b.samples.data(), b.nTraces(), a.nSamples());
}

TvlaCurve tvlaIncremental(const sim::TraceSet &a, const sim::TraceSet &b, std::size_t stride,
                          double threshold) {
    if (a.points != b.points)
        throw std::invalid_argument("tvlaIncremental: trace sets have different sample maps");
    if (stride == 0)
        throw std::invalid_argument("tvlaIncremental: stride must be positive");
    std::size_t nCols = a.nSamples();
    std::size_t nMax = std::min(a.nTraces(), b.nTraces());
    TvlaCurve curve;
    curve.threshold = threshold;

    std::vector<std::size_t> checkpoints;
    for (std::size_t n = stride; n <= nMax; n += stride)
        checkpoints.push_back(n);
    if (nMax > 0 && (checkpoints.empty() || checkpoints.back() != nMax))
        checkpoints.push_back(nMax); // final partial prefix
    std::vector<double> sumA(nCols, 0), sqA(nCols, 0), sumB(nCols, 0), sqB(nCols, 0);
    std::size_t done = 0;
    for (std::size_t n : checkpoints) {
        for (; done < n; ++done)
            for (std::size_t s = 0; s < nCols; ++s) {
                double xa = a.at(done, s), xb = b.at(done, s);
                sumA[s] += xa;
                sqA[s] += xa * xa;
                sumB[s] += xb;
                sqB[s] += xb * xb;
            }
        if (n < 2)
            continue;
        double maxAbsT = 0;
        double dn = static_cast<double>(n);
        for (std::size_t s = 0; s < nCols; ++s) {
            double ma = sumA[s] / dn, mb = sumB[s] / dn;
            double va = (sqA[s] - dn * ma * ma) / (dn - 1);
            double vb = (sqB[s] - dn * mb * mb) / (dn - 1);
            double denom = (va + vb) / dn;
            if (denom <= 0.0)
                continue;
            double t = std::abs(ma - mb) / std::sqrt(denom);
            if (t > maxAbsT)
                maxAbsT = t;
        }
        curve.points.push_back({n, maxAbsT});
        if (!curve.firstCrossing && maxAbsT > threshold)
            curve.firstCrossing = n;
    }
    return curve;
}

} // namespace snowlab::sca
