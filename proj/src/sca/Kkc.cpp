/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#include "snowlab/sca/Kkc.h"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace snowlab::sca {

HwBits hwBitsFromInt(int bits) {
    switch (bits) {
    case 4:
        return HwBits::B4;
    case 6:
        return HwBits::B6;
    case 8:
        return HwBits::B8;
    case 16:
        return HwBits::B16;
    }
    throw std::invalid_argument("model bits must be 4, 6, 8 or 16");
}

KkcResult kkc(const sim::TraceSet &ts, Target target, HwBits bits, std::size_t maxTraces) {
    std::size_t n = ts.nTraces();
    if (maxTraces != 0 && maxTraces < n)
        n = maxTraces;
    if (n < 2)
        throw std::invalid_argument("kkc: need at least two traces");
    std::size_t nCols = ts.nSamples();
    unsigned mask = (1u << static_cast<int>(bits)) - 1u;

    std::vector<double> sumX(nCols, 0), sqX(nCols, 0), sumMX(nCols, 0);
    double sumM = 0, sqM = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (!ts.traces[t].key)
            throw std::invalid_argument("kkc: trace " + std::to_string(t) +
                                        " carries no key (evaluation mode requires keys)");
        snowv::Word16 value = trueFeedbackWord(target, *ts.traces[t].key, ts.traces[t].iv);
        double m = std::popcount(static_cast<unsigned>(value) & mask);
        sumM += m;
        sqM += m * m;
        const float *row = ts.row(t);
        for (std::size_t s = 0; s < nCols; ++s) {
            double x = row[s];
            sumX[s] += x;
            sqX[s] += x * x;
            sumMX[s] += m * x;
        }
    }

    KkcResult r;
    r.target = target;
    r.bits = bits;
    r.tracesUsed = n;
    r.corr.assign(nCols, 0.0);
    double dn = static_cast<double>(n);
    double varM = dn * sqM - sumM * sumM;
    for (std::size_t s = 0; s < nCols; ++s) {
        double varX = dn * sqX[s] - sumX[s] * sumX[s];
        double den = varM * varX;
        if (den <= 0.0)
            continue;
        r.corr[s] = (dn * sumMX[s] - sumM * sumX[s]) / std::sqrt(den);
        if (r.poi < 0 || std::abs(r.corr[s]) > std::abs(r.peak)) {
            r.peak = r.corr[s];
            r.poi = static_cast<int>(s);
        }
    }
    if (r.poi < 0) {
        // Degenerate set (e.g. constant model): report column 0 with zero
        // correlation rather than failing.
        r.poi = 0;
        r.peak = 0.0;
    }
    return r;
}

} // namespace snowlab::sca
