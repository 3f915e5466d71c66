/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#include "snowlab/sca/Cpa.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace snowlab::sca {

using snowv::mulXInv;
using snowv::Word16;

std::uint8_t contribution7(std::uint8_t byte, Word16 d) {
    return static_cast<std::uint8_t>(mulXInv(byte, d) & 0x7F);
}

std::uint8_t ghostPartner(std::uint8_t byte, Word16 d) {
    std::uint8_t c7 = contribution7(byte, d);
    std::uint8_t flipped = static_cast<std::uint8_t>((byte & 1) ^ 1);
    std::uint8_t d7 = static_cast<std::uint8_t>(d & 0x7F);
    return static_cast<std::uint8_t>(((c7 ^ (flipped ? d7 : 0)) << 1) | flipped);
}

GhostSet ghostSetFor(std::uint8_t topHypothesis, Word16 d) {
    std::uint8_t c7 = contribution7(topHypothesis, d);
    std::uint8_t comp = static_cast<std::uint8_t>(~c7 & 0x7F);
    std::uint8_t d7 = static_cast<std::uint8_t>(d & 0x7F);
    auto preimage = [&](std::uint8_t target, std::uint8_t lsb) {
        return static_cast<std::uint8_t>(((target ^ (lsb ? d7 : 0)) << 1) | lsb);
    };
    GhostSet g;
    g.a = preimage(c7, 0);
    g.b = preimage(c7, 1);
    g.c = preimage(comp, 0);
    g.d = preimage(comp, 1);
    return g;
}

int CpaByteResult::rankOf(std::uint8_t byte) const {
    for (int i = 0; i < 256; ++i)
        if (ranking[static_cast<std::size_t>(i)] == byte)
            return i;
    return -1;
}

namespace {

// Per-hypothesis predictor tables: the 7 (low half) or 8 (high half)
// key-controlled bits of the feedback word, to be XORed with the matching
// bits of the trace's known contribution.
struct ModelTables {
    std::array<std::uint8_t, 256> bits{};
    int shift = 0;      // known >> shift
    std::uint8_t mask = 0;
};

ModelTables makeTables(Target target, Half half, std::uint8_t knownLowByte) {
    ModelTables t;
    Word16 d = dConstant(target);
    if (half == Half::Low) {
        t.shift = 0;
        t.mask = 0x7F;
        for (int h = 0; h < 256; ++h)
            t.bits[static_cast<std::size_t>(h)] =
                static_cast<std::uint8_t>(mulXInv(static_cast<Word16>(h), d) & 0x7F);
    } else {
        t.shift = 7;
        t.mask = 0xFF;
        for (int h = 0; h < 256; ++h) {
            Word16 word = static_cast<Word16>((h << 8) | knownLowByte);
            t.bits[static_cast<std::size_t>(h)] =
                static_cast<std::uint8_t>((mulXInv(word, d) >> 7) & 0xFF);
        }
    }
    return t;
}

// Running sums for Pearson correlation between each of the 256 hypothesis
// models and each window column.
class Accumulator {
  public:
    Accumulator(Target target, const std::map<int, Word16> &known, const ModelTables &tables,
                int begin, int width)
        : target(target), known(known), tables(tables), begin(begin), width(width),
          sumX(static_cast<std::size_t>(width), 0.0), sqX(static_cast<std::size_t>(width), 0.0),
          sumMX(static_cast<std::size_t>(width) * 256, 0.0),
          x(static_cast<std::size_t>(width), 0.0) {}

    void add(const float *row, const snowv::Iv128 &iv) {
        Word16 knownWord = knownContribution(target, iv, known);
        std::uint8_t knownBits =
            static_cast<std::uint8_t>((knownWord >> tables.shift) & tables.mask);
        ++n;
        for (int w = 0; w < width; ++w) {
            double v = row[begin + w];
            x[static_cast<std::size_t>(w)] = v;
            sumX[static_cast<std::size_t>(w)] += v;
            sqX[static_cast<std::size_t>(w)] += v * v;
        }
        for (int h = 0; h < 256; ++h) {
            double m = std::popcount(
                static_cast<unsigned>(tables.bits[static_cast<std::size_t>(h)] ^ knownBits));
            sumM[static_cast<std::size_t>(h)] += m;
            sqM[static_cast<std::size_t>(h)] += m * m;
            double *mx = sumMX.data() + static_cast<std::size_t>(h) * width;
            for (int w = 0; w < width; ++w)
                mx[w] += m * x[static_cast<std::size_t>(w)];
        }
    }

    std::size_t traces() const { return n; }

    // Signed correlation at the best-magnitude column for each hypothesis.
    void peaks(std::array<double, 256> &peak, std::array<int, 256> &column) const {
        double dn = static_cast<double>(n);
        for (int h = 0; h < 256; ++h) {
            double varM = dn * sqM[static_cast<std::size_t>(h)] -
                          sumM[static_cast<std::size_t>(h)] * sumM[static_cast<std::size_t>(h)];
            double best = 0.0;
            int bestCol = begin;
            const double *mx = sumMX.data() + static_cast<std::size_t>(h) * width;
            for (int w = 0; w < width; ++w) {
                double varX = dn * sqX[static_cast<std::size_t>(w)] -
                              sumX[static_cast<std::size_t>(w)] * sumX[static_cast<std::size_t>(w)];
                double den = varM * varX;
                if (den <= 0.0)
                    continue;
                double corr = (dn * mx[w] -
                               sumM[static_cast<std::size_t>(h)] * sumX[static_cast<std::size_t>(w)]) /
                              std::sqrt(den);
                if (std::abs(corr) > std::abs(best)) {
                    best = corr;
                    bestCol = begin + w;
                }
            }
            peak[static_cast<std::size_t>(h)] = best;
            column[static_cast<std::size_t>(h)] = bestCol;
        }
    }

  private:
    Target target;
    const std::map<int, Word16> &known;
    const ModelTables &tables;
    int begin, width;
    std::size_t n = 0;
    std::vector<double> sumX, sqX;
    std::array<double, 256> sumM{}, sqM{};
    std::vector<double> sumMX;
    std::vector<double> x; // per-trace window scratch
};

void rankHypotheses(const std::array<double, 256> &peak, std::array<std::uint8_t, 256> &ranking) {
    for (int h = 0; h < 256; ++h)
        ranking[static_cast<std::size_t>(h)] = static_cast<std::uint8_t>(h);
    std::sort(ranking.begin(), ranking.end(), [&](std::uint8_t x, std::uint8_t y) {
        double px = peak[x], py = peak[y];
        bool posX = px > 0, posY = py > 0;
        if (posX != posY)
            return posX;
        double kx = posX ? px : std::abs(px);
        double ky = posY ? py : std::abs(py);
        if (kx != ky)
            return kx > ky;
        return x < y;
    });
}

std::pair<int, int> resolveWindow(const sim::TraceSet &ts, int begin, int end) {
    int nCols = static_cast<int>(ts.nSamples());
    if (end < 0)
        end = nCols;
    if (begin < 0 || begin >= end || end > nCols)
        throw std::invalid_argument("CPA window out of range");
    return {begin, end - begin};
}

std::size_t resolveCount(const sim::TraceSet &ts, std::size_t maxTraces) {
    std::size_t n = ts.nTraces();
    if (maxTraces != 0 && maxTraces < n)
        n = maxTraces;
    if (n < 2)
        throw std::invalid_argument("CPA needs at least two traces");
    return n;
}

} // namespace

CpaByteResult cpaByte(const sim::TraceSet &ts, Target target, Half half,
                      const std::map<int, Word16> &known, const CpaOptions &opt) {
    auto [begin, width] = resolveWindow(ts, opt.windowBegin, opt.windowEnd);
    std::size_t n = resolveCount(ts, opt.maxTraces);
    ModelTables tables = makeTables(target, half, opt.knownLowByte);
    Accumulator acc(target, known, tables, begin, width);
    for (std::size_t t = 0; t < n; ++t)
        acc.add(ts.row(t), ts.traces[t].iv);
    CpaByteResult r;
    r.target = target;
    r.half = half;
    r.tracesUsed = n;
    acc.peaks(r.peak, r.column);
    rankHypotheses(r.peak, r.ranking);
    if (half == Half::Low)
        r.ghosts = ghostSetFor(r.ranking[0], dConstant(target));
    return r;
}

MtdCurve mtdCurve(const sim::TraceSet &ts, Target target, std::uint8_t trueByte,
                  const std::map<int, Word16> &known, const MtdOptions &opt) {
    auto [begin, width] = resolveWindow(ts, opt.windowBegin, opt.windowEnd);
    std::size_t nMax = resolveCount(ts, opt.maxTraces);
    if (opt.stride == 0)
        throw std::invalid_argument("mtdCurve: stride must be positive");
    ModelTables tables = makeTables(target, Half::Low, 0);
    Accumulator acc(target, known, tables, begin, width);
    MtdCurve curve;
    curve.ghosts = ghostSetFor(trueByte, dConstant(target));
    std::array<double, 256> peak;
    std::array<int, 256> column;
    std::array<std::uint8_t, 256> ranking;
    for (std::size_t t = 0; t < nMax; ++t) {
        acc.add(ts.row(t), ts.traces[t].iv);
        std::size_t done = t + 1;
        bool checkpoint = (done % opt.stride == 0) || done == nMax;
        if (!checkpoint || done < 2)
            continue;
        acc.peaks(peak, column);
        rankHypotheses(peak, ranking);
        MtdPoint p;
        p.n = done;
        p.top = ranking[0];
        p.second = ranking[1];
        p.topPeak = peak[ranking[0]];
        p.pairLeads = curve.ghosts.containsPositive(p.top) &&
                      curve.ghosts.containsPositive(p.second) && peak[p.top] > 0 &&
                      peak[p.second] > 0;
        curve.points.push_back(p);
    }
    // Lock-in: earliest checkpoint whose entire suffix keeps the pair on top.
    std::optional<std::size_t> mtd;
    for (auto it = curve.points.rbegin(); it != curve.points.rend() && it->pairLeads; ++it)
        mtd = it->n;
    curve.mtd = mtd;
    return curve;
}

} // namespace snowlab::sca
