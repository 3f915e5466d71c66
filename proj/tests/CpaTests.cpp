/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "snowlab/sca/Cpa.h"
#include "snowlab/sca/Kkc.h"
#include "snowlab/sim/Leakage.h"

namespace {

using namespace snowlab;
using sca::Half;
using sca::Lane;
using sca::Target;
using snowv::Word16;

snowv::Key256 patternedKey() {
    snowv::Key256 k;
    for (int i = 0; i < 16; ++i)
        k.words[static_cast<std::size_t>(i)] = static_cast<Word16>(0x1111 * i ^ 0x0BAD);
    return k;
}

snowv::Iv128 ivWithWord(int word, Word16 value) {
    snowv::Iv128 iv;
    iv.words[static_cast<std::size_t>(word)] = value;
    return iv;
}

std::map<int, Word16> allWords(const snowv::Key256 &key) {
    std::map<int, Word16> known;
    for (int i = 0; i < 16; ++i)
        known[i] = key.words[static_cast<std::size_t>(i)];
    return known;
}

TEST(Ghosts, AlgebraMatchesBruteForceForBothLanes) {
    for (Word16 d : {sca::dConstant({Lane::U, 0}), sca::dConstant({Lane::V, 0})}) {
        for (int b = 0; b < 256; ++b) {
            auto byte = static_cast<std::uint8_t>(b);
            std::uint8_t c7 = sca::contribution7(byte, d);
            std::uint8_t comp = static_cast<std::uint8_t>(~c7 & 0x7F);
            std::set<std::uint8_t> sameBrute, compBrute;
            for (int x = 0; x < 256; ++x) {
                std::uint8_t c = sca::contribution7(static_cast<std::uint8_t>(x), d);
                if (c == c7)
                    sameBrute.insert(static_cast<std::uint8_t>(x));
                if (c == comp)
                    compBrute.insert(static_cast<std::uint8_t>(x));
            }
            sca::GhostSet g = sca::ghostSetFor(byte, d);
            EXPECT_EQ(sameBrute, (std::set<std::uint8_t>{g.a, g.b}));
            EXPECT_EQ(compBrute, (std::set<std::uint8_t>{g.c, g.d}));
            // a/c carry low bit 0, b/d low bit 1, and all four are distinct.
            EXPECT_EQ(g.a & 1, 0);
            EXPECT_EQ(g.b & 1, 1);
            EXPECT_EQ(g.c & 1, 0);
            EXPECT_EQ(g.d & 1, 1);
            EXPECT_EQ((std::set<std::uint8_t>{g.a, g.b, g.c, g.d}).size(), 4u);
            EXPECT_TRUE(g.containsPositive(byte));
            std::uint8_t partner = sca::ghostPartner(byte, d);
            EXPECT_NE(partner, byte);
            EXPECT_TRUE(g.containsPositive(partner));
            // The set is a property of the 7-bit contribution, not the byte.
            EXPECT_EQ(sca::ghostSetFor(partner, d), g);
        }
    }
}

TEST(Ghosts, WorkedExample) {
    sca::GhostSet g = sca::ghostSetFor(0x16, sca::dConstant({Lane::U, 0}));
    EXPECT_EQ(g.a, 0x16);
    EXPECT_EQ(g.b, 0x19);
    EXPECT_EQ(g.c, 0xE8);
    EXPECT_EQ(g.d, 0xE7);
}

TEST(Targets, KnownContributionMatchesAuthoritativeRoute) {
    // Formula route (known contribution ^ inverse tap of the key word) versus
    // the cipher's own LFSR update.
    std::mt19937_64 rng(4711);
    for (int trial = 0; trial < 50; ++trial) {
        snowv::Key256 key;
        snowv::Iv128 iv;
        for (auto &w : key.words)
            w = static_cast<Word16>(rng());
        for (auto &w : iv.words)
            w = static_cast<Word16>(rng());
        auto known = allWords(key);
        for (Lane lane : {Lane::U, Lane::V}) {
            for (int i = 0; i < 8; ++i) {
                Target t{lane, i};
                Word16 keyWord = key.words[static_cast<std::size_t>(sca::keyWordIndex(t))];
                Word16 predicted = static_cast<Word16>(
                    sca::knownContribution(t, iv, known) ^
                    snowv::mulXInv(keyWord, sca::dConstant(t)));
                EXPECT_EQ(predicted, sca::trueFeedbackWord(t, key, iv))
                    << toString(t) << " trial " << trial;
            }
        }
    }
}

TEST(Targets, DependencyErrorsExposeRequiredWord) {
    snowv::Iv128 iv;
    std::map<int, Word16> empty;
    auto requiredWord = [&](Target t) {
        try {
            sca::knownContribution(t, iv, empty);
        } catch (const sca::DependencyError &e) {
            return e.requiredWord;
        }
        return -1;
    };
    EXPECT_EQ(requiredWord({Lane::U, 7}), 0);
    EXPECT_EQ(requiredWord({Lane::V, 5}), 8);
    EXPECT_EQ(requiredWord({Lane::V, 6}), 9);
    EXPECT_EQ(requiredWord({Lane::V, 7}), 10);
    for (int i = 0; i < 7; ++i)
        EXPECT_NO_THROW(sca::knownContribution({Lane::U, i}, iv, empty));
    for (int i = 0; i < 5; ++i)
        EXPECT_NO_THROW(sca::knownContribution({Lane::V, i}, iv, empty));

    // The attack propagates the error instead of guessing.
    auto ts = sim::simulateTraceSet(sim::FixedKey{patternedKey()}, sim::RandomIvs{}, 8,
                                    sim::LeakageModel{});
    EXPECT_THROW(sca::cpaByte(ts, {Lane::U, 7}, Half::Low, empty), sca::DependencyError);
}

/// 128 IVs enumerating the low seven bits of iv_1 drive every value of the
/// u_0 model; with zero noise the true ghost pair correlates exactly +1 and
/// the complement pair exactly -1.
TEST(Cpa, NoiselessLowHalfSaturatesCorrelation) {
    snowv::Key256 key = patternedKey();
    std::vector<snowv::Iv128> ivs;
    for (int j = 0; j < 128; ++j)
        ivs.push_back(ivWithWord(1, static_cast<Word16>(j)));
    sim::LeakageModel model;
    model.noiseSigma = 0.0;
    auto ts = sim::simulateTraceSet(sim::FixedKey{key}, sim::IvList{ivs}, ivs.size(), model);

    // Window on the target's value column: with only iv_1 varying, the v_1
    // column aliases the same information and would tie other hypotheses.
    Target t{Lane::U, 0};
    int expectedColumn = sim::columnOf(ts.points, 0, 0, snowv::TapKind::U);
    sca::CpaOptions opt;
    opt.windowBegin = expectedColumn;
    opt.windowEnd = expectedColumn + 1;
    auto res = sca::cpaByte(ts, t, Half::Low, {}, opt);
    auto trueLow = static_cast<std::uint8_t>(key.words[0] & 0xFF);
    ASSERT_TRUE(res.ghosts.has_value());
    EXPECT_TRUE(res.ghosts->containsPositive(trueLow));
    EXPECT_NEAR(res.peak[res.ghosts->a], 1.0, 1e-9);
    EXPECT_NEAR(res.peak[res.ghosts->b], 1.0, 1e-9);
    EXPECT_NEAR(res.peak[res.ghosts->c], -1.0, 1e-9);
    EXPECT_NEAR(res.peak[res.ghosts->d], -1.0, 1e-9);
    EXPECT_LE(res.rankOf(trueLow), 1);
    EXPECT_EQ(res.column[res.ghosts->a], expectedColumn);
    EXPECT_EQ(res.tracesUsed, 128u);
    // No hypothesis beats the saturated pair.
    for (int h = 0; h < 256; ++h)
        EXPECT_LE(std::abs(res.peak[h]), 1.0 + 1e-9);
}

TEST(Cpa, RankingFollowsDocumentedOrder) {
    snowv::Key256 key = patternedKey();
    std::vector<snowv::Iv128> ivs;
    for (int j = 0; j < 128; ++j)
        ivs.push_back(ivWithWord(1, static_cast<Word16>(j)));
    sim::LeakageModel model;
    model.noiseSigma = 0.0;
    auto ts = sim::simulateTraceSet(sim::FixedKey{key}, sim::IvList{ivs}, ivs.size(), model);
    auto res = sca::cpaByte(ts, {Lane::U, 0}, Half::Low, {});

    // Independent re-sort: positive peaks descending, then the remainder by
    // descending magnitude, ties toward the smaller byte.
    std::vector<std::uint8_t> positives, rest;
    for (int h = 0; h < 256; ++h)
        (res.peak[h] > 0 ? positives : rest).push_back(static_cast<std::uint8_t>(h));
    auto byValueDesc = [&](std::uint8_t x, std::uint8_t y) {
        if (res.peak[x] != res.peak[y])
            return res.peak[x] > res.peak[y];
        return x < y;
    };
    auto byMagnitudeDesc = [&](std::uint8_t x, std::uint8_t y) {
        if (std::abs(res.peak[x]) != std::abs(res.peak[y]))
            return std::abs(res.peak[x]) > std::abs(res.peak[y]);
        return x < y;
    };
    std::sort(positives.begin(), positives.end(), byValueDesc);
    std::sort(rest.begin(), rest.end(), byMagnitudeDesc);
    positives.insert(positives.end(), rest.begin(), rest.end());
    for (int i = 0; i < 256; ++i)
        ASSERT_EQ(res.ranking[i], positives[static_cast<std::size_t>(i)]) << "rank " << i;
}

/// iv_1 = j << 7 sweeps the bits the high-half model predicts; with the low
/// byte known the true high byte is the unique hypothesis with correlation 1.
TEST(Cpa, NoiselessHighHalfIdentifiesUniqueTop) {
    snowv::Key256 key = patternedKey();
    std::vector<snowv::Iv128> ivs;
    for (int j = 0; j < 256; ++j)
        ivs.push_back(ivWithWord(1, static_cast<Word16>(j << 7)));
    sim::LeakageModel model;
    model.noiseSigma = 0.0;
    auto ts = sim::simulateTraceSet(sim::FixedKey{key}, sim::IvList{ivs}, ivs.size(), model);

    int column = sim::columnOf(ts.points, 0, 0, snowv::TapKind::U);
    sca::CpaOptions opt;
    opt.windowBegin = column;
    opt.windowEnd = column + 1;
    opt.knownLowByte = static_cast<std::uint8_t>(key.words[0] & 0xFF);
    auto res = sca::cpaByte(ts, {Lane::U, 0}, Half::High, {}, opt);
    auto trueHigh = static_cast<std::uint8_t>(key.words[0] >> 8);
    EXPECT_EQ(res.ranking[0], trueHigh);
    EXPECT_NEAR(res.peak[trueHigh], 1.0, 1e-9);
    EXPECT_FALSE(res.ghosts.has_value());
    // The runner-up differs in exactly one of the eight predicted bits.
    EXPECT_NEAR(res.peak[res.ranking[1]], 0.75, 1e-9);
}

TEST(Kkc, LocatesTargetColumnWithBitScaling) {
    snowv::Key256 key = patternedKey();
    sim::LeakageModel model;
    model.noiseSigma = 0.0;
    auto ts = sim::simulateTraceSet(sim::FixedKey{key}, sim::RandomIvs{}, 1500, model);

    auto full = sca::kkc(ts, {Lane::U, 0}, sca::HwBits::B16);
    EXPECT_EQ(full.poi, sim::columnOf(ts.points, 0, 0, snowv::TapKind::U));
    EXPECT_NEAR(full.peak, 1.0, 1e-6);
    EXPECT_EQ(full.tracesUsed, 1500u);

    // Narrower models correlate as sqrt(bits/16) on uniform feedback words.
    double prev = 0.0;
    for (auto bits : {sca::HwBits::B4, sca::HwBits::B6, sca::HwBits::B8}) {
        auto r = sca::kkc(ts, {Lane::U, 0}, bits);
        EXPECT_EQ(r.poi, full.poi) << static_cast<int>(bits);
        double expected = std::sqrt(static_cast<double>(static_cast<int>(bits)) / 16.0);
        EXPECT_NEAR(r.peak, expected, 0.08) << static_cast<int>(bits);
        EXPECT_GT(r.peak, prev);
        prev = r.peak;
    }

    auto vLane = sca::kkc(ts, {Lane::V, 3}, sca::HwBits::B16);
    EXPECT_EQ(vLane.poi, sim::columnOf(ts.points, 0, 3, snowv::TapKind::V));
    EXPECT_NEAR(vLane.peak, 1.0, 1e-6);

    EXPECT_EQ(sca::hwBitsFromInt(6), sca::HwBits::B6);
    EXPECT_THROW(sca::hwBitsFromInt(5), std::invalid_argument);

    auto keyless = sim::simulateTraceSet(sim::FixedKey{key}, sim::RandomIvs{}, 8, model,
                                         {.recordKeys = false});
    EXPECT_THROW(sca::kkc(keyless, {Lane::U, 0}), std::invalid_argument);
}

TEST(Mtd, CurveLocksInOnTruePair) {
    snowv::Key256 key = patternedKey();
    sim::LeakageModel model; // default noise 0.1
    auto ts = sim::simulateTraceSet(sim::FixedKey{key}, sim::RandomIvs{}, 400, model,
                                    {.masterSeed = 11});
    Target t{Lane::U, 0};
    int col = sim::columnOf(ts.points, 0, 0, snowv::TapKind::U);
    sca::MtdOptions opt;
    opt.windowBegin = col;
    opt.windowEnd = col + 1;
    opt.stride = 25;
    auto trueLow = static_cast<std::uint8_t>(key.words[0] & 0xFF);
    auto curve = sca::mtdCurve(ts, t, trueLow, {}, opt);

    EXPECT_EQ(curve.ghosts, sca::ghostSetFor(trueLow, sca::dConstant(t)));
    ASSERT_EQ(curve.points.size(), 16u);
    EXPECT_EQ(curve.points.front().n, 25u);
    EXPECT_EQ(curve.points.back().n, 400u);

    ASSERT_TRUE(curve.mtd.has_value());
    EXPECT_LE(*curve.mtd, 200u);
    // Lock-in re-derived from the points: the earliest checkpoint whose
    // entire suffix keeps the positive pair on top.
    std::optional<std::size_t> expected;
    for (auto it = curve.points.rbegin(); it != curve.points.rend() && it->pairLeads; ++it)
        expected = it->n;
    EXPECT_EQ(curve.mtd, expected);
    EXPECT_TRUE(curve.points.back().pairLeads);
    // The 7-bit model explains 7/16 of the word's Hamming-weight variance:
    // rho ~ sqrt(7/4) / sqrt(16/4 + sigma^2) ~ 0.661 at sigma = 0.1.
    EXPECT_NEAR(curve.points.back().topPeak, 0.661, 0.06);
}

TEST(Cpa, OptionValidation) {
    snowv::Key256 key = patternedKey();
    sim::LeakageModel model;
    auto ts = sim::simulateTraceSet(sim::FixedKey{key}, sim::RandomIvs{}, 150, model);

    sca::CpaOptions bad;
    bad.windowBegin = 40; // beyond the 32-column layout
    EXPECT_THROW(sca::cpaByte(ts, {Lane::U, 0}, Half::Low, {}, bad), std::invalid_argument);
    bad.windowBegin = 0;
    bad.windowEnd = 33;
    EXPECT_THROW(sca::cpaByte(ts, {Lane::U, 0}, Half::Low, {}, bad), std::invalid_argument);

    sca::CpaOptions capped;
    capped.maxTraces = 100;
    EXPECT_EQ(sca::cpaByte(ts, {Lane::U, 0}, Half::Low, {}, capped).tracesUsed, 100u);

    auto tiny = sim::simulateTraceSet(sim::FixedKey{key}, sim::RandomIvs{}, 1, model);
    EXPECT_THROW(sca::cpaByte(tiny, {Lane::U, 0}, Half::Low, {}), std::invalid_argument);

    sca::MtdOptions zeroStride;
    zeroStride.stride = 0;
    EXPECT_THROW(sca::mtdCurve(ts, {Lane::U, 0}, 0x00, {}, zeroStride), std::invalid_argument);
}

} // namespace
