/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#include "snowlab/sca/Recover.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "snowlab/sca/Kkc.h"

namespace snowlab::sca {

namespace {

/// Column whose class means (under the low-bit labels) differ the most on
/// the profiling set: the branch sample of the target's sub-iteration when
/// the variant exposes one, and the best available fallback otherwise.
int bestLsbColumn(const sim::TraceSet &profile, std::span<const std::uint8_t> labels) {
    std::size_t nCols = profile.nSamples();
    std::vector<double> sum0(nCols, 0.0), sum1(nCols, 0.0);
    std::size_t n0 = 0, n1 = 0;
    for (std::size_t t = 0; t < profile.nTraces(); ++t) {
        const float *row = profile.row(t);
        auto &sum = labels[t] ? sum1 : sum0;
        (labels[t] ? n1 : n0) += 1;
        for (std::size_t c = 0; c < nCols; ++c)
            sum[c] += row[c];
    }
    if (n0 == 0 || n1 == 0)
        throw std::invalid_argument("recoverKey: profiling keys give only one value of the "
                                    "target's low bit");
    int best = 0;
    double bestGap = -1;
    for (std::size_t c = 0; c < nCols; ++c) {
        double gap = std::abs(sum1[c] / static_cast<double>(n1) -
                              sum0[c] / static_cast<double>(n0));
        if (gap > bestGap) {
            bestGap = gap;
            best = static_cast<int>(c);
        }
    }
    return best;
}

} // namespace

std::optional<snowv::Key256> AttackReport::key() const {
    if (!complete)
        return std::nullopt;
    snowv::Key256 k;
    for (int w = 0; w < 16; ++w)
        k.words[w] = *recovered[w];
    return k;
}

std::vector<int> dependencyWords(Target t) {
    if (t.lane == Lane::U)
        return t.iteration == 7 ? std::vector<int>{0} : std::vector<int>{};
    return t.iteration >= 5 ? std::vector<int>{t.iteration + 3} : std::vector<int>{};
}

std::vector<Target> recoverySchedule() {
    std::vector<Target> order;
    for (int i = 0; i < 8; ++i) {
        order.push_back({Lane::U, i});
        order.push_back({Lane::V, i});
    }
    return order;
}

AttackReport recoverKey(const sim::TraceSet &attack, const RecoverOptions &opt) {
    if (!opt.profile)
        throw std::invalid_argument("recoverKey: a profiling set is required");
    const sim::TraceSet &profile = *opt.profile;
    if (profile.points != attack.points)
        throw std::invalid_argument("recoverKey: profile and attack sets use different layouts");
    std::size_t n = attack.nTraces();
    if (opt.maxTraces)
        n = std::min(n, opt.maxTraces);
    if (n < 2)
        throw std::invalid_argument("recoverKey: at least two attack traces required");
    double floor = opt.weakPeakFactor * 4.0 / std::sqrt(static_cast<double>(n));

    AttackReport report;
    report.tracesUsed = n;
    std::map<int, snowv::Word16> known = opt.overrideWords;

    for (Target target : recoverySchedule()) {
        WordRecovery rec;
        rec.wordIndex = keyWordIndex(target);
        rec.target = target;
        rec.dependsOn = dependencyWords(target);

        if (auto it = opt.overrideWords.find(rec.wordIndex); it != opt.overrideWords.end()) {
            rec.resolved = true;
            rec.note = "override";
            rec.lowByte = static_cast<std::uint8_t>(it->second & 0xFF);
            rec.highByte = static_cast<std::uint8_t>(it->second >> 8);
            rec.lsb = it->second & 1;
            report.recovered[rec.wordIndex] = it->second;
            report.words.push_back(std::move(rec));
            continue;
        }

        try {
            // Locate the target's leaky column with the profiling keys.
            KkcResult located = kkc(profile, target);
            CpaOptions cpaOpt;
            cpaOpt.windowBegin = located.poi;
            cpaOpt.windowEnd = located.poi + 1;
            cpaOpt.maxTraces = n;

            CpaByteResult low = cpaByte(attack, target, Half::Low, known, cpaOpt);
            std::uint8_t top = low.ranking[0];
            rec.lowPeak = low.peak[top];
            rec.ghosts = low.ghosts;
            if (std::abs(rec.lowPeak) < floor) {
                rec.note = "low-half peak below the noise floor";
                report.words.push_back(std::move(rec));
                continue;
            }

            // Resolve the ghost ambiguity: vote the key word's low bit with a
            // classifier trained on the profiling set.
            auto labels = lsbLabels(profile, target);
            int column = bestLsbColumn(profile, labels);
            LdaModel lda = ldaTrain(profile, labels, column, column + 1);
            std::size_t votes = std::min(opt.ldaVotes, n);
            std::size_t ones = 0;
            for (std::size_t t = 0; t < votes; ++t)
                ones += static_cast<std::size_t>(ldaPredict(lda, attack.row(t)));
            rec.lsb = (2 * ones > votes) ? 1 : 0;
            rec.lowByte = *rec.lsb ? rec.ghosts->b : rec.ghosts->a;

            cpaOpt.knownLowByte = *rec.lowByte;
            CpaByteResult high = cpaByte(attack, target, Half::High, known, cpaOpt);
            std::uint8_t topHigh = high.ranking[0];
            rec.highPeak = high.peak[topHigh];
            if (std::abs(rec.highPeak) < floor) {
                rec.note = "high-half peak below the noise floor";
                report.words.push_back(std::move(rec));
                continue;
            }
            rec.highByte = topHigh;

            snowv::Word16 word = static_cast<snowv::Word16>((static_cast<unsigned>(topHigh) << 8) |
                                                            *rec.lowByte);
            rec.resolved = true;
            known[rec.wordIndex] = word;
            report.recovered[rec.wordIndex] = word;
        } catch (const DependencyError &e) {
            rec.note = "missing dependency k" + std::to_string(e.requiredWord);
        } catch (const std::invalid_argument &e) {
            rec.note = e.what();
        }
        report.words.push_back(std::move(rec));
    }

    report.complete = std::all_of(report.recovered.begin(), report.recovered.end(),
                                  [](const auto &w) { return w.has_value(); });
    return report;
}

} // namespace snowlab::sca
