/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#include "snowlab/sim/Leakage.h"

#include <bit>
#include <stdexcept>

#include "snowlab/Rng.h"

namespace snowlab::sim {

using cm::MaskStream;
using cm::ShuffleOrder;
using cm::Variant;
using snowv::Block128;
using snowv::CipherState;
using snowv::Iv128;
using snowv::Key256;
using snowv::LfsrState;
using snowv::TapEvent;
using snowv::TapKind;
using snowv::TapObserver;
using snowv::Word16;

std::string SamplePoint::id() const {
    return "r" + std::to_string(round) + ".s" + std::to_string(slot) + "." +
           snowv::toString(kind);
}

std::vector<SamplePoint> traceLayout(Variant variant, int rounds) {
    if (rounds < 1 || rounds > 16)
        throw std::invalid_argument("traceLayout: rounds must be in 1..16");
    std::vector<SamplePoint> points;
    for (int r = 0; r < rounds; ++r) {
        for (int s = 0; s < 8; ++s) {
            switch (variant) {
            case Variant::Reference:
            case Variant::Shuffled:
                points.push_back({r, s, TapKind::BranchA});
                points.push_back({r, s, TapKind::U});
                points.push_back({r, s, TapKind::BranchB});
                points.push_back({r, s, TapKind::V});
                break;
            case Variant::ConstantTime:
                points.push_back({r, s, TapKind::U});
                points.push_back({r, s, TapKind::V});
                break;
            case Variant::Masked:
                points.push_back({r, s, TapKind::BranchA});
                points.push_back({r, s, TapKind::UShare0});
                points.push_back({r, s, TapKind::UShare1});
                points.push_back({r, s, TapKind::BranchB});
                points.push_back({r, s, TapKind::VShare0});
                points.push_back({r, s, TapKind::VShare1});
                break;
            }
        }
    }
    return points;
}

int columnOf(const std::vector<SamplePoint> &points, int round, int slot, TapKind kind) {
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i].round == round && points[i].slot == slot && points[i].kind == kind)
            return static_cast<int>(i);
    return -1;
}

namespace {

void validateModel(const LeakageModel &model) {
    if (model.rounds < 1 || model.rounds > 16)
        throw std::invalid_argument("LeakageModel: rounds must be in 1..16");
    if (model.noiseSigma < 0)
        throw std::invalid_argument("LeakageModel: noiseSigma must be non-negative");
}

bool isBranch(TapKind kind) { return kind == TapKind::BranchA || kind == TapKind::BranchB; }

} // namespace

std::vector<float> simulateTrace(const Key256 &key, const Iv128 &iv, const LeakageModel &model,
                                 Variant variant, std::uint64_t traceSeed, Block128 *keystream0,
                                 MaskStream *externalMasks) {
    validateModel(model);
    MaskStream ownMasks(rnd::deriveSeed(traceSeed, rnd::kStreamMask, 0));
    MaskStream *masks = externalMasks ? externalMasks : &ownMasks;
    std::mt19937_64 shuffleRng(rnd::deriveSeed(traceSeed, rnd::kStreamShuffle, 0));

    std::vector<TapEvent> events;
    TapObserver collect = [&](const TapEvent &e) { events.push_back(e); };
    TapObserver none;
    snowv::LfsrStepFn step = [&](const LfsrState &s, int round) {
        const TapObserver &obs = round < model.rounds ? collect : none;
        switch (variant) {
        case Variant::Reference:
            return snowv::lfsrUpdate(s, obs, round);
        case Variant::ConstantTime:
            return cm::lfsrUpdateCt(s, obs, round);
        case Variant::Masked:
            return cm::lfsrUpdateMasked(s, *masks, obs, round);
        case Variant::Shuffled:
            return cm::lfsrUpdateShuffled(s, ShuffleOrder::random(shuffleRng), obs, round);
        }
        return snowv::lfsrUpdate(s, obs, round);
    };
    CipherState state = snowv::initialize(key, iv, step);
    if (keystream0)
        *keystream0 = snowv::keystreamOutput(state);

    std::vector<SamplePoint> layout = traceLayout(variant, model.rounds);
    if (events.size() != layout.size())
        throw std::logic_error("simulateTrace: tap events disagree with the sample map");

    rnd::NormalSampler noise(rnd::deriveSeed(traceSeed, rnd::kStreamNoise, 0));
    std::vector<float> samples(layout.size());
    for (std::size_t j = 0; j < events.size(); ++j) {
        const TapEvent &e = events[j];
        if (e.round != layout[j].round || e.slot != layout[j].slot || e.kind != layout[j].kind)
            throw std::logic_error("simulateTrace: tap event order disagrees with the sample map");
        double signal = isBranch(e.kind)
                            ? model.branchDelta * static_cast<double>(e.value)
                            : model.hwScale * static_cast<double>(std::popcount(e.value));
        samples[j] = static_cast<float>(signal + noise.next(model.noiseSigma));
    }
    return samples;
}

namespace {

Key256 keyForTrace(const KeyPolicy &policy, std::uint64_t masterSeed, std::size_t i) {
    if (const auto *fixed = std::get_if<FixedKey>(&policy))
        return fixed->key;
    if (const auto *list = std::get_if<KeyList>(&policy)) {
        if (list->keys.empty())
            throw std::invalid_argument("KeyList: empty key list");
        return list->keys[i % list->keys.size()];
    }
    std::mt19937_64 rng(rnd::deriveSeed(masterSeed, rnd::kStreamKey, i));
    Key256 k;
    for (auto &w : k.words)
        w = static_cast<Word16>(rng());
    return k;
}

Iv128 ivForTrace(const IvPolicy &policy, std::uint64_t masterSeed, std::size_t i) {
    if (const auto *fixed = std::get_if<FixedIv>(&policy))
        return fixed->iv;
    if (const auto *list = std::get_if<IvList>(&policy)) {
        if (list->ivs.empty())
            throw std::invalid_argument("IvList: empty IV list");
        return list->ivs[i % list->ivs.size()];
    }
    std::mt19937_64 rng(rnd::deriveSeed(masterSeed, rnd::kStreamIv, i));
    Iv128 iv;
    for (auto &w : iv.words)
        w = static_cast<Word16>(rng());
    return iv;
}

} // namespace

TraceSet simulateTraceSet(const KeyPolicy &keys, const IvPolicy &ivs, std::size_t n,
                          const LeakageModel &model, const SimulateOptions &options) {
    validateModel(model);
    TraceSet ts;
    ts.variant = options.variant;
    ts.model = model;
    ts.masterSeed = options.masterSeed;
    ts.points = traceLayout(options.variant, model.rounds);
    ts.traces.reserve(n);
    ts.samples.resize(n * ts.points.size());
    for (std::size_t i = 0; i < n; ++i) {
        Key256 key = keyForTrace(keys, options.masterSeed, i);
        Iv128 iv = ivForTrace(ivs, options.masterSeed, i);
        std::uint64_t traceSeed = rnd::deriveSeed(options.masterSeed, 0, i);
        Block128 ks0;
        MaskStream entropy = options.entropyMasks ? MaskStream::fromEntropy() : MaskStream(0);
        std::vector<float> row =
            simulateTrace(key, iv, model, options.variant, traceSeed, &ks0,
                          options.entropyMasks ? &entropy : nullptr);
        std::copy(row.begin(), row.end(), ts.samples.begin() + i * ts.points.size());
        TraceRecord rec;
        rec.iv = iv;
        if (options.recordKeys)
            rec.key = key;
        rec.seed = traceSeed;
        rec.keystream0 = ks0;
        ts.traces.push_back(rec);
    }
    return ts;
}

} // namespace snowlab::sim
