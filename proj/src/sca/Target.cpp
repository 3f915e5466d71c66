/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#include "snowlab/sca/Target.h"

namespace snowlab::sca {

using snowv::Iv128;
using snowv::Key256;
using snowv::kAlphaA;
using snowv::kAlphaB;
using snowv::kAlphaInvA;
using snowv::kAlphaInvB;
using snowv::mulX;
using snowv::Word16;

std::string toString(Target t) {
    return std::string(t.lane == Lane::U ? "u" : "v") + std::to_string(t.iteration);
}

Target targetFromString(const std::string &name) {
    if (name.size() == 2 && (name[0] == 'u' || name[0] == 'v') && name[1] >= '0' && name[1] <= '7')
        return {name[0] == 'u' ? Lane::U : Lane::V, name[1] - '0'};
    throw std::invalid_argument("unknown target (expected u0..u7 or v0..v7): " + name);
}

int keyWordIndex(Target t) {
    if (t.iteration < 0 || t.iteration > 7)
        throw std::invalid_argument("target iteration out of range");
    return t.lane == Lane::U ? t.iteration : 8 + t.iteration;
}

Word16 dConstant(Target t) { return t.lane == Lane::U ? kAlphaInvA : kAlphaInvB; }

DependencyError::DependencyError(Target t, int wordIndex)
    : std::runtime_error("target " + toString(t) + " needs key word k_" +
                         std::to_string(wordIndex) + " which is not recovered yet"),
      requiredWord(wordIndex) {}

Word16 knownContribution(Target t, const Iv128 &iv, const std::map<int, Word16> &known) {
    int i = t.iteration;
    if (i < 0 || i > 7)
        throw std::invalid_argument("target iteration out of range");
    auto need = [&](int word) {
        auto it = known.find(word);
        if (it == known.end())
            throw DependencyError(t, word);
        return it->second;
    };
    if (t.lane == Lane::U) {
        // u_i = mulX(a_i) ^ a_{i+1} ^ mulXInv(a_{i+8}) ^ b_i with a = IV words
        // followed by k_0..k_7 and b_0..b_7 = 0 at load time.
        Word16 aNext = i < 7 ? iv.words[i + 1] : need(0);
        return static_cast<Word16>(mulX(iv.words[i], kAlphaA) ^ aNext);
    }
    // v_i = mulX(b_i) ^ b_{i+3} ^ mulXInv(b_{i+8}) ^ a_i with b_0..b_7 = 0,
    // b_8..b_15 = k_8..k_15 and a_i = iv_i.
    Word16 bTap = i >= 5 ? need(i + 3) : 0;
    return static_cast<Word16>(bTap ^ iv.words[i]);
}

Word16 trueFeedbackWord(Target t, const Key256 &key, const Iv128 &iv) {
    snowv::LfsrState next = snowv::lfsrUpdate(snowv::loadState(key, iv).lfsr);
    return t.lane == Lane::U ? next.a[8 + t.iteration] : next.b[8 + t.iteration];
}

} // namespace snowlab::sca
