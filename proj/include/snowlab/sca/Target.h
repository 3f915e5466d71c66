/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "snowlab/snowv/SnowV.h"

namespace snowlab::sca {

/// Which first-round feedback word an analysis attacks: u_i (LFSR-A lane) or
/// v_i (LFSR-B lane), i = 0..7.
enum class Lane { U, V };

struct Target {
    Lane lane = Lane::U;
    int iteration = 0;
    bool operator==(const Target &) const = default;
};

std::string toString(Target t);          // "u0" .. "v7"
Target targetFromString(const std::string &name);

/// Index of the key word the target's inverse tap consumes: u_i reads k_i,
/// v_i reads k_{8+i}.
int keyWordIndex(Target t);

/// The lane's inverse-step constant.
snowv::Word16 dConstant(Target t);

/// Thrown when a target's known contribution needs a key word that has not
/// been recovered yet (u_7 needs k_0; v_5..v_7 need k_8..k_10).
class DependencyError : public std::runtime_error {
  public:
    DependencyError(Target t, int wordIndex);
    int requiredWord;
};

/// The IV/known-key part of the first-round feedback word:
///   u_i = knownContribution ^ mulXInv(k_i)        (k_0 needed when i = 7)
///   v_i = knownContribution ^ mulXInv(k_{8+i})    (k_{i+3} needed when i >= 5)
/// Throws DependencyError when a required key word is missing from `known`.
snowv::Word16 knownContribution(Target t, const snowv::Iv128 &iv,
                                const std::map<int, snowv::Word16> &known);

/// True feedback word under full key knowledge, taken from the cipher's own
/// first LFSR update (evaluation mode).
snowv::Word16 trueFeedbackWord(Target t, const snowv::Key256 &key, const snowv::Iv128 &iv);

} // namespace snowlab::sca
