/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "snowlab/snowv/SnowV.h"

namespace snowlab::cm {

/// Hardened implementations of the LFSR update.  All variants compute the
/// identical state transition; they differ only in how the conditional
/// reduction inside mulXInv is executed and in what intermediate values an
/// observer of the execution would see.
enum class Variant { Reference, ConstantTime, Masked, Shuffled };

const char *toString(Variant v);
Variant variantFromString(const std::string &name);

/// Branch-free multiply-by-alpha-inverse: the conditional XOR is replaced by
/// an AND with an all-ones/all-zeros mask derived from bit 0.
constexpr snowv::Word16 mulXInvCt(snowv::Word16 v, snowv::Word16 d) {
    snowv::Word16 mask = static_cast<snowv::Word16>(-static_cast<snowv::Word16>(v & 1));
    return static_cast<snowv::Word16>((v >> 1) ^ (d & mask));
}

/// Operation tally used by the structural constant-time audit: the hardened
/// version must execute the same operation sequence for every input, while
/// the reference version visibly does not.
struct OpCount {
    unsigned shifts = 0;
    unsigned xors = 0;
    unsigned ands = 0;
    unsigned negates = 0;
    unsigned total() const { return shifts + xors + ands + negates; }
    bool operator==(const OpCount &) const = default;
};

snowv::Word16 mulXInvCounted(snowv::Word16 v, snowv::Word16 d, OpCount &ops);
snowv::Word16 mulXInvCtCounted(snowv::Word16 v, snowv::Word16 d, OpCount &ops);

/// Source of 16-bit refresh masks for the masked update.  Deterministic when
/// built from a seed (the reproducibility path), exhaustible when built from
/// a fixed buffer (the test-injection path), or seeded from the OS entropy
/// pool via fromEntropy().
class MaskStream {
  public:
    explicit MaskStream(std::uint64_t seed) : engine(seed), fromBuffer(false) {}
    explicit MaskStream(std::vector<snowv::Word16> fixed)
        : buffer(std::move(fixed)), fromBuffer(true) {}
    static MaskStream fromEntropy();

    /// Next mask word.  Throws std::out_of_range when a fixed buffer runs dry.
    snowv::Word16 next();
    std::size_t drawsUsed() const { return used; }

  private:
    std::mt19937_64 engine{0};
    std::vector<snowv::Word16> buffer;
    bool fromBuffer;
    std::size_t used = 0;
};

/// Execution order for the shuffled update.  Only the first five
/// sub-iterations are permuted; slots 5..7 always run sub-iterations 5..7 in
/// place, so there are 5! = 120 admissible orders.
struct ShuffleOrder {
    std::array<std::uint8_t, 5> head{0, 1, 2, 3, 4};

    static ShuffleOrder identity() { return {}; }
    /// Uniform draw via an explicit Fisher-Yates walk (pinned draw sequence).
    static ShuffleOrder random(std::mt19937_64 &rng);
    /// All 120 admissible orders, for exhaustive audits.
    static std::vector<ShuffleOrder> all();

    /// Throws std::invalid_argument unless head is a permutation of 0..4.
    void validate() const;
    /// Logical sub-iteration executed at schedule position `slot`.
    int iterationAt(int slot) const;
    bool operator==(const ShuffleOrder &) const = default;
};

/// Constant-time update: mulXInvCt replaces the branchy reduction, so no
/// Branch tap events are emitted; U/V events are unchanged.
snowv::LfsrState lfsrUpdateCt(const snowv::LfsrState &state,
                              const snowv::TapObserver &observer = {}, int round = 0);

/// First-order boolean-masked update.  Each sub-iteration draws one fresh
/// mask r, splits the inverse-tap input x into (x ^ r, r), and carries the
/// feedback words as two shares until the state is written back:
///   u_share0 = mulX(a_i) ^ a_{i+1} ^ mulXInv(a_{i+8} ^ r) ^ b_i
///   u_share1 = mulXInv(r)
/// (likewise for v with the same r).  Branch taps carry the data-share bit
/// a_{i+8,0} ^ r_0, which is uniform for uniform r.  Consumes exactly 8
/// masks per update.
snowv::LfsrState lfsrUpdateMasked(const snowv::LfsrState &state, MaskStream &masks,
                                  const snowv::TapObserver &observer = {}, int round = 0);

/// Shuffled update: the same 32 tap events as the reference variant, but the
/// first five sub-iterations execute (and leak) in the order given by
/// `order`.  Event `slot` is the schedule position, `iteration` the logical
/// sub-iteration index.
snowv::LfsrState lfsrUpdateShuffled(const snowv::LfsrState &state, const ShuffleOrder &order,
                                    const snowv::TapObserver &observer = {}, int round = 0);

} // namespace snowlab::cm
