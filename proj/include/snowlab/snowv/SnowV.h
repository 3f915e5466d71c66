/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace snowlab::snowv {

using Word16 = std::uint16_t;

/// Feedback constants for the two 16-bit LFSRs.  Each sequence uses one
/// primitive polynomial for the multiply-by-alpha step and a second constant
/// for the multiply-by-alpha-inverse step.
inline constexpr Word16 kAlphaA = 0x990F;    // LFSR-A, mulX
inline constexpr Word16 kAlphaInvA = 0xCC87; // LFSR-A, mulXInv
inline constexpr Word16 kAlphaB = 0xC963;    // LFSR-B, mulX
inline constexpr Word16 kAlphaInvB = 0xE4B1; // LFSR-B, mulXInv

/// Multiplication by alpha in GF(2^16): left shift, conditionally reduced by
/// `c` when the shifted-out bit was set.
constexpr Word16 mulX(Word16 v, Word16 c) {
    if (v & 0x8000)
        return static_cast<Word16>((v << 1) ^ c);
    return static_cast<Word16>(v << 1);
}

/// Multiplication by alpha^-1 in GF(2^16): right shift, conditionally XORing
/// `d` when the shifted-out bit was set.  The branch on bit 0 is the leakage
/// source studied by the analysis toolkit.
constexpr Word16 mulXInv(Word16 v, Word16 d) {
    if (v & 0x0001)
        return static_cast<Word16>((v >> 1) ^ d);
    return static_cast<Word16>(v >> 1);
}

/// 128-bit block addressed as bytes, little-endian 16-bit words, or
/// little-endian 32-bit lanes.
struct Block128 {
    std::array<std::uint8_t, 16> bytes{};

    Word16 word(unsigned i) const {
        return static_cast<Word16>(bytes[2 * i] | (bytes[2 * i + 1] << 8));
    }
    void setWord(unsigned i, Word16 w) {
        bytes[2 * i] = static_cast<std::uint8_t>(w & 0xFF);
        bytes[2 * i + 1] = static_cast<std::uint8_t>(w >> 8);
    }
    std::uint32_t lane(unsigned i) const {
        return static_cast<std::uint32_t>(bytes[4 * i]) |
               (static_cast<std::uint32_t>(bytes[4 * i + 1]) << 8) |
               (static_cast<std::uint32_t>(bytes[4 * i + 2]) << 16) |
               (static_cast<std::uint32_t>(bytes[4 * i + 3]) << 24);
    }
    void setLane(unsigned i, std::uint32_t v) {
        bytes[4 * i] = static_cast<std::uint8_t>(v);
        bytes[4 * i + 1] = static_cast<std::uint8_t>(v >> 8);
        bytes[4 * i + 2] = static_cast<std::uint8_t>(v >> 16);
        bytes[4 * i + 3] = static_cast<std::uint8_t>(v >> 24);
    }

    friend Block128 operator^(const Block128 &x, const Block128 &y) {
        Block128 r;
        for (unsigned i = 0; i < 16; ++i)
            r.bytes[i] = static_cast<std::uint8_t>(x.bytes[i] ^ y.bytes[i]);
        return r;
    }
    bool operator==(const Block128 &) const = default;
};

/// Byte-wise addition of four 32-bit little-endian lanes mod 2^32.
Block128 add32x4(const Block128 &x, const Block128 &y);

/// The byte permutation applied to R1 candidates inside the FSM update.
/// sigma[i] names the source byte for destination byte i.
inline constexpr std::array<std::uint8_t, 16> kSigma = {0, 4, 8,  12, 1, 5, 9,  13,
                                                        2, 6, 10, 14, 3, 7, 11, 15};
Block128 sigmaPermute(const Block128 &x);

/// One AES-128 encryption round (SubBytes, ShiftRows, MixColumns,
/// AddRoundKey) on a 16-byte block where byte 4*c+r holds state row r,
/// column c.
Block128 aesEncRound(const Block128 &state, const Block128 &roundKey);

/// 256-bit key as sixteen 16-bit words k_0..k_15; byte 2i of the byte-string
/// form is the low byte of word i.
struct Key256 {
    std::array<Word16, 16> words{};

    static Key256 fromBytes(std::span<const std::uint8_t, 32> bytes);
    static Key256 fromHex(const std::string &hex); // 64 hex digits
    std::array<std::uint8_t, 32> toBytes() const;
    std::string toHex() const;
    bool operator==(const Key256 &) const = default;
};

/// 128-bit IV as eight 16-bit words iv_0..iv_7, same byte convention.
struct Iv128 {
    std::array<Word16, 8> words{};

    static Iv128 fromBytes(std::span<const std::uint8_t, 16> bytes);
    static Iv128 fromHex(const std::string &hex); // 32 hex digits
    std::array<std::uint8_t, 16> toBytes() const;
    std::string toHex() const;
    bool operator==(const Iv128 &) const = default;
};

/// The two 16-stage LFSRs.  a[0] is a_0 (the stage consumed next), a[15] the
/// most recently produced stage, and likewise for b.
struct LfsrState {
    std::array<Word16, 16> a{};
    std::array<Word16, 16> b{};
    bool operator==(const LfsrState &) const = default;
};

/// FSM registers.
struct FsmState {
    Block128 r1, r2, r3;
    bool operator==(const FsmState &) const = default;
};

enum class Phase { Uninitialized, Initializing, Keystream };

struct CipherState {
    LfsrState lfsr;
    FsmState fsm;
    Phase phase = Phase::Uninitialized;
    int round = 0; // completed initialization rounds
    bool operator==(const CipherState &) const = default;
};

/// Intermediate values exposed by one LFSR update, in execution order.  The
/// Branch kinds carry the bit that decides the conditional reduction inside
/// mulXInv; U/V carry the freshly produced feedback words.  The Share kinds
/// are emitted instead of U/V by the masked variant.
enum class TapKind : std::uint8_t {
    BranchA,
    U,
    BranchB,
    V,
    UShare0,
    UShare1,
    VShare0,
    VShare1,
};

const char *toString(TapKind kind);
TapKind tapKindFromString(const std::string &name);

struct TapEvent {
    int round = 0;     // which lfsrUpdate call this belongs to
    int slot = 0;      // schedule position 0..7 within the update
    int iteration = 0; // logical sub-iteration index 0..7 (== slot unless shuffled)
    TapKind kind = TapKind::U;
    Word16 value = 0;
};

using TapObserver = std::function<void(const TapEvent &)>;

/// One full LFSR update: eight sub-iterations, each producing one new word
/// for A and one for B.  Sub-iteration i computes, from the pre-update cells,
///   u_i = mulX(a_i, kAlphaA) ^ a_{i+1} ^ mulXInv(a_{i+8}, kAlphaInvA) ^ b_i
///   v_i = mulX(b_i, kAlphaB) ^ b_{i+3} ^ mulXInv(b_{i+8}, kAlphaInvB) ^ a_i
/// and the post-update state is a = (a_8..a_15, u_0..u_7),
/// b = (b_8..b_15, v_0..v_7).  When set, `observer` receives BranchA, U,
/// BranchB, V events per sub-iteration in that order.
LfsrState lfsrUpdate(const LfsrState &state, const TapObserver &observer = {}, int round = 0);

/// T1 = (b_15, ..., b_8): word j of the result is b_{8+j}.
Block128 tap1(const LfsrState &lfsr);
/// T2 = (a_7, ..., a_0): word j of the result is a_j.
Block128 tap2(const LfsrState &lfsr);

/// FSM update consuming T2:
///   R1' = sigmaPermute(add32x4(T2 ^ R3, R2)),  R2' = aes(R1),  R3' = aes(R2)
/// with all-zero AES round keys.
FsmState fsmUpdate(const FsmState &fsm, const Block128 &t2);

/// Keystream word block z = add32x4(T1, R1) ^ R2.  Throws std::logic_error if
/// the state has not been through key/IV loading.
Block128 keystreamOutput(const CipherState &state);

/// Pluggable LFSR step used to thread countermeasure variants through
/// initialization and keystream generation.
using LfsrStepFn = std::function<LfsrState(const LfsrState &state, int round)>;

/// Key/IV loading only: a = (iv_0..iv_7, k_0..k_7), b = (0,...,0, k_8..k_15),
/// R1 = R2 = R3 = 0.  Returns a state in Phase::Initializing with round 0.
CipherState loadState(const Key256 &key, const Iv128 &iv);

/// One initialization round on a state in Phase::Initializing: emit z, run
/// the FSM update, run the LFSR update (via `step` when provided), XOR z into
/// the just-produced a_8..a_15, and on rounds 15 and 16 XOR the low/high key
/// half into R1.  Throws std::logic_error outside Phase::Initializing.
void initRound(CipherState &state, const Key256 &key, const LfsrStepFn &step = {});

/// Full initialization: loadState followed by 16 initRounds.  The returned
/// state is in Phase::Keystream.
CipherState initialize(const Key256 &key, const Iv128 &iv, const LfsrStepFn &step = {});

/// Emits the next keystream block and advances the state (FSM update, then
/// LFSR update without feedback of z).  Throws std::logic_error unless the
/// state is in Phase::Keystream.
Block128 nextKeystream(CipherState &state, const LfsrStepFn &step = {});

/// Convenience: initialize with (key, iv) and XOR the generated keystream
/// into `data` (encryption and decryption are the same operation).
std::vector<std::uint8_t> xorCrypt(const Key256 &key, const Iv128 &iv,
                                   std::span<const std::uint8_t> data);

} // namespace snowlab::snowv
