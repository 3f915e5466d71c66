/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#include "snowlab/snowv/SnowV.h"

#include <stdexcept>

#include "snowlab/Hex.h"

namespace snowlab::snowv {

namespace {

// FIPS-197 S-box.  A unit test re-derives this table from GF(2^8) inversion
// plus the affine transform, so a transcription slip cannot survive.
constexpr std::array<std::uint8_t, 256> kSbox = {
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab, 0x76,
    0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0,
    0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
    0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2, 0xeb, 0x27, 0xb2, 0x75,
    0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84,
    0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
    0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8,
    0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5, 0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2,
    0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
    0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb,
    0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79,
    0xe7, 0xc8, 0x37, 0x6d, 0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
    0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a,
    0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e,
    0xe1, 0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb, 0x16};

constexpr std::uint8_t xtime(std::uint8_t x) {
    return static_cast<std::uint8_t>((x << 1) ^ ((x >> 7) * 0x1B));
}

} // namespace

Block128 add32x4(const Block128 &x, const Block128 &y) {
    Block128 r;
    for (unsigned i = 0; i < 4; ++i)
        r.setLane(i, x.lane(i) + y.lane(i));
    return r;
}

Block128 sigmaPermute(const Block128 &x) {
    Block128 r;
    for (unsigned i = 0; i < 16; ++i)
        r.bytes[i] = x.bytes[kSigma[i]];
    return r;
}

Block128 aesEncRound(const Block128 &state, const Block128 &roundKey) {
    // SubBytes and ShiftRows fused: row r of the output takes column (c+r)%4.
    // Byte 4*c+r of the block is state row r, column c.
    std::array<std::uint8_t, 16> t;
    for (unsigned c = 0; c < 4; ++c)
        for (unsigned r = 0; r < 4; ++r)
            t[4 * c + r] = kSbox[state.bytes[4 * ((c + r) % 4) + r]];
    Block128 out;
    for (unsigned c = 0; c < 4; ++c) {
        std::uint8_t s0 = t[4 * c], s1 = t[4 * c + 1], s2 = t[4 * c + 2], s3 = t[4 * c + 3];
        out.bytes[4 * c + 0] = static_cast<std::uint8_t>(xtime(s0) ^ (xtime(s1) ^ s1) ^ s2 ^ s3);
        out.bytes[4 * c + 1] = static_cast<std::uint8_t>(s0 ^ xtime(s1) ^ (xtime(s2) ^ s2) ^ s3);
        out.bytes[4 * c + 2] = static_cast<std::uint8_t>(s0 ^ s1 ^ xtime(s2) ^ (xtime(s3) ^ s3));
        out.bytes[4 * c + 3] = static_cast<std::uint8_t>((xtime(s0) ^ s0) ^ s1 ^ s2 ^ xtime(s3));
    }
    return out ^ roundKey;
}

Key256 Key256::fromBytes(std::span<const std::uint8_t, 32> bytes) {
    Key256 k;
    for (unsigned i = 0; i < 16; ++i)
        k.words[i] = static_cast<Word16>(bytes[2 * i] | (bytes[2 * i + 1] << 8));
    return k;
}

Key256 Key256::fromHex(const std::string &hex) {
    auto bytes = snowlab::fromHexExact(hex, 32);
    return fromBytes(std::span<const std::uint8_t, 32>(bytes.data(), 32));
}

std::array<std::uint8_t, 32> Key256::toBytes() const {
    std::array<std::uint8_t, 32> out{};
    for (unsigned i = 0; i < 16; ++i) {
        out[2 * i] = static_cast<std::uint8_t>(words[i] & 0xFF);
        out[2 * i + 1] = static_cast<std::uint8_t>(words[i] >> 8);
    }
    return out;
}

std::string Key256::toHex() const {
    auto bytes = toBytes();
    return snowlab::toHex(bytes);
}

Iv128 Iv128::fromBytes(std::span<const std::uint8_t, 16> bytes) {
    Iv128 iv;
    for (unsigned i = 0; i < 8; ++i)
        iv.words[i] = static_cast<Word16>(bytes[2 * i] | (bytes[2 * i + 1] << 8));
    return iv;
}

Iv128 Iv128::fromHex(const std::string &hex) {
    auto bytes = snowlab::fromHexExact(hex, 16);
    return fromBytes(std::span<const std::uint8_t, 16>(bytes.data(), 16));
}

std::array<std::uint8_t, 16> Iv128::toBytes() const {
    std::array<std::uint8_t, 16> out{};
    for (unsigned i = 0; i < 8; ++i) {
        out[2 * i] = static_cast<std::uint8_t>(words[i] & 0xFF);
        out[2 * i + 1] = static_cast<std::uint8_t>(words[i] >> 8);
    }
    return out;
}

std::string Iv128::toHex() const {
    auto bytes = toBytes();
    return snowlab::toHex(bytes);
}

const char *toString(TapKind kind) {
    switch (kind) {
    case TapKind::BranchA:
        return "branch_a";
    case TapKind::U:
        return "u";
    case TapKind::BranchB:
        return "branch_b";
    case TapKind::V:
        return "v";
    case TapKind::UShare0:
        return "u_share0";
    case TapKind::UShare1:
        return "u_share1";
    case TapKind::VShare0:
        return "v_share0";
    case TapKind::VShare1:
        return "v_share1";
    }
    return "?";
}

TapKind tapKindFromString(const std::string &name) {
    for (int k = 0; k <= static_cast<int>(TapKind::VShare1); ++k)
        if (name == toString(static_cast<TapKind>(k)))
            return static_cast<TapKind>(k);
    throw std::invalid_argument("unknown tap kind: " + name);
}

LfsrState lfsrUpdate(const LfsrState &state, const TapObserver &observer, int round) {
    // All eight sub-iterations read only pre-update cells: the words a_8..a_15
    // and b_8..b_15 consumed by sub-iteration i are still untouched when a
    // shifting implementation reaches it, so both formulations agree.
    std::array<Word16, 8> u, v;
    for (int i = 0; i < 8; ++i) {
        if (observer)
            observer({round, i, i, TapKind::BranchA, static_cast<Word16>(state.a[i + 8] & 1)});
        u[i] = static_cast<Word16>(mulX(state.a[i], kAlphaA) ^ state.a[i + 1] ^
                                   mulXInv(state.a[i + 8], kAlphaInvA) ^ state.b[i]);
        if (observer)
            observer({round, i, i, TapKind::U, u[i]});
        if (observer)
            observer({round, i, i, TapKind::BranchB, static_cast<Word16>(state.b[i + 8] & 1)});
        v[i] = static_cast<Word16>(mulX(state.b[i], kAlphaB) ^ state.b[i + 3] ^
                                   mulXInv(state.b[i + 8], kAlphaInvB) ^ state.a[i]);
        if (observer)
            observer({round, i, i, TapKind::V, v[i]});
    }
    LfsrState next;
    for (int i = 0; i < 8; ++i) {
        next.a[i] = state.a[i + 8];
        next.a[i + 8] = u[i];
        next.b[i] = state.b[i + 8];
        next.b[i + 8] = v[i];
    }
    return next;
}

Block128 tap1(const LfsrState &lfsr) {
    Block128 t;
    for (unsigned j = 0; j < 8; ++j)
        t.setWord(j, lfsr.b[8 + j]);
    return t;
}

Block128 tap2(const LfsrState &lfsr) {
    Block128 t;
    for (unsigned j = 0; j < 8; ++j)
        t.setWord(j, lfsr.a[j]);
    return t;
}

FsmState fsmUpdate(const FsmState &fsm, const Block128 &t2) {
    FsmState next;
    Block128 zero{};
    next.r1 = sigmaPermute(add32x4(t2 ^ fsm.r3, fsm.r2));
    next.r2 = aesEncRound(fsm.r1, zero);
    next.r3 = aesEncRound(fsm.r2, zero);
    return next;
}

Block128 keystreamOutput(const CipherState &state) {
    if (state.phase == Phase::Uninitialized)
        throw std::logic_error("keystreamOutput: cipher state not initialized");
    return add32x4(tap1(state.lfsr), state.fsm.r1) ^ state.fsm.r2;
}

CipherState loadState(const Key256 &key, const Iv128 &iv) {
    CipherState s;
    for (unsigned i = 0; i < 8; ++i) {
        s.lfsr.a[i] = iv.words[i];
        s.lfsr.a[i + 8] = key.words[i];
        s.lfsr.b[i] = 0;
        s.lfsr.b[i + 8] = key.words[i + 8];
    }
    s.phase = Phase::Initializing;
    s.round = 0;
    return s;
}

void initRound(CipherState &state, const Key256 &key, const LfsrStepFn &step) {
    if (state.phase != Phase::Initializing)
        throw std::logic_error("initRound: state is not in the initialization phase");
    Block128 z = keystreamOutput(state);
    Block128 t2 = tap2(state.lfsr);
    state.fsm = fsmUpdate(state.fsm, t2);
    state.lfsr = step ? step(state.lfsr, state.round) : lfsrUpdate(state.lfsr, {}, state.round);
    // Feedback: z lands in the words just produced by the update.
    for (unsigned j = 0; j < 8; ++j)
        state.lfsr.a[8 + j] ^= z.word(j);
    if (state.round == 14)
        for (unsigned i = 0; i < 8; ++i)
            state.fsm.r1.setWord(i, static_cast<Word16>(state.fsm.r1.word(i) ^ key.words[i]));
    if (state.round == 15)
        for (unsigned i = 0; i < 8; ++i)
            state.fsm.r1.setWord(i, static_cast<Word16>(state.fsm.r1.word(i) ^ key.words[i + 8]));
    state.round += 1;
    if (state.round == 16)
        state.phase = Phase::Keystream;
}

CipherState initialize(const Key256 &key, const Iv128 &iv, const LfsrStepFn &step) {
    CipherState s = loadState(key, iv);
    for (int r = 0; r < 16; ++r)
        initRound(s, key, step);
    return s;
}

Block128 nextKeystream(CipherState &state, const LfsrStepFn &step) {
    if (state.phase != Phase::Keystream)
        throw std::logic_error("nextKeystream: cipher state is not in the keystream phase");
    Block128 z = keystreamOutput(state);
    Block128 t2 = tap2(state.lfsr);
    state.fsm = fsmUpdate(state.fsm, t2);
    state.lfsr = step ? step(state.lfsr, state.round) : lfsrUpdate(state.lfsr, {}, state.round);
    state.round += 1;
    return z;
}

std::vector<std::uint8_t> xorCrypt(const Key256 &key, const Iv128 &iv,
                                   std::span<const std::uint8_t> data) {
    CipherState s = initialize(key, iv);
    std::vector<std::uint8_t> out(data.begin(), data.end());
    for (std::size_t off = 0; off < out.size(); off += 16) {
        Block128 z = nextKeystream(s);
        for (std::size_t j = 0; j < 16 && off + j < out.size(); ++j)
            out[off + j] ^= z.bytes[j];
    }
    return out;
}

} // namespace snowlab::snowv
