/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>

namespace snowlab::test {

/// Test-only oracle: a straight transcription of the published reference
/// implementation of the cipher (global-style state, in-place shifting LFSR,
/// table-driven AES round).  It deliberately shares no code or formulation
/// with the library under test; the unit and acceptance suites compare the
/// two implementations word for word.
class RefSnowV {
  public:
    std::uint16_t A[16] = {}, B[16] = {};
    std::uint32_t R1[4] = {}, R2[4] = {}, R3[4] = {};

    /// Key/IV loading only (no initialization rounds).
    void load(const std::uint8_t key[32], const std::uint8_t iv[16]);
    /// The 16 initialization rounds with keystream feedback and key XOR.
    void init(const std::uint8_t key[32]);
    /// load + init.
    void keyivSetup(const std::uint8_t key[32], const std::uint8_t iv[16]);
    /// Emits the next 16 keystream bytes and advances the state.
    void keystreamBlock(std::uint8_t z[16]);

    // Exposed so tests can drive the sub-steps directly.
    void fsmUpdate();
    void lfsrUpdate();
};

/// Test-only table-driven AES-128 encryption round used as an independent
/// cross-check of the library's byte-wise round function.
void refAesEncRound(std::uint8_t out[16], const std::uint8_t in[16], const std::uint8_t rk[16]);

/// Reference S-box accessor (transcribed independently of the library copy).
std::uint8_t refSbox(std::uint8_t x);

} // namespace snowlab::test
