/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#include "snowlab/Hex.h"

#include <stdexcept>

namespace snowlab {

std::string toHex(std::span<const std::uint8_t> bytes) {
    static const char *digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0F]);
    }
    return out;
}

namespace {
int nibble(char c) {
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}
} // namespace

std::vector<std::uint8_t> fromHex(const std::string &hex) {
    if (hex.size() % 2 != 0)
        throw std::invalid_argument("hex string has odd length: " + hex);
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        int hi = nibble(hex[2 * i]);
        int lo = nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw std::invalid_argument("invalid hex character in: " + hex);
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

std::vector<std::uint8_t> fromHexExact(const std::string &hex, std::size_t nBytes) {
    std::vector<std::uint8_t> out = fromHex(hex);
    if (out.size() != nBytes)
        throw std::invalid_argument("expected " + std::to_string(2 * nBytes) +
                                    " hex digits, got " + std::to_string(hex.size()));
    return out;
}

} // namespace snowlab
