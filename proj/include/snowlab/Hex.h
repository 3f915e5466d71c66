/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace snowlab {

/// Renders bytes as a lowercase hex string (two digits per byte, in order).
std::string toHex(std::span<const std::uint8_t> bytes);

/// Parses a hex string into bytes.  Accepts upper or lower case; throws
/// std::invalid_argument on odd length or non-hex characters.
std::vector<std::uint8_t> fromHex(const std::string &hex);

/// Parses a hex string of exactly `nBytes` bytes; throws std::invalid_argument
/// otherwise.  Used for fixed-width key/IV/word arguments.
std::vector<std::uint8_t> fromHexExact(const std::string &hex, std::size_t nBytes);

} // namespace snowlab
