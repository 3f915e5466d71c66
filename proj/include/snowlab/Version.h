/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

namespace snowlab {

/// Version string embedded in every JSON result for reproducibility.
inline constexpr const char *kVersion = "0.1.0";

} // namespace snowlab
