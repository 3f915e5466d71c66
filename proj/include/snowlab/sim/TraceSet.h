/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <filesystem>
#include <stdexcept>

#include "snowlab/sim/Leakage.h"

namespace snowlab::sim {

/// Raised for unreadable, malformed, or internally inconsistent trace files.
class TraceFormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Writes `<base>.json` (metadata) and `<base>.f32` (row-major little-endian
/// float32 samples).  The round trip through store/load is bit-exact.
void storeTraceSet(const TraceSet &ts, const std::filesystem::path &base);

/// Loads a pair written by storeTraceSet.  Throws TraceFormatError on
/// missing files, schema violations, or count/size mismatches.
TraceSet loadTraceSet(const std::filesystem::path &base);

/// Writes the sample matrix as CSV: a header row of sample-point ids, then
/// one row per trace.  Values are printed with enough digits to round-trip
/// float32 exactly.
void toCsv(const TraceSet &ts, const std::filesystem::path &csvPath);

/// Imports samples from CSV against an existing metadata JSON (the same
/// schema storeTraceSet writes).  Row/column counts must match the metadata.
TraceSet fromCsv(const std::filesystem::path &metaPath, const std::filesystem::path &csvPath);

} // namespace snowlab::sim
