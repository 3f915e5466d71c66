/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <string>
#include <vector>

namespace snowlab::plot {

/// One named y-vector of a curve; every series shares the curve's x-vector.
struct Series {
    std::string label;
    std::vector<double> y;
};

/// A small multi-series line chart with a shared x axis.
struct Curve {
    std::string xLabel = "x";
    std::string yLabel = "y";
    std::vector<double> x;
    std::vector<Series> series;
};

struct SvgOptions {
    int width = 880;
    int height = 520;
    std::string title;
    std::vector<double> hLines; // dashed horizontal reference lines
    std::vector<double> vLines; // dashed vertical marker lines
    bool markers = false;       // circle markers at every data point
};

/// Renders the curve as a standalone SVG document.
std::string renderSvg(const Curve &curve, const SvgOptions &opt = {});

/// renderSvg written to a file.  Throws std::runtime_error on I/O failure.
void writeSvg(const std::string &path, const Curve &curve, const SvgOptions &opt = {});

/// Writes "xLabel,label...," header plus one row per x with full double
/// precision, so readCurveCsv restores the curve bit-exactly.
void writeCurveCsv(const std::string &path, const Curve &curve);

/// Parses a file written by writeCurveCsv.  Throws std::runtime_error on
/// missing files or malformed rows.
Curve readCurveCsv(const std::string &path);

} // namespace snowlab::plot
