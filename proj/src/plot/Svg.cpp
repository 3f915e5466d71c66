/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#include "snowlab/plot/Svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace snowlab::plot {

namespace {

constexpr const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#17becf", "#8c564b", "#7f7f7f"};
constexpr int kMarginLeft = 64, kMarginRight = 16, kMarginTop = 32, kMarginBottom = 46;

std::string xmlEscape(const std::string &s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string fmt(double v, const char *spec = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void finish() {
        if (lo > hi) { // no finite data at all
            lo = 0;
            hi = 1;
        }
        if (lo == hi) {
            lo -= 1;
            hi += 1;
        }
        double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
    double frac(double v) const { return (v - lo) / (hi - lo); }
};

} // namespace

std::string renderSvg(const Curve &curve, const SvgOptions &opt) {
    if (curve.x.empty())
        throw std::invalid_argument("renderSvg: empty x vector");
    for (const Series &s : curve.series)
        if (s.y.size() != curve.x.size())
            throw std::invalid_argument("renderSvg: series '" + s.label +
                                        "' length does not match x");

    Range rx, ry;
    for (double v : curve.x)
        rx.add(v);
    for (const Series &s : curve.series)
        for (double v : s.y)
            ry.add(v);
    for (double v : opt.hLines)
        ry.add(v);
    for (double v : opt.vLines)
        rx.add(v);
    rx.finish();
    ry.finish();

    double plotW = opt.width - kMarginLeft - kMarginRight;
    double plotH = opt.height - kMarginTop - kMarginBottom;
    auto px = [&](double v) { return kMarginLeft + rx.frac(v) * plotW; };
    auto py = [&](double v) { return kMarginTop + (1.0 - ry.frac(v)) * plotH; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\""
        << opt.height << "\" viewBox=\"0 0 " << opt.width << " " << opt.height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<g font-family=\"monospace\" font-size=\"12\" fill=\"#222\">\n";
    if (!opt.title.empty())
        svg << "<text x=\"" << opt.width / 2 << "\" y=\"18\" text-anchor=\"middle\">"
            << xmlEscape(opt.title) << "</text>\n";

    // Axes and ticks.
    svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plotH << "\" x2=\""
        << kMarginLeft + plotW << "\" y2=\"" << kMarginTop + plotH
        << "\" stroke=\"#222\"/>\n"
        << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
        << "\" y2=\"" << kMarginTop + plotH << "\" stroke=\"#222\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double fx = rx.lo + (rx.hi - rx.lo) * i / 4.0;
        double fy = ry.lo + (ry.hi - ry.lo) * i / 4.0;
        svg << "<line x1=\"" << px(fx) << "\" y1=\"" << kMarginTop + plotH << "\" x2=\"" << px(fx)
            << "\" y2=\"" << kMarginTop + plotH + 4 << "\" stroke=\"#222\"/>\n"
            << "<text x=\"" << px(fx) << "\" y=\"" << kMarginTop + plotH + 18
            << "\" text-anchor=\"middle\">" << fmt(fx, "%.4g") << "</text>\n"
            << "<line x1=\"" << kMarginLeft - 4 << "\" y1=\"" << py(fy) << "\" x2=\"" << kMarginLeft
            << "\" y2=\"" << py(fy) << "\" stroke=\"#222\"/>\n"
            << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << py(fy) + 4
            << "\" text-anchor=\"end\">" << fmt(fy, "%.4g") << "</text>\n";
    }
    svg << "<text x=\"" << kMarginLeft + plotW / 2 << "\" y=\"" << opt.height - 8
        << "\" text-anchor=\"middle\">" << xmlEscape(curve.xLabel) << "</text>\n"
        << "<text x=\"14\" y=\"" << kMarginTop + plotH / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " << kMarginTop + plotH / 2
        << ")\">" << xmlEscape(curve.yLabel) << "</text>\n";

    // Reference lines.
    for (double v : opt.hLines)
        svg << "<line class=\"refline\" x1=\"" << kMarginLeft << "\" y1=\"" << py(v) << "\" x2=\""
            << kMarginLeft + plotW << "\" y2=\"" << py(v)
            << "\" stroke=\"#c0392b\" stroke-dasharray=\"6 4\"/>\n";
    for (double v : opt.vLines)
        svg << "<line class=\"refline\" x1=\"" << px(v) << "\" y1=\"" << kMarginTop << "\" x2=\""
            << px(v) << "\" y2=\"" << kMarginTop + plotH
            << "\" stroke=\"#c0392b\" stroke-dasharray=\"6 4\"/>\n";

    // Series polylines, markers, legend.
    for (std::size_t s = 0; s < curve.series.size(); ++s) {
        const Series &ser = curve.series[s];
        const char *color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < curve.x.size(); ++i)
            svg << fmt(px(curve.x[i]), "%.2f") << "," << fmt(py(ser.y[i]), "%.2f") << " ";
        svg << "\"/>\n";
        if (opt.markers)
            for (std::size_t i = 0; i < curve.x.size(); ++i)
                svg << "<circle cx=\"" << fmt(px(curve.x[i]), "%.2f") << "\" cy=\""
                    << fmt(py(ser.y[i]), "%.2f") << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        svg << "<rect x=\"" << kMarginLeft + plotW - 150 << "\" y=\"" << kMarginTop + 6 + 16 * s
            << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n"
            << "<text x=\"" << kMarginLeft + plotW - 136 << "\" y=\"" << kMarginTop + 15 + 16 * s
            << "\">" << xmlEscape(ser.label) << "</text>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

void writeSvg(const std::string &path, const Curve &curve, const SvgOptions &opt) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("writeSvg: cannot open " + path);
    out << renderSvg(curve, opt);
    if (!out)
        throw std::runtime_error("writeSvg: write failed for " + path);
}

void writeCurveCsv(const std::string &path, const Curve &curve) {
    for (const Series &s : curve.series)
        if (s.y.size() != curve.x.size())
            throw std::invalid_argument("writeCurveCsv: series '" + s.label +
                                        "' length does not match x");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("writeCurveCsv: cannot open " + path);
    out << curve.xLabel;
    for (const Series &s : curve.series)
        out << "," << s.label;
    out << "\n";
    for (std::size_t i = 0; i < curve.x.size(); ++i) {
        out << fmt(curve.x[i], "%.17g");
        for (const Series &s : curve.series)
            out << "," << fmt(s.y[i], "%.17g");
        out << "\n";
    }
    if (!out)
        throw std::runtime_error("writeCurveCsv: write failed for " + path);
}

Curve readCurveCsv(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("readCurveCsv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("readCurveCsv: missing header in " + path);
    if (!line.empty() && line.back() == '\r')
        line.pop_back();

    Curve curve;
    std::stringstream header(line);
    std::string cell;
    bool first = true;
    while (std::getline(header, cell, ',')) {
        if (first) {
            curve.xLabel = cell;
            first = false;
        } else {
            curve.series.push_back({cell, {}});
        }
    }
    if (first)
        throw std::runtime_error("readCurveCsv: empty header in " + path);

    std::size_t rowIndex = 1;
    while (std::getline(in, line)) {
        ++rowIndex;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::stringstream row(line);
        std::vector<double> values;
        while (std::getline(row, cell, ',')) {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used != cell.size())
                throw std::runtime_error("readCurveCsv: bad number '" + cell + "' at row " +
                                         std::to_string(rowIndex));
            values.push_back(v);
        }
        if (values.size() != curve.series.size() + 1)
            throw std::runtime_error("readCurveCsv: row " + std::to_string(rowIndex) + " has " +
                                     std::to_string(values.size()) + " cells, expected " +
                                     std::to_string(curve.series.size() + 1));
        curve.x.push_back(values[0]);
        for (std::size_t s = 0; s < curve.series.size(); ++s)
            curve.series[s].y.push_back(values[s + 1]);
    }
    return curve;
}

} // namespace snowlab::plot
