/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#include "snowlab/sca/Lda.h"

#include <cmath>
#include <stdexcept>

#include "snowlab/sca/Stats.h"

namespace snowlab::sca {

std::vector<std::uint8_t> lsbLabels(const sim::TraceSet &ts, Target target) {
    int word = keyWordIndex(target);
    std::vector<std::uint8_t> labels(ts.nTraces());
    for (std::size_t t = 0; t < ts.nTraces(); ++t) {
        if (!ts.traces[t].key)
            throw std::invalid_argument("lsbLabels: trace " + std::to_string(t) +
                                        " carries no key");
        labels[t] = static_cast<std::uint8_t>(ts.traces[t].key->words[word] & 1);
    }
    return labels;
}

LdaModel ldaTrain(const sim::TraceSet &ts, std::span<const std::uint8_t> labels, int windowBegin,
                  int windowEnd) {
    if (labels.size() != ts.nTraces())
        throw std::invalid_argument("ldaTrain: one label per trace required");
    int nCols = static_cast<int>(ts.nSamples());
    if (windowEnd < 0)
        windowEnd = nCols;
    if (windowBegin < 0 || windowBegin >= windowEnd || windowEnd > nCols)
        throw std::invalid_argument("ldaTrain: window out of range");
    std::size_t dim = static_cast<std::size_t>(windowEnd - windowBegin);

    std::size_t n0 = 0, n1 = 0;
    std::vector<double> mu0(dim, 0.0), mu1(dim, 0.0);
    for (std::size_t t = 0; t < ts.nTraces(); ++t) {
        const float *row = ts.row(t) + windowBegin;
        auto &mu = labels[t] ? mu1 : mu0;
        (labels[t] ? n1 : n0) += 1;
        for (std::size_t j = 0; j < dim; ++j)
            mu[j] += row[j];
    }
    if (n0 == 0 || n1 == 0)
        throw std::invalid_argument("ldaTrain: both label classes must be present");
    for (std::size_t j = 0; j < dim; ++j) {
        mu0[j] /= static_cast<double>(n0);
        mu1[j] /= static_cast<double>(n1);
    }

    // Pooled within-class scatter.
    std::vector<double> sw(dim * dim, 0.0), d(dim);
    for (std::size_t t = 0; t < ts.nTraces(); ++t) {
        const float *row = ts.row(t) + windowBegin;
        const auto &mu = labels[t] ? mu1 : mu0;
        for (std::size_t j = 0; j < dim; ++j)
            d[j] = row[j] - mu[j];
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k <= j; ++k)
                sw[j * dim + k] += d[j] * d[k];
    }
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = j + 1; k < dim; ++k)
            sw[j * dim + k] = sw[k * dim + j];

    double diagMean = 0;
    for (std::size_t j = 0; j < dim; ++j)
        diagMean += sw[j * dim + j];
    diagMean /= static_cast<double>(dim);
    double epsilon = std::max(1e-6 * diagMean, 1e-12);

    std::vector<double> diff(dim);
    for (std::size_t j = 0; j < dim; ++j)
        diff[j] = mu1[j] - mu0[j];

    LdaModel model;
    model.windowBegin = windowBegin;
    model.windowEnd = windowEnd;
    model.epsilon = epsilon;
    model.weights = solveSpd(sw, diff, dim, epsilon);
    double m0 = 0, m1 = 0;
    for (std::size_t j = 0; j < dim; ++j) {
        m0 += model.weights[j] * mu0[j];
        m1 += model.weights[j] * mu1[j];
    }
    model.mean0 = m0;
    model.mean1 = m1;
    model.threshold = 0.5 * (m0 + m1);
    model.trainAccuracy = ldaAccuracy(model, ts, labels);
    return model;
}

int ldaPredict(const LdaModel &model, const float *row) {
    double proj = 0;
    for (std::size_t j = 0; j < model.weights.size(); ++j)
        proj += model.weights[j] * row[model.windowBegin + static_cast<int>(j)];
    // w is oriented from class 0 toward class 1 by construction.
    return proj > model.threshold ? 1 : 0;
}

double ldaAccuracy(const LdaModel &model, const sim::TraceSet &ts,
                   std::span<const std::uint8_t> labels) {
    if (labels.size() != ts.nTraces())
        throw std::invalid_argument("ldaAccuracy: one label per trace required");
    if (ts.nTraces() == 0)
        throw std::invalid_argument("ldaAccuracy: empty trace set");
    if (model.windowEnd > static_cast<int>(ts.nSamples()))
        throw std::invalid_argument("ldaAccuracy: model window exceeds the trace length");
    std::size_t hits = 0;
    for (std::size_t t = 0; t < ts.nTraces(); ++t)
        hits += (ldaPredict(model, ts.row(t)) == labels[t]) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(ts.nTraces());
}

} // namespace snowlab::sca
