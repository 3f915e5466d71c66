/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#include "snowlab/sim/TraceSet.h"

#include <bit>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>

#include "json.hpp"
#include "snowlab/Hex.h"

namespace snowlab::sim {

using nlohmann::json;

static_assert(std::endian::native == std::endian::little,
              "trace files are defined little-endian and this code assumes a matching host");

namespace {

constexpr const char *kFormatName = "snowlab-traces";
constexpr int kFormatVersion = 1;

json metaToJson(const TraceSet &ts) {
    json j;
    j["format"] = kFormatName;
    j["version"] = kFormatVersion;
    j["variant"] = cm::toString(ts.variant);
    j["master_seed"] = std::to_string(ts.masterSeed);
    j["model"] = {{"hw_scale", ts.model.hwScale},
                  {"noise_sigma", ts.model.noiseSigma},
                  {"branch_delta", ts.model.branchDelta},
                  {"rounds", ts.model.rounds}};
    j["n_traces"] = ts.nTraces();
    j["n_samples"] = ts.nSamples();
    json points = json::array();
    for (const SamplePoint &p : ts.points)
        points.push_back({{"round", p.round}, {"slot", p.slot}, {"kind", snowv::toString(p.kind)}});
    j["points"] = std::move(points);
    json traces = json::array();
    for (const TraceRecord &t : ts.traces) {
        json rec;
        rec["iv"] = t.iv.toHex();
        if (t.key)
            rec["key"] = t.key->toHex();
        rec["seed"] = std::to_string(t.seed);
        rec["ks0"] = toHex(t.keystream0.bytes);
        traces.push_back(std::move(rec));
    }
    j["traces"] = std::move(traces);
    return j;
}

TraceSet metaFromJson(const json &j) {
    TraceSet ts;
    if (!j.is_object() || j.value("format", "") != kFormatName)
        throw TraceFormatError("trace metadata: missing or wrong format marker");
    if (j.value("version", -1) != kFormatVersion)
        throw TraceFormatError("trace metadata: unsupported version");
    ts.variant = cm::variantFromString(j.at("variant").get<std::string>());
    ts.masterSeed = std::stoull(j.at("master_seed").get<std::string>());
    const json &m = j.at("model");
    ts.model.hwScale = m.at("hw_scale").get<double>();
    ts.model.noiseSigma = m.at("noise_sigma").get<double>();
    ts.model.branchDelta = m.at("branch_delta").get<double>();
    ts.model.rounds = m.at("rounds").get<int>();
    for (const json &p : j.at("points")) {
        SamplePoint sp;
        sp.round = p.at("round").get<int>();
        sp.slot = p.at("slot").get<int>();
        sp.kind = snowv::tapKindFromString(p.at("kind").get<std::string>());
        ts.points.push_back(sp);
    }
    if (ts.points.size() != j.at("n_samples").get<std::size_t>())
        throw TraceFormatError("trace metadata: n_samples disagrees with the sample map");
    for (const json &t : j.at("traces")) {
        TraceRecord rec;
        rec.iv = snowv::Iv128::fromHex(t.at("iv").get<std::string>());
        if (t.contains("key"))
            rec.key = snowv::Key256::fromHex(t.at("key").get<std::string>());
        rec.seed = std::stoull(t.at("seed").get<std::string>());
        auto ks = fromHexExact(t.at("ks0").get<std::string>(), 16);
        std::copy(ks.begin(), ks.end(), rec.keystream0.bytes.begin());
        ts.traces.push_back(std::move(rec));
    }
    if (ts.traces.size() != j.at("n_traces").get<std::size_t>())
        throw TraceFormatError("trace metadata: n_traces disagrees with the trace list");
    return ts;
}

json readJsonFile(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw TraceFormatError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw TraceFormatError("malformed JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

TraceSet loadMeta(const std::filesystem::path &path) {
    try {
        return metaFromJson(readJsonFile(path));
    } catch (const json::exception &e) {
        throw TraceFormatError("trace metadata " + path.string() + ": " + e.what());
    } catch (const std::invalid_argument &e) {
        throw TraceFormatError("trace metadata " + path.string() + ": " + e.what());
    }
}

} // namespace

void storeTraceSet(const TraceSet &ts, const std::filesystem::path &base) {
    if (ts.samples.size() != ts.nTraces() * ts.nSamples())
        throw TraceFormatError("storeTraceSet: sample matrix disagrees with metadata counts");
    std::filesystem::path jsonPath = base;
    jsonPath += ".json";
    std::filesystem::path binPath = base;
    binPath += ".f32";
    std::ofstream meta(jsonPath);
    if (!meta)
        throw TraceFormatError("cannot write " + jsonPath.string());
    meta << metaToJson(ts).dump(2) << "\n";
    std::ofstream bin(binPath, std::ios::binary);
    if (!bin)
        throw TraceFormatError("cannot write " + binPath.string());
    bin.write(reinterpret_cast<const char *>(ts.samples.data()),
              static_cast<std::streamsize>(ts.samples.size() * sizeof(float)));
}

TraceSet loadTraceSet(const std::filesystem::path &base) {
    std::filesystem::path jsonPath = base;
    jsonPath += ".json";
    std::filesystem::path binPath = base;
    binPath += ".f32";
    TraceSet ts = loadMeta(jsonPath);
    std::error_code ec;
    std::uintmax_t size = std::filesystem::file_size(binPath, ec);
    if (ec)
        throw TraceFormatError("cannot open " + binPath.string());
    std::uintmax_t expected =
        static_cast<std::uintmax_t>(ts.nTraces()) * ts.nSamples() * sizeof(float);
    if (size != expected)
        throw TraceFormatError("sample file " + binPath.string() + " holds " +
                               std::to_string(size) + " bytes, metadata implies " +
                               std::to_string(expected));
    ts.samples.resize(ts.nTraces() * ts.nSamples());
    std::ifstream bin(binPath, std::ios::binary);
    if (!bin.read(reinterpret_cast<char *>(ts.samples.data()),
                  static_cast<std::streamsize>(expected)) &&
        expected != 0)
        throw TraceFormatError("short read from " + binPath.string());
    return ts;
}

void toCsv(const TraceSet &ts, const std::filesystem::path &csvPath) {
    std::ofstream out(csvPath);
    if (!out)
        throw TraceFormatError("cannot write " + csvPath.string());
    for (std::size_t s = 0; s < ts.nSamples(); ++s)
        out << (s ? "," : "") << ts.points[s].id();
    out << "\n";
    char buf[32];
    for (std::size_t t = 0; t < ts.nTraces(); ++t) {
        for (std::size_t s = 0; s < ts.nSamples(); ++s) {
            // 9 significant digits round-trip any float32 exactly.
            std::snprintf(buf, sizeof(buf), "%.9g", static_cast<double>(ts.at(t, s)));
            out << (s ? "," : "") << buf;
        }
        out << "\n";
    }
}

TraceSet fromCsv(const std::filesystem::path &metaPath, const std::filesystem::path &csvPath) {
    TraceSet ts = loadMeta(metaPath);
    std::ifstream in(csvPath);
    if (!in)
        throw TraceFormatError("cannot open " + csvPath.string());
    ts.samples.reserve(ts.nTraces() * ts.nSamples());
    std::string line;
    std::size_t rows = 0;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (first) {
            first = false;
            // Optional header row: starts with a sample-point id, not a number.
            char c = line[0];
            if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.'))
                continue;
        }
        std::size_t cols = 0;
        const char *p = line.c_str();
        while (*p) {
            char *end = nullptr;
            float v = std::strtof(p, &end);
            if (end == p)
                throw TraceFormatError("CSV " + csvPath.string() + ": bad number in row " +
                                       std::to_string(rows + 1));
            ts.samples.push_back(v);
            ++cols;
            p = end;
            if (*p == ',')
                ++p;
            else if (*p != '\0' && *p != '\r')
                throw TraceFormatError("CSV " + csvPath.string() + ": unexpected character in row " +
                                       std::to_string(rows + 1));
            else
                break;
        }
        if (cols != ts.nSamples())
            throw TraceFormatError("CSV " + csvPath.string() + ": row " + std::to_string(rows + 1) +
                                   " has " + std::to_string(cols) + " columns, expected " +
                                   std::to_string(ts.nSamples()));
        ++rows;
    }
    if (rows != ts.nTraces())
        throw TraceFormatError("CSV " + csvPath.string() + ": " + std::to_string(rows) +
                               " rows, metadata implies " + std::to_string(ts.nTraces()));
    return ts;
}

} // namespace snowlab::sim
