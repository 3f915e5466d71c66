/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * Command line front end for the laboratory: trace simulation, leakage
 * assessment, correlation attacks, classifier profiling, full key recovery,
 * countermeasure audits and trace-file conversion.
 *
 * Exit codes: 0 success, 1 usage or analysis error, 2 malformed trace files,
 * 3 attack did not converge to a complete key.
 */
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "snowlab/Hex.h"
#include "snowlab/Version.h"
#include "snowlab/cm/Countermeasures.h"
#include "snowlab/plot/Svg.h"
#include "snowlab/sca/Cpa.h"
#include "snowlab/sca/Kkc.h"
#include "snowlab/sca/Lda.h"
#include "snowlab/sca/Recover.h"
#include "snowlab/sca/Tvla.h"
#include "snowlab/sim/Leakage.h"
#include "snowlab/sim/TraceSet.h"

namespace {

using json = nlohmann::ordered_json;
using namespace snowlab;

// ---------------------------------------------------------------------------
// Shared plumbing.
// ---------------------------------------------------------------------------

/// Output paths are taken relative to $SNOWLAB_OUTPUT_DIR when it is set and
/// the path is relative; parent directories are created.  Inputs are used
/// exactly as given.
std::string resolveOut(const std::string &path) {
    std::filesystem::path p(path);
    if (const char *dir = std::getenv("SNOWLAB_OUTPUT_DIR"); dir && *dir && p.is_relative())
        p = std::filesystem::path(dir) / p;
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path());
    return p.string();
}

/// Writes the result document to `path`, or pretty-prints it to stdout when
/// no path was requested.
void emitJson(const json &doc, const std::string &path) {
    if (path.empty()) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::string resolved = resolveOut(path);
    std::ofstream out(resolved, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + resolved);
    out << doc.dump(2) << "\n";
}

json resultDoc(const std::string &tool) {
    json doc;
    doc["tool"] = tool;
    doc["version"] = kVersion;
    return doc;
}

std::uint64_t parseUnsigned(const std::string &text, const char *what) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(text, &used, 0);
        if (used == text.size())
            return v;
    } catch (const std::exception &) {
    }
    throw std::invalid_argument(std::string(what) + ": not a number: " + text);
}

snowv::Word16 parseWord16(const std::string &text, const char *what) {
    std::uint64_t v = parseUnsigned(text, what);
    if (v > 0xFFFF)
        throw std::invalid_argument(std::string(what) + ": exceeds 16 bits: " + text);
    return static_cast<snowv::Word16>(v);
}

std::uint8_t parseByte(const std::string &text, const char *what) {
    std::uint64_t v = parseUnsigned(text, what);
    if (v > 0xFF)
        throw std::invalid_argument(std::string(what) + ": exceeds 8 bits: " + text);
    return static_cast<std::uint8_t>(v);
}

/// "index=value" entries, e.g. --known 0=0x5a0f --known 8=41234.
std::map<int, snowv::Word16> parseWordMap(const std::vector<std::string> &entries) {
    std::map<int, snowv::Word16> words;
    for (const std::string &entry : entries) {
        auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("expected index=value, got: " + entry);
        auto index = static_cast<int>(parseUnsigned(entry.substr(0, eq), "key word index"));
        if (index < 0 || index > 15)
            throw std::invalid_argument("key word index out of range: " + entry);
        words[index] = parseWord16(entry.substr(eq + 1), "key word value");
    }
    return words;
}

std::string byteHex(std::uint8_t b) {
    char buf[5];
    std::snprintf(buf, sizeof buf, "0x%02x", b);
    return buf;
}

std::string wordHex(snowv::Word16 w) {
    char buf[7];
    std::snprintf(buf, sizeof buf, "0x%04x", w);
    return buf;
}

json ghostsJson(const sca::GhostSet &g) {
    return {{"a", byteHex(g.a)}, {"b", byteHex(g.b)}, {"c", byteHex(g.c)}, {"d", byteHex(g.d)}};
}

// ---------------------------------------------------------------------------
// keystream
// ---------------------------------------------------------------------------

struct KeystreamArgs {
    std::string key, iv, jsonPath;
    std::size_t blocks = 4;
};

int runKeystream(const KeystreamArgs &args) {
    auto key = snowv::Key256::fromHex(args.key);
    auto iv = snowv::Iv128::fromHex(args.iv);
    auto state = snowv::initialize(key, iv);
    json doc = resultDoc("keystream");
    doc["config"] = {{"key", key.toHex()}, {"iv", iv.toHex()}, {"blocks", args.blocks}};
    json blocks = json::array();
    for (std::size_t i = 0; i < args.blocks; ++i) {
        snowv::Block128 z = snowv::nextKeystream(state);
        std::string hex = toHex(z.bytes);
        std::cout << hex << "\n";
        blocks.push_back(hex);
    }
    doc["keystream"] = blocks;
    if (!args.jsonPath.empty())
        emitJson(doc, args.jsonPath);
    return 0;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::string out, variant = "reference", key, iv, jsonPath, csvPath;
    std::size_t traces = 1000;
    std::uint64_t seed = 1;
    int rounds = 1;
    double sigma = 0.1, hwScale = 1.0, branchDelta = 1.0;
    bool noKeys = false, entropyMasks = false;
};

int runSimulate(const SimulateArgs &args) {
    sim::LeakageModel model;
    model.noiseSigma = args.sigma;
    model.hwScale = args.hwScale;
    model.branchDelta = args.branchDelta;
    model.rounds = args.rounds;

    sim::SimulateOptions options;
    options.variant = cm::variantFromString(args.variant);
    options.masterSeed = args.seed;
    options.recordKeys = !args.noKeys;
    options.entropyMasks = args.entropyMasks;

    sim::KeyPolicy keys = sim::RandomKeys{};
    if (!args.key.empty())
        keys = sim::FixedKey{snowv::Key256::fromHex(args.key)};
    sim::IvPolicy ivs = sim::RandomIvs{};
    if (!args.iv.empty())
        ivs = sim::FixedIv{snowv::Iv128::fromHex(args.iv)};

    sim::TraceSet ts = sim::simulateTraceSet(keys, ivs, args.traces, model, options);
    std::string base = resolveOut(args.out);
    sim::storeTraceSet(ts, base);
    if (!args.csvPath.empty())
        sim::toCsv(ts, resolveOut(args.csvPath));

    json doc = resultDoc("simulate");
    doc["config"] = {{"variant", cm::toString(options.variant)},
                     {"traces", args.traces},
                     {"seed", args.seed},
                     {"key", args.key.empty() ? json("random") : json(args.key)},
                     {"iv", args.iv.empty() ? json("random") : json(args.iv)},
                     {"rounds", args.rounds},
                     {"noise_sigma", args.sigma},
                     {"hw_scale", args.hwScale},
                     {"branch_delta", args.branchDelta},
                     {"record_keys", options.recordKeys},
                     {"entropy_masks", options.entropyMasks}};
    doc["output"] = {{"base", base},
                     {"n_traces", ts.nTraces()},
                     {"n_samples", ts.nSamples()},
                     {"keystream0_first", toHex(ts.traces.front().keystream0.bytes)}};
    emitJson(doc, args.jsonPath);
    return 0;
}

// ---------------------------------------------------------------------------
// tvla
// ---------------------------------------------------------------------------

struct TvlaArgs {
    std::string a, b, jsonPath, csvPath, svgPath;
    std::size_t stride = 1;
    double threshold = sca::kTvlaThreshold;
};

int runTvla(const TvlaArgs &args) {
    sim::TraceSet a = sim::loadTraceSet(args.a);
    sim::TraceSet b = sim::loadTraceSet(args.b);
    sca::TvlaResult welch = sca::welchT(a, b);
    sca::TvlaCurve curve = sca::tvlaIncremental(a, b, args.stride, args.threshold);

    json doc = resultDoc("tvla");
    doc["config"] = {{"a", args.a}, {"b", args.b}, {"stride", args.stride},
                     {"threshold", args.threshold}};
    doc["welch"] = {{"max_abs_t", welch.maxAbsT},
                    {"argmax", welch.argmax},
                    {"argmax_id", welch.argmax >= 0
                                      ? a.points[static_cast<std::size_t>(welch.argmax)].id()
                                      : ""},
                    {"n_a", welch.nA},
                    {"n_b", welch.nB},
                    {"leaks", welch.maxAbsT > args.threshold}};
    json points = json::array();
    for (const auto &p : curve.points)
        points.push_back({{"n", p.n}, {"max_abs_t", p.maxAbsT}});
    doc["curve"] = {{"points", points},
                    {"first_crossing",
                     curve.firstCrossing ? json(*curve.firstCrossing) : json(nullptr)}};

    if (!args.csvPath.empty() || !args.svgPath.empty()) {
        plot::Curve pc;
        pc.xLabel = "traces per group";
        pc.yLabel = "max |t|";
        pc.series.push_back({"max_abs_t", {}});
        for (const auto &p : curve.points) {
            pc.x.push_back(static_cast<double>(p.n));
            pc.series[0].y.push_back(p.maxAbsT);
        }
        if (!args.csvPath.empty())
            plot::writeCurveCsv(resolveOut(args.csvPath), pc);
        if (!args.svgPath.empty()) {
            plot::SvgOptions svg;
            svg.title = "leakage assessment";
            svg.hLines = {args.threshold};
            svg.markers = true;
            plot::writeSvg(resolveOut(args.svgPath), pc, svg);
        }
    }
    emitJson(doc, args.jsonPath);
    return 0;
}

// ---------------------------------------------------------------------------
// kkc
// ---------------------------------------------------------------------------

struct KkcArgs {
    std::string traces, target = "u0", jsonPath, csvPath, svgPath;
    int bits = 16;
    std::size_t maxTraces = 0;
};

int runKkc(const KkcArgs &args) {
    sim::TraceSet ts = sim::loadTraceSet(args.traces);
    sca::Target target = sca::targetFromString(args.target);
    sca::KkcResult r = sca::kkc(ts, target, sca::hwBitsFromInt(args.bits), args.maxTraces);

    json doc = resultDoc("kkc");
    doc["config"] = {{"traces", args.traces},
                     {"target", toString(target)},
                     {"bits", args.bits},
                     {"max_traces", args.maxTraces}};
    doc["result"] = {{"poi", r.poi},
                     {"poi_id", ts.points[static_cast<std::size_t>(r.poi)].id()},
                     {"peak", r.peak},
                     {"traces_used", r.tracesUsed}};

    if (!args.csvPath.empty() || !args.svgPath.empty()) {
        plot::Curve pc;
        pc.xLabel = "sample column";
        pc.yLabel = "correlation";
        pc.series.push_back({"corr", r.corr});
        for (std::size_t c = 0; c < r.corr.size(); ++c)
            pc.x.push_back(static_cast<double>(c));
        if (!args.csvPath.empty())
            plot::writeCurveCsv(resolveOut(args.csvPath), pc);
        if (!args.svgPath.empty()) {
            plot::SvgOptions svg;
            svg.title = "known-key correlation " + toString(target);
            svg.vLines = {static_cast<double>(r.poi)};
            svg.markers = true;
            plot::writeSvg(resolveOut(args.svgPath), pc, svg);
        }
    }
    emitJson(doc, args.jsonPath);
    return 0;
}

// ---------------------------------------------------------------------------
// cpa
// ---------------------------------------------------------------------------

struct CpaArgs {
    std::string traces, target = "u0", half = "low", knownLow, jsonPath, csvPath, svgPath;
    std::vector<std::string> known;
    int windowBegin = 0, windowEnd = -1, top = 16;
    std::size_t maxTraces = 0;
};

int runCpa(const CpaArgs &args) {
    sim::TraceSet ts = sim::loadTraceSet(args.traces);
    sca::Target target = sca::targetFromString(args.target);
    sca::Half half;
    if (args.half == "low")
        half = sca::Half::Low;
    else if (args.half == "high")
        half = sca::Half::High;
    else
        throw std::invalid_argument("--half must be low or high");
    if (half == sca::Half::High && args.knownLow.empty())
        throw std::invalid_argument("--known-low is required for the high half");

    sca::CpaOptions opt;
    opt.windowBegin = args.windowBegin;
    opt.windowEnd = args.windowEnd;
    opt.maxTraces = args.maxTraces;
    if (!args.knownLow.empty())
        opt.knownLowByte = parseByte(args.knownLow, "--known-low");
    auto known = parseWordMap(args.known);
    sca::CpaByteResult r = sca::cpaByte(ts, target, half, known, opt);

    json doc = resultDoc("cpa");
    json knownJson = json::object();
    for (const auto &[idx, value] : known)
        knownJson[std::to_string(idx)] = wordHex(value);
    doc["config"] = {{"traces", args.traces},
                     {"target", toString(target)},
                     {"half", args.half},
                     {"window_begin", args.windowBegin},
                     {"window_end", args.windowEnd},
                     {"known_low", args.knownLow.empty() ? json(nullptr)
                                                         : json(byteHex(opt.knownLowByte))},
                     {"known_words", knownJson},
                     {"max_traces", args.maxTraces}};
    json ranking = json::array();
    int depth = std::min(args.top, 256);
    for (int i = 0; i < depth; ++i) {
        std::uint8_t h = r.ranking[static_cast<std::size_t>(i)];
        ranking.push_back({{"byte", byteHex(h)}, {"peak", r.peak[h]}, {"column", r.column[h]}});
    }
    doc["result"] = {{"traces_used", r.tracesUsed},
                     {"top", byteHex(r.ranking[0])},
                     {"top_peak", r.peak[r.ranking[0]]},
                     {"top_column", r.column[r.ranking[0]]},
                     {"ghosts", r.ghosts ? ghostsJson(*r.ghosts) : json(nullptr)},
                     {"ranking", ranking}};

    if (!args.csvPath.empty() || !args.svgPath.empty()) {
        plot::Curve pc;
        pc.xLabel = "hypothesis";
        pc.yLabel = "peak correlation";
        pc.series.push_back({"peak", {}});
        pc.series.push_back({"column", {}});
        for (int h = 0; h < 256; ++h) {
            pc.x.push_back(h);
            pc.series[0].y.push_back(r.peak[h]);
            pc.series[1].y.push_back(r.column[h]);
        }
        if (!args.csvPath.empty())
            plot::writeCurveCsv(resolveOut(args.csvPath), pc);
        if (!args.svgPath.empty()) {
            plot::Curve peaksOnly;
            peaksOnly.xLabel = pc.xLabel;
            peaksOnly.yLabel = pc.yLabel;
            peaksOnly.x = pc.x;
            peaksOnly.series.push_back(pc.series[0]);
            plot::SvgOptions svg;
            svg.title = "byte hypotheses " + toString(target) + " (" + args.half + ")";
            plot::writeSvg(resolveOut(args.svgPath), peaksOnly, svg);
        }
    }
    emitJson(doc, args.jsonPath);
    return 0;
}

// ---------------------------------------------------------------------------
// mtd
// ---------------------------------------------------------------------------

struct MtdArgs {
    std::string traces, target = "u0", trueByte, jsonPath, csvPath, svgPath;
    std::vector<std::string> known;
    int windowBegin = 0, windowEnd = -1;
    std::size_t stride = 50, maxTraces = 0;
};

int runMtd(const MtdArgs &args) {
    sim::TraceSet ts = sim::loadTraceSet(args.traces);
    sca::Target target = sca::targetFromString(args.target);
    sca::MtdOptions opt;
    opt.windowBegin = args.windowBegin;
    opt.windowEnd = args.windowEnd;
    opt.stride = args.stride;
    opt.maxTraces = args.maxTraces;
    std::uint8_t trueByte = parseByte(args.trueByte, "--true-byte");
    sca::MtdCurve curve = sca::mtdCurve(ts, target, trueByte, parseWordMap(args.known), opt);

    json doc = resultDoc("mtd");
    doc["config"] = {{"traces", args.traces},       {"target", toString(target)},
                     {"true_byte", byteHex(trueByte)}, {"window_begin", args.windowBegin},
                     {"window_end", args.windowEnd},   {"stride", args.stride},
                     {"max_traces", args.maxTraces}};
    json points = json::array();
    for (const auto &p : curve.points)
        points.push_back({{"n", p.n},
                          {"top", byteHex(p.top)},
                          {"second", byteHex(p.second)},
                          {"top_peak", p.topPeak},
                          {"pair_leads", p.pairLeads}});
    doc["result"] = {{"ghosts", ghostsJson(curve.ghosts)},
                     {"mtd", curve.mtd ? json(*curve.mtd) : json(nullptr)},
                     {"points", points}};

    if (!args.csvPath.empty() || !args.svgPath.empty()) {
        plot::Curve pc;
        pc.xLabel = "traces";
        pc.yLabel = "top peak";
        pc.series.push_back({"top_peak", {}});
        pc.series.push_back({"pair_leads", {}});
        for (const auto &p : curve.points) {
            pc.x.push_back(static_cast<double>(p.n));
            pc.series[0].y.push_back(p.topPeak);
            pc.series[1].y.push_back(p.pairLeads ? 1.0 : 0.0);
        }
        if (!args.csvPath.empty())
            plot::writeCurveCsv(resolveOut(args.csvPath), pc);
        if (!args.svgPath.empty()) {
            plot::SvgOptions svg;
            svg.title = "traces to disclosure " + toString(target);
            if (curve.mtd)
                svg.vLines = {static_cast<double>(*curve.mtd)};
            svg.markers = true;
            plot::writeSvg(resolveOut(args.svgPath), pc, svg);
        }
    }
    emitJson(doc, args.jsonPath);
    return 0;
}

// ---------------------------------------------------------------------------
// lda
// ---------------------------------------------------------------------------

struct LdaArgs {
    std::string profile, target = "u0", eval, jsonPath;
    int windowBegin = 0, windowEnd = -1;
};

int runLda(const LdaArgs &args) {
    sim::TraceSet profile = sim::loadTraceSet(args.profile);
    sca::Target target = sca::targetFromString(args.target);
    auto labels = sca::lsbLabels(profile, target);
    int end = args.windowEnd < 0 ? static_cast<int>(profile.nSamples()) : args.windowEnd;
    sca::LdaModel model = sca::ldaTrain(profile, labels, args.windowBegin, end);

    json doc = resultDoc("lda");
    doc["config"] = {{"profile", args.profile},
                     {"target", toString(target)},
                     {"window_begin", args.windowBegin},
                     {"window_end", args.windowEnd}};
    doc["model"] = {{"window_begin", model.windowBegin},
                    {"window_end", model.windowEnd},
                    {"threshold", model.threshold},
                    {"epsilon", model.epsilon},
                    {"projected_means", {model.mean0, model.mean1}},
                    {"weights", model.weights},
                    {"train_accuracy", model.trainAccuracy}};
    if (!args.eval.empty()) {
        sim::TraceSet eval = sim::loadTraceSet(args.eval);
        auto evalLabels = sca::lsbLabels(eval, target);
        doc["eval"] = {{"traces", args.eval},
                       {"n", eval.nTraces()},
                       {"accuracy", sca::ldaAccuracy(model, eval, evalLabels)}};
    }
    emitJson(doc, args.jsonPath);
    return 0;
}

// ---------------------------------------------------------------------------
// attack
// ---------------------------------------------------------------------------

struct AttackArgs {
    std::string traces, profile, jsonPath;
    std::vector<std::string> overrides;
    std::size_t maxTraces = 0, votes = 25;
    double weakFactor = 3.0;
};

int runAttack(const AttackArgs &args) {
    sim::TraceSet attack = sim::loadTraceSet(args.traces);
    sim::TraceSet profile = sim::loadTraceSet(args.profile);
    sca::RecoverOptions opt;
    opt.profile = &profile;
    opt.maxTraces = args.maxTraces;
    opt.ldaVotes = args.votes;
    opt.weakPeakFactor = args.weakFactor;
    opt.overrideWords = parseWordMap(args.overrides);
    sca::AttackReport report = sca::recoverKey(attack, opt);

    json doc = resultDoc("attack");
    json overridesJson = json::object();
    for (const auto &[idx, value] : opt.overrideWords)
        overridesJson[std::to_string(idx)] = wordHex(value);
    doc["config"] = {{"traces", args.traces},
                     {"profile", args.profile},
                     {"max_traces", args.maxTraces},
                     {"lda_votes", args.votes},
                     {"weak_peak_factor", args.weakFactor},
                     {"overrides", overridesJson}};
    json words = json::array();
    for (const auto &rec : report.words) {
        json w = {{"index", rec.wordIndex},
                  {"target", toString(rec.target)},
                  {"resolved", rec.resolved},
                  {"word", report.recovered[static_cast<std::size_t>(rec.wordIndex)]
                               ? json(wordHex(*report.recovered[static_cast<std::size_t>(
                                     rec.wordIndex)]))
                               : json(nullptr)},
                  {"low_peak", rec.lowPeak},
                  {"high_peak", rec.highPeak},
                  {"lsb", rec.lsb ? json(*rec.lsb) : json(nullptr)},
                  {"ghosts", rec.ghosts ? ghostsJson(*rec.ghosts) : json(nullptr)},
                  {"depends_on", rec.dependsOn},
                  {"note", rec.note}};
        words.push_back(w);
    }
    doc["result"] = {{"complete", report.complete},
                     {"traces_used", report.tracesUsed},
                     {"key", report.key() ? json(report.key()->toHex()) : json(nullptr)},
                     {"words", words}};
    emitJson(doc, args.jsonPath);
    return report.complete ? 0 : 3;
}

// ---------------------------------------------------------------------------
// counter-eval
// ---------------------------------------------------------------------------

struct CounterEvalArgs {
    std::string jsonPath;
};

int runCounterEval(const CounterEvalArgs &args) {
    // Exhaustive structural audit of the conditional reduction: the
    // reference version's operation tally depends on the input parity, the
    // hardened version's never does.
    auto audit = [](auto fn) {
        std::map<std::string, std::size_t> histogram;
        bool correct = true;
        for (unsigned v = 0; v <= 0xFFFF; ++v) {
            cm::OpCount ops;
            snowv::Word16 out = fn(static_cast<snowv::Word16>(v), snowv::kAlphaInvA, ops);
            correct = correct &&
                      out == snowv::mulXInv(static_cast<snowv::Word16>(v), snowv::kAlphaInvA);
            std::string sig = std::to_string(ops.shifts) + "s" + std::to_string(ops.xors) + "x" +
                              std::to_string(ops.ands) + "a" + std::to_string(ops.negates) + "n";
            ++histogram[sig];
        }
        json h = json::object();
        for (const auto &[sig, count] : histogram)
            h[sig] = count;
        return json{{"distinct_op_sequences", histogram.size()},
                    {"histogram", h},
                    {"all_outputs_correct", correct}};
    };

    json doc = resultDoc("counter-eval");
    doc["reference"] = audit(cm::mulXInvCounted);
    doc["constant_time"] = audit(cm::mulXInvCtCounted);
    doc["masked"] = {{"masks_per_update", 8},
                     {"shares_per_feedback_word", 2}};
    doc["shuffled"] = {{"admissible_orders", cm::ShuffleOrder::all().size()},
                       {"permuted_slots", 5},
                       {"fixed_tail_slots", 3}};
    emitJson(doc, args.jsonPath);
    return 0;
}

// ---------------------------------------------------------------------------
// convert
// ---------------------------------------------------------------------------

struct ConvertArgs {
    std::string in, csvOut, meta, csvIn, out;
};

int runConvert(const ConvertArgs &args) {
    bool exporting = !args.in.empty();
    bool importing = !args.meta.empty() || !args.csvIn.empty() || !args.out.empty();
    if (exporting == importing)
        throw std::invalid_argument(
            "use either --in with --csv (export) or --meta/--csv-in/--out (import)");
    if (exporting) {
        if (args.csvOut.empty())
            throw std::invalid_argument("--csv is required when exporting");
        sim::TraceSet ts = sim::loadTraceSet(args.in);
        sim::toCsv(ts, resolveOut(args.csvOut));
        std::cout << "wrote " << resolveOut(args.csvOut) << " (" << ts.nTraces() << " x "
                  << ts.nSamples() << ")\n";
        return 0;
    }
    if (args.meta.empty() || args.csvIn.empty() || args.out.empty())
        throw std::invalid_argument("importing needs --meta, --csv-in and --out");
    sim::TraceSet ts = sim::fromCsv(args.meta, args.csvIn);
    sim::storeTraceSet(ts, resolveOut(args.out));
    std::cout << "wrote " << resolveOut(args.out) << ".json/.f32 (" << ts.nTraces() << " x "
              << ts.nSamples() << ")\n";
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"snowlab: a word-serial stream-cipher side-channel laboratory"};
    app.require_subcommand(1);

    KeystreamArgs keystream;
    auto *ksCmd = app.add_subcommand("keystream", "Generate keystream blocks");
    ksCmd->add_option("--key", keystream.key, "256-bit key, 64 hex digits")->required();
    ksCmd->add_option("--iv", keystream.iv, "128-bit IV, 32 hex digits")->required();
    ksCmd->add_option("--blocks", keystream.blocks, "Number of 128-bit blocks");
    ksCmd->add_option("--json", keystream.jsonPath, "Also write a JSON result file");

    SimulateArgs simulate;
    auto *simCmd = app.add_subcommand("simulate", "Simulate and store a leakage trace set");
    simCmd->add_option("--out", simulate.out, "Output base path (writes .json and .f32)")
        ->required();
    simCmd->add_option("--variant", simulate.variant,
                       "reference, ct, masked or shuffled");
    simCmd->add_option("--traces", simulate.traces, "Number of traces");
    simCmd->add_option("--seed", simulate.seed, "Master seed");
    simCmd->add_option("--key", simulate.key, "Fixed key (hex); omit for random keys");
    simCmd->add_option("--iv", simulate.iv, "Fixed IV (hex); omit for random IVs");
    simCmd->add_option("--rounds", simulate.rounds, "Instrumented initialization rounds (1..16)");
    simCmd->add_option("--sigma", simulate.sigma, "Gaussian noise sigma");
    simCmd->add_option("--hw-scale", simulate.hwScale, "Hamming-weight scale of value samples");
    simCmd->add_option("--branch-delta", simulate.branchDelta,
                       "Sample offset when the reduction branch is taken");
    simCmd->add_flag("--no-keys", simulate.noKeys, "Do not record keys (attack sets)");
    simCmd->add_flag("--entropy-masks", simulate.entropyMasks,
                     "Masks from the OS entropy pool (not reproducible)");
    simCmd->add_option("--csv", simulate.csvPath, "Also export samples as CSV");
    simCmd->add_option("--json", simulate.jsonPath, "Write the summary JSON to a file");

    TvlaArgs tvla;
    auto *tvlaCmd = app.add_subcommand("tvla", "Welch t leakage assessment of two trace sets");
    tvlaCmd->add_option("--a", tvla.a, "First trace set base path")->required();
    tvlaCmd->add_option("--b", tvla.b, "Second trace set base path")->required();
    tvlaCmd->add_option("--stride", tvla.stride, "Curve checkpoint stride");
    tvlaCmd->add_option("--threshold", tvla.threshold, "Detection threshold on |t|");
    tvlaCmd->add_option("--json", tvla.jsonPath, "Write the result JSON to a file");
    tvlaCmd->add_option("--csv", tvla.csvPath, "Write the t curve as CSV");
    tvlaCmd->add_option("--svg", tvla.svgPath, "Write the t curve as SVG");

    KkcArgs kkc;
    auto *kkcCmd = app.add_subcommand("kkc", "Known-key correlation to locate leakage");
    kkcCmd->add_option("--traces", kkc.traces, "Trace set base path (with keys)")->required();
    kkcCmd->add_option("--target", kkc.target, "Feedback word u0..u7 or v0..v7");
    kkcCmd->add_option("--bits", kkc.bits, "Model width: 4, 6, 8 or 16 low bits");
    kkcCmd->add_option("--max", kkc.maxTraces, "Use only the first N traces");
    kkcCmd->add_option("--json", kkc.jsonPath, "Write the result JSON to a file");
    kkcCmd->add_option("--csv", kkc.csvPath, "Write per-column correlation as CSV");
    kkcCmd->add_option("--svg", kkc.svgPath, "Write per-column correlation as SVG");

    CpaArgs cpa;
    auto *cpaCmd = app.add_subcommand("cpa", "Correlation attack on one key byte");
    cpaCmd->add_option("--traces", cpa.traces, "Trace set base path")->required();
    cpaCmd->add_option("--target", cpa.target, "Feedback word u0..u7 or v0..v7");
    cpaCmd->add_option("--half", cpa.half, "low (7-bit model) or high (8-bit model)");
    cpaCmd->add_option("--known-low", cpa.knownLow, "Recovered low byte (high half only)");
    cpaCmd->add_option("--window-begin", cpa.windowBegin, "First sample column");
    cpaCmd->add_option("--window-end", cpa.windowEnd, "One past the last column (-1: all)");
    cpaCmd->add_option("--known", cpa.known,
                       "Previously recovered key word, index=value (repeatable)");
    cpaCmd->add_option("--max", cpa.maxTraces, "Use only the first N traces");
    cpaCmd->add_option("--top", cpa.top, "Ranking depth in the JSON result");
    cpaCmd->add_option("--json", cpa.jsonPath, "Write the result JSON to a file");
    cpaCmd->add_option("--csv", cpa.csvPath, "Write all 256 hypothesis peaks as CSV");
    cpaCmd->add_option("--svg", cpa.svgPath, "Write all 256 hypothesis peaks as SVG");

    MtdArgs mtd;
    auto *mtdCmd = app.add_subcommand("mtd", "Traces-to-disclosure curve for one target");
    mtdCmd->add_option("--traces", mtd.traces, "Trace set base path")->required();
    mtdCmd->add_option("--target", mtd.target, "Feedback word u0..u7 or v0..v7");
    mtdCmd->add_option("--true-byte", mtd.trueByte, "True key byte under attack")->required();
    mtdCmd->add_option("--window-begin", mtd.windowBegin, "First sample column");
    mtdCmd->add_option("--window-end", mtd.windowEnd, "One past the last column (-1: all)");
    mtdCmd->add_option("--stride", mtd.stride, "Checkpoint stride in traces");
    mtdCmd->add_option("--known", mtd.known,
                       "Previously recovered key word, index=value (repeatable)");
    mtdCmd->add_option("--max", mtd.maxTraces, "Use only the first N traces");
    mtdCmd->add_option("--json", mtd.jsonPath, "Write the result JSON to a file");
    mtdCmd->add_option("--csv", mtd.csvPath, "Write the curve as CSV");
    mtdCmd->add_option("--svg", mtd.svgPath, "Write the curve as SVG");

    LdaArgs lda;
    auto *ldaCmd = app.add_subcommand("lda", "Train/evaluate the low-bit discriminant");
    ldaCmd->add_option("--profile", lda.profile, "Profiling trace set (with keys)")->required();
    ldaCmd->add_option("--target", lda.target, "Feedback word u0..u7 or v0..v7");
    ldaCmd->add_option("--window-begin", lda.windowBegin, "First sample column");
    ldaCmd->add_option("--window-end", lda.windowEnd, "One past the last column (-1: all)");
    ldaCmd->add_option("--eval", lda.eval, "Evaluation trace set (with keys)");
    ldaCmd->add_option("--json", lda.jsonPath, "Write the result JSON to a file");

    AttackArgs attack;
    auto *attackCmd = app.add_subcommand("attack", "Recover the full key from an attack set");
    attackCmd->add_option("--traces", attack.traces, "Attack trace set base path")->required();
    attackCmd->add_option("--profile", attack.profile, "Profiling trace set (with keys)")
        ->required();
    attackCmd->add_option("--max", attack.maxTraces, "Attack traces per target");
    attackCmd->add_option("--votes", attack.votes, "Traces voted by the low-bit classifier");
    attackCmd->add_option("--weak-factor", attack.weakFactor,
                          "Noise-floor multiple below which a peak is rejected");
    attackCmd->add_option("--override", attack.overrides,
                          "Externally known key word, index=value (repeatable)");
    attackCmd->add_option("--json", attack.jsonPath, "Write the report JSON to a file");

    CounterEvalArgs counterEval;
    auto *ceCmd = app.add_subcommand("counter-eval", "Structural countermeasure audit");
    ceCmd->add_option("--json", counterEval.jsonPath, "Write the result JSON to a file");

    ConvertArgs convert;
    auto *convCmd = app.add_subcommand("convert", "Convert trace sets to/from CSV");
    convCmd->add_option("--in", convert.in, "Trace set base path (export)");
    convCmd->add_option("--csv", convert.csvOut, "CSV output path (export)");
    convCmd->add_option("--meta", convert.meta, "Metadata JSON path (import)");
    convCmd->add_option("--csv-in", convert.csvIn, "CSV input path (import)");
    convCmd->add_option("--out", convert.out, "Output base path (import)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1; // normalize usage errors
    }

    try {
        if (ksCmd->parsed())
            return runKeystream(keystream);
        if (simCmd->parsed())
            return runSimulate(simulate);
        if (tvlaCmd->parsed())
            return runTvla(tvla);
        if (kkcCmd->parsed())
            return runKkc(kkc);
        if (cpaCmd->parsed())
            return runCpa(cpa);
        if (mtdCmd->parsed())
            return runMtd(mtd);
        if (ldaCmd->parsed())
            return runLda(lda);
        if (attackCmd->parsed())
            return runAttack(attack);
        if (ceCmd->parsed())
            return runCounterEval(counterEval);
        if (convCmd->parsed())
            return runConvert(convert);
    } catch (const sim::TraceFormatError &e) {
        std::cerr << "trace format error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
