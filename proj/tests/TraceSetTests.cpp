/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#include "snowlab/sim/TraceSet.h"

#include <cstring>
#include <filesystem>
#include <fstream>

#include "gtest/gtest.h"
#include "json.hpp"

using namespace snowlab;
using namespace snowlab::sim;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

class TraceSetIo : public ::testing::Test {
  protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("snowlab-ts-" + std::to_string(::getpid()) + "-" +
                                           ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    TraceSet makeSet(bool withKeys = true) {
        LeakageModel model;
        SimulateOptions opt;
        opt.masterSeed = 2024;
        opt.recordKeys = withKeys;
        return simulateTraceSet(RandomKeys{}, RandomIvs{}, 6, model, opt);
    }

    // Rewrites the stored JSON after applying `mutate`.
    void mutateJson(const fs::path &base, const std::function<void(json &)> &mutate) {
        fs::path p = base;
        p += ".json";
        std::ifstream in(p);
        json j;
        in >> j;
        in.close();
        mutate(j);
        std::ofstream out(p);
        out << j.dump(2);
    }

    fs::path dir;
};

TEST_F(TraceSetIo, RoundTripIsBitExact) {
    TraceSet ts = makeSet();
    fs::path base = dir / "set";
    storeTraceSet(ts, base);
    TraceSet back = loadTraceSet(base);
    EXPECT_EQ(back.variant, ts.variant);
    EXPECT_EQ(back.masterSeed, ts.masterSeed);
    EXPECT_EQ(back.model.hwScale, ts.model.hwScale);
    EXPECT_EQ(back.model.noiseSigma, ts.model.noiseSigma);
    EXPECT_EQ(back.model.branchDelta, ts.model.branchDelta);
    EXPECT_EQ(back.model.rounds, ts.model.rounds);
    ASSERT_EQ(back.points.size(), ts.points.size());
    for (std::size_t i = 0; i < ts.points.size(); ++i)
        EXPECT_EQ(back.points[i], ts.points[i]);
    ASSERT_EQ(back.traces.size(), ts.traces.size());
    for (std::size_t t = 0; t < ts.traces.size(); ++t) {
        EXPECT_EQ(back.traces[t].iv, ts.traces[t].iv);
        EXPECT_EQ(back.traces[t].key, ts.traces[t].key);
        EXPECT_EQ(back.traces[t].seed, ts.traces[t].seed);
        EXPECT_EQ(back.traces[t].keystream0, ts.traces[t].keystream0);
    }
    ASSERT_EQ(back.samples.size(), ts.samples.size());
    EXPECT_EQ(std::memcmp(back.samples.data(), ts.samples.data(),
                          ts.samples.size() * sizeof(float)),
              0);
}

TEST_F(TraceSetIo, KeylessSetsStayKeyless) {
    TraceSet ts = makeSet(false);
    fs::path base = dir / "anon";
    storeTraceSet(ts, base);
    TraceSet back = loadTraceSet(base);
    for (const auto &rec : back.traces)
        EXPECT_FALSE(rec.key.has_value());
}

TEST_F(TraceSetIo, MissingFilesSurface) {
    EXPECT_THROW(loadTraceSet(dir / "nonexistent"), TraceFormatError);
    TraceSet ts = makeSet();
    fs::path base = dir / "half";
    storeTraceSet(ts, base);
    fs::path f32 = base;
    f32 += ".f32";
    fs::remove(f32);
    EXPECT_THROW(loadTraceSet(base), TraceFormatError);
}

TEST_F(TraceSetIo, TruncatedSamplesSurface) {
    TraceSet ts = makeSet();
    fs::path base = dir / "trunc";
    storeTraceSet(ts, base);
    fs::path f32 = base;
    f32 += ".f32";
    fs::resize_file(f32, fs::file_size(f32) - 4);
    EXPECT_THROW(loadTraceSet(base), TraceFormatError);
}

TEST_F(TraceSetIo, MalformedJsonSurfaces) {
    TraceSet ts = makeSet();
    fs::path base = dir / "bad";
    storeTraceSet(ts, base);
    fs::path p = base;
    p += ".json";
    std::ofstream(p) << "{ not json";
    EXPECT_THROW(loadTraceSet(base), TraceFormatError);
}

TEST_F(TraceSetIo, SchemaViolationsSurface) {
    TraceSet ts = makeSet();
    fs::path base = dir / "schema";

    storeTraceSet(ts, base);
    mutateJson(base, [](json &j) { j["format"] = "other"; });
    EXPECT_THROW(loadTraceSet(base), TraceFormatError);

    storeTraceSet(ts, base);
    mutateJson(base, [](json &j) { j["version"] = 99; });
    EXPECT_THROW(loadTraceSet(base), TraceFormatError);

    storeTraceSet(ts, base);
    mutateJson(base, [](json &j) { j["n_traces"] = 5; });
    EXPECT_THROW(loadTraceSet(base), TraceFormatError);

    storeTraceSet(ts, base);
    mutateJson(base, [](json &j) { j["n_samples"] = 3; });
    EXPECT_THROW(loadTraceSet(base), TraceFormatError);

    storeTraceSet(ts, base);
    mutateJson(base, [](json &j) { j["points"][0]["kind"] = "mystery"; });
    EXPECT_THROW(loadTraceSet(base), TraceFormatError);

    storeTraceSet(ts, base);
    mutateJson(base, [](json &j) { j["traces"][0]["iv"] = "zz"; });
    EXPECT_THROW(loadTraceSet(base), TraceFormatError);

    storeTraceSet(ts, base);
    mutateJson(base, [](json &j) { j.erase("model"); });
    EXPECT_THROW(loadTraceSet(base), TraceFormatError);
}

TEST_F(TraceSetIo, InconsistentInMemorySetRejected) {
    TraceSet ts = makeSet();
    ts.samples.pop_back();
    EXPECT_THROW(storeTraceSet(ts, dir / "inc"), TraceFormatError);
}

TEST_F(TraceSetIo, CsvRoundTripIsExact) {
    TraceSet ts = makeSet();
    fs::path base = dir / "csv";
    storeTraceSet(ts, base);
    fs::path csv = dir / "csv.csv";
    toCsv(ts, csv);
    fs::path meta = base;
    meta += ".json";
    TraceSet back = fromCsv(meta, csv);
    ASSERT_EQ(back.samples.size(), ts.samples.size());
    for (std::size_t i = 0; i < ts.samples.size(); ++i)
        EXPECT_EQ(back.samples[i], ts.samples[i]) << i;

    // Header row is present and lists the sample ids.
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header.rfind("r0.s0.", 0), 0u);
}

TEST_F(TraceSetIo, CsvErrorsSurface) {
    TraceSet ts = makeSet();
    fs::path base = dir / "cerr";
    storeTraceSet(ts, base);
    fs::path meta = base;
    meta += ".json";

    fs::path shortRow = dir / "short.csv";
    std::ofstream(shortRow) << "1,2,3\n";
    EXPECT_THROW(fromCsv(meta, shortRow), TraceFormatError);

    fs::path badNum = dir / "badnum.csv";
    {
        std::ofstream out(badNum);
        for (std::size_t s = 0; s < ts.nSamples(); ++s)
            out << (s ? ",x" : "x");
        out << "\n";
    }
    EXPECT_THROW(fromCsv(meta, badNum), TraceFormatError);

    // Right columns, wrong row count.
    fs::path fewRows = dir / "few.csv";
    {
        std::ofstream out(fewRows);
        for (std::size_t s = 0; s < ts.nSamples(); ++s)
            out << (s ? ",1" : "1");
        out << "\n";
    }
    EXPECT_THROW(fromCsv(meta, fewRows), TraceFormatError);

    EXPECT_THROW(fromCsv(meta, dir / "absent.csv"), TraceFormatError);
}

} // namespace
