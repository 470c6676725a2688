// Copyright 2026 The twosrc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exercises the shared library through its C header only.

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "twosrc/twosrc.h"

namespace {

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / (std::string("twosrc_capi_") + name)).string();
}

std::vector<std::uint8_t> read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void write_all(const std::string& path, const std::vector<std::uint8_t>& data) {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

std::string take(char* s) {
    std::string out = s ? s : "";
    twosrc_free_string(s);
    return out;
}

}  // namespace

TEST(CApi, FlagshipPlan) {
    twosrc_plan* plan = nullptr;
    ASSERT_EQ(twosrc_plan_eq(16, std::uint64_t{1} << 47, "10.74/16", "2^-30", &plan), TWOSRC_OK);
    twosrc_plan_info info{};
    ASSERT_EQ(twosrc_plan_get_info(plan, &info), TWOSRC_OK);
    EXPECT_EQ(info.mode, TWOSRC_MODE_EQ);
    EXPECT_EQ(info.n, 71u);
    EXPECT_EQ(info.q, 80u);
    char* text = nullptr;
    ASSERT_EQ(twosrc_plan_report(plan, &text), TWOSRC_OK);
    const std::string report = take(text);
    EXPECT_NE(report.find("q = 80"), std::string::npos);
    twosrc_plan* parsed = nullptr;
    ASSERT_EQ(twosrc_plan_parse(report.c_str(), &parsed), TWOSRC_OK);
    twosrc_plan_info info2{};
    twosrc_plan_get_info(parsed, &info2);
    EXPECT_EQ(info2.num_blocks, info.num_blocks);
    twosrc_plan_free(parsed);
    twosrc_plan_free(plan);
}

TEST(CApi, StatusCodesAndMessages) {
    twosrc_plan* plan = nullptr;
    EXPECT_EQ(twosrc_plan_eq(16, 100, "0.5", "2^-30", &plan), TWOSRC_E_UNSUPPORTED_RATE);
    EXPECT_NE(std::string(twosrc_last_error()).find("1/2"), std::string::npos);
    EXPECT_EQ(plan, nullptr);
    EXPECT_EQ(twosrc_plan_eq(16, 1000, "0.75", "2^-200", &plan), TWOSRC_E_CAPACITY);
    EXPECT_EQ(twosrc_plan_eq(16, 1000, "0.75", "1", &plan), TWOSRC_E_INVALID_ARGUMENT);
    EXPECT_EQ(twosrc_plan_eq(16, 1000, nullptr, "2^-30", &plan), TWOSRC_E_INVALID_ARGUMENT);
    EXPECT_EQ(twosrc_plan_neq(16, "1", 64, 0, &plan), TWOSRC_OK);
    double bound = 0;
    EXPECT_EQ(twosrc_plan_error_after(plan, 10, &bound), TWOSRC_OK);
    EXPECT_STREQ(twosrc_last_error(), "");
    twosrc_plan_free(plan);
    EXPECT_STREQ(twosrc_status_name(TWOSRC_E_IO), "io");
    twosrc_plan_free(nullptr);
    twosrc_free_string(nullptr);
    twosrc_extractor_free(nullptr);
}

TEST(CApi, LastErrorIsPerThread) {
    twosrc_plan* plan = nullptr;
    EXPECT_EQ(twosrc_plan_eq(16, 100, "0.4", "2^-30", &plan), TWOSRC_E_UNSUPPORTED_RATE);
    std::string other;
    std::thread t([&] { other = twosrc_last_error(); });
    t.join();
    EXPECT_EQ(other, "");
    EXPECT_NE(std::string(twosrc_last_error()), "");
}

TEST(CApi, StreamingMatchesFileExtraction) {
    std::mt19937_64 rng(3);
    std::vector<std::uint8_t> x(3001);
    std::vector<std::uint8_t> y(2999);
    for (auto& v : x) v = static_cast<std::uint8_t>(rng());
    for (auto& v : y) v = static_cast<std::uint8_t>(rng());
    const auto xp = temp_path("x.bin");
    const auto yp = temp_path("y.bin");
    const auto op = temp_path("out.bin");
    write_all(xp, x);
    write_all(yp, y);

    twosrc_plan* plan = nullptr;
    ASSERT_EQ(twosrc_plan_neq(4, "3/4", 12, 1, &plan), TWOSRC_OK);
    char* report = nullptr;
    ASSERT_EQ(twosrc_extract_files(plan, xp.c_str(), yp.c_str(), op.c_str(), 3, &report), TWOSRC_OK);
    const std::string rep = take(report);
    EXPECT_NE(rep.find("kind = extraction"), std::string::npos);
    const auto from_file = read_all(op);

    twosrc_extractor* ex = nullptr;
    ASSERT_EQ(twosrc_extractor_new(plan, 2, 0, &ex), TWOSRC_OK);
    std::vector<std::uint8_t> streamed;
    std::uint8_t buf[7];
    for (std::size_t i = 0; i < 3001; i += 50) {
        ASSERT_EQ(twosrc_extractor_push_x(ex, &x[i], std::min<std::size_t>(50, 3001 - i)), TWOSRC_OK);
        if (i < 2999) {
            ASSERT_EQ(twosrc_extractor_push_y(ex, &y[i], std::min<std::size_t>(50, 2999 - i)), TWOSRC_OK);
        }
        std::size_t got = 0;
        do {
            ASSERT_EQ(twosrc_extractor_read(ex, buf, sizeof buf, &got), TWOSRC_OK);
            streamed.insert(streamed.end(), buf, buf + got);
        } while (got > 0);
    }
    ASSERT_EQ(twosrc_extractor_finish(ex), TWOSRC_OK);
    std::size_t got = 0;
    do {
        twosrc_extractor_read(ex, buf, sizeof buf, &got);
        streamed.insert(streamed.end(), buf, buf + got);
    } while (got > 0);
    EXPECT_EQ(streamed, from_file);
    EXPECT_FALSE(from_file.empty());
    EXPECT_EQ(twosrc_extractor_push_x(ex, x.data(), 1), TWOSRC_E_INVALID_ARGUMENT);
    char* srep = nullptr;
    ASSERT_EQ(twosrc_extractor_report(ex, 0.0, &srep), TWOSRC_OK);
    const std::string srep_text = take(srep);
    EXPECT_EQ(srep_text.substr(0, srep_text.find("wall_time")), rep.substr(0, rep.find("wall_time")));
    twosrc_extractor_free(ex);
    twosrc_plan_free(plan);

    EXPECT_EQ(twosrc_extract_files(nullptr, xp.c_str(), yp.c_str(), op.c_str(), 1, nullptr),
              TWOSRC_E_INVALID_ARGUMENT);
    ASSERT_EQ(twosrc_plan_neq(4, "3/4", 12, 1, &plan), TWOSRC_OK);
    EXPECT_EQ(twosrc_extract_files(plan, "/nonexistent/x", yp.c_str(), op.c_str(), 1, nullptr), TWOSRC_E_IO);
    twosrc_plan_free(plan);
    for (const auto& p : {xp, yp, op}) std::filesystem::remove(p);
}

TEST(CApi, SimulateAndCertify) {
    const auto path = temp_path("sim.bin");
    char* report = nullptr;
    ASSERT_EQ(twosrc_simulate(R"({"kind": "iid-uniform", "b": 16, "seed": 1})", 1 << 20, path.c_str(), &report),
              TWOSRC_OK);
    const std::string rep = take(report);
    EXPECT_EQ(std::filesystem::file_size(path), 2u << 20);
    EXPECT_NE(rep.find("delta = 1\n"), std::string::npos);

    const std::string file_model = std::string(R"({"kind": "file", "b": 8, "path": ")") + path + "\"}";
    twosrc_model* model = nullptr;
    ASSERT_EQ(twosrc_model_from_json(file_model.c_str(), &model), TWOSRC_OK);
    double delta = 0;
    EXPECT_EQ(twosrc_model_certify(model, &delta, nullptr), TWOSRC_E_UNCERTIFIABLE);
    twosrc_model_free(model);
    const auto copy = temp_path("sim_copy.bin");
    ASSERT_EQ(twosrc_simulate(file_model.c_str(), 1000, copy.c_str(), &report), TWOSRC_OK);
    EXPECT_NE(take(report).find("certificate = uncertifiable"), std::string::npos);
    EXPECT_EQ(twosrc_simulate(file_model.c_str(), 5u << 20, copy.c_str(), nullptr), TWOSRC_E_TRUNCATED);
    std::filesystem::remove(path);
    std::filesystem::remove(copy);
}

TEST(CApi, VerifyAndCostModel) {
    EXPECT_TRUE(twosrc_is_suite("xor"));
    EXPECT_FALSE(twosrc_is_suite("nope"));
    char* report = nullptr;
    std::uint64_t violations = 99;
    ASSERT_EQ(twosrc_verify_suite("xor", 4, 1, &report, &violations), TWOSRC_OK);
    EXPECT_EQ(violations, 0u);
    EXPECT_NE(take(report).find("result = pass"), std::string::npos);
    EXPECT_EQ(twosrc_verify_suite("nope", 4, 1, nullptr, nullptr), TWOSRC_E_INVALID_ARGUMENT);
    int passed = 0;
    ASSERT_EQ(twosrc_check_hadamard(2, 2, &passed), TWOSRC_OK);
    EXPECT_EQ(passed, 1);
    EXPECT_EQ(twosrc_check_hadamard(17, 1, &passed), TWOSRC_E_INFEASIBLE);

    std::uint64_t ops = 0;
    ASSERT_EQ(twosrc_gate_count(71, 80, 4885, &ops), TWOSRC_OK);
    EXPECT_EQ(ops, 352435u);
    std::uint64_t lanes = 0;
    std::uint64_t bps = 0;
    ASSERT_EQ(twosrc_projected_speed(200000000, 300000, 5, ops, 80, 0, &lanes, &bps), TWOSRC_OK);
    EXPECT_EQ(lanes, 4u);
    EXPECT_EQ(bps, 64000000000u);
    EXPECT_EQ(twosrc_projected_speed(200000000, 300000, 1, ops, 80, 0, &lanes, &bps), TWOSRC_E_INFEASIBLE);
}

TEST(CApi, BenchReport) {
    twosrc_plan* plan = nullptr;
    ASSERT_EQ(twosrc_plan_eq(8, 1 << 16, "3/4", "2^-4", &plan), TWOSRC_OK);
    char* report = nullptr;
    ASSERT_EQ(twosrc_bench(plan, 1, 0.2, 0, &report), TWOSRC_OK);
    const std::string rep = take(report);
    EXPECT_NE(rep.find("kind = bench"), std::string::npos);
    EXPECT_NE(rep.find("model_block_ops"), std::string::npos);
    twosrc_plan_free(plan);
    ASSERT_EQ(twosrc_plan_neq(8, "3/4", 16, 1, &plan), TWOSRC_OK);
    EXPECT_EQ(twosrc_bench(plan, 1, 0.1, 0, &report), TWOSRC_E_INVALID_ARGUMENT);
    twosrc_plan_free(plan);
}
