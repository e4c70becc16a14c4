// Copyright 2026 The holoprs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Uses only the public C header and the shared library.

#include "holoprs/holoprs.h"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

namespace {

std::filesystem::path temp_dir(const std::string &name) {
    auto p = std::filesystem::temp_directory_path() / ("holoprs_capi_" + name);
    std::filesystem::remove_all(p);
    return p;
}

struct ConfigGuard {
    hprs_config *cfg = nullptr;
    ConfigGuard() {
        EXPECT_EQ(hprs_config_create(&cfg), HPRS_OK);
    }
    ~ConfigGuard() {
        hprs_config_destroy(cfg);
    }
};

}  // namespace

TEST(CApi, VersionAndStatusNames) {
    EXPECT_STRNE(hprs_version(), "");
    EXPECT_STREQ(hprs_status_name(HPRS_OK), "ok");
    EXPECT_STREQ(hprs_status_name(HPRS_ERR_VALIDATION), "validation");
    EXPECT_STREQ(hprs_status_name(HPRS_ERR_NULL_ARGUMENT), "null-argument");
    EXPECT_STREQ(hprs_status_name(9999), "unknown");
}

TEST(CApi, Registry) {
    ASSERT_EQ(hprs_experiment_count(), 10U);
    std::set<std::string> names;
    for (size_t i = 0; i < hprs_experiment_count(); ++i) {
        const char *name = nullptr;
        const char *desc = nullptr;
        ASSERT_EQ(hprs_experiment_info(i, &name, &desc, nullptr), HPRS_OK);
        names.insert(name);
        EXPECT_STRNE(desc, "");
    }
    EXPECT_TRUE(names.count("appendix-a"));
    EXPECT_TRUE(names.count("switchback"));
    EXPECT_EQ(hprs_experiment_info(10, nullptr, nullptr, nullptr), HPRS_ERR_OUT_OF_RANGE);
    EXPECT_STRNE(hprs_last_error(), "");
}

TEST(CApi, ConfigOperations) {
    ConfigGuard g;
    EXPECT_EQ(hprs_config_parse(g.cfg, "# comment\nn = 3\nl=2\n"), HPRS_OK);
    EXPECT_EQ(hprs_config_set(g.cfg, "l=1"), HPRS_OK);
    EXPECT_EQ(hprs_config_size(g.cfg), 2U);
    const char *v = nullptr;
    ASSERT_EQ(hprs_config_get(g.cfg, "l", &v), HPRS_OK);
    EXPECT_STREQ(v, "1");
    EXPECT_EQ(hprs_config_get(g.cfg, "missing", &v), HPRS_ERR_VALIDATION);
    EXPECT_EQ(hprs_config_set(g.cfg, "no-equals"), HPRS_ERR_VALIDATION);
    EXPECT_EQ(hprs_config_parse(g.cfg, "garbage line\n"), HPRS_ERR_VALIDATION);
    EXPECT_EQ(hprs_config_load(g.cfg, "/nonexistent/holoprs.cfg"), HPRS_ERR_IO);
    EXPECT_EQ(hprs_config_set(nullptr, "a=1"), HPRS_ERR_NULL_ARGUMENT);

    auto dir = temp_dir("cfg");
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "c.cfg");
        f << "n = 2\nextra = x\n";
    }
    EXPECT_EQ(hprs_config_load(g.cfg, (dir / "c.cfg").string().c_str()), HPRS_OK);
    ASSERT_EQ(hprs_config_get(g.cfg, "n", &v), HPRS_OK);
    EXPECT_STREQ(v, "2");
    EXPECT_EQ(hprs_config_size(g.cfg), 3U);
    std::filesystem::remove_all(dir);
}

TEST(CApi, RunWritesOutputs) {
    ConfigGuard g;
    ASSERT_EQ(hprs_config_parse(g.cfg, "n=3\nl=2\n"), HPRS_OK);
    auto dir = temp_dir("run");
    hprs_run *run = nullptr;
    ASSERT_EQ(hprs_run_experiment("toy-hybrids", g.cfg, 1, dir.string().c_str(), 2, &run), HPRS_OK)
        << hprs_last_error();
    ASSERT_NE(run, nullptr);
    EXPECT_EQ(hprs_run_checks_passed(run), 1);
    std::string line = hprs_run_summary_line(run);
    EXPECT_NE(line.find("tv_CD=0/1"), std::string::npos);
    EXPECT_NE(std::string(hprs_run_summary_json(run)).find("\"tv_CD\": \"0/1\""), std::string::npos);
    EXPECT_NE(std::string(hprs_run_manifest_json(run)).find("\"experiment\": \"toy-hybrids\""), std::string::npos);
    EXPECT_GE(hprs_run_duration(run), 0.0);
    ASSERT_EQ(hprs_run_check_count(run), 3U);
    const char *name = nullptr;
    const char *detail = nullptr;
    int passed = 0;
    ASSERT_EQ(hprs_run_check(run, 0, &name, &passed, &detail), HPRS_OK);
    EXPECT_STREQ(name, "tv_CD_zero");
    EXPECT_EQ(passed, 1);
    EXPECT_EQ(hprs_run_check(run, 3, &name, &passed, &detail), HPRS_ERR_OUT_OF_RANGE);
    const size_t outputs = hprs_run_output_count(run);
    ASSERT_GE(outputs, 3U);
    for (size_t i = 0; i < outputs; ++i) {
        const char *file = nullptr;
        const char *contents = nullptr;
        ASSERT_EQ(hprs_run_output(run, i, &file, &contents), HPRS_OK);
        EXPECT_TRUE(std::filesystem::exists(dir / file)) << file;
        if (std::string(file) != "manifest.json") {
            std::ifstream in(dir / file, std::ios::binary);
            std::string disk((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            EXPECT_EQ(disk, contents) << file;
        }
    }
    EXPECT_EQ(hprs_run_output(run, outputs, &detail, &detail), HPRS_ERR_OUT_OF_RANGE);
    hprs_run_destroy(run);
    std::filesystem::remove_all(dir);
}

TEST(CApi, RunWithoutOutputDirectoryOrConfig) {
    hprs_run *run = nullptr;
    ASSERT_EQ(hprs_run_experiment("switchback", nullptr, 0, nullptr, 0, &run), HPRS_OK) << hprs_last_error();
    EXPECT_EQ(hprs_run_checks_passed(run), 1);
    hprs_run_destroy(run);
}

TEST(CApi, RunErrors) {
    hprs_run *run = reinterpret_cast<hprs_run *>(0x1);
    EXPECT_EQ(hprs_run_experiment("no-such-experiment", nullptr, 0, nullptr, 1, &run), HPRS_ERR_VALIDATION);
    EXPECT_EQ(run, nullptr);
    EXPECT_NE(std::string(hprs_last_error()).find("registered"), std::string::npos);

    ConfigGuard g;
    ASSERT_EQ(hprs_config_set(g.cfg, "n=99"), HPRS_OK);
    EXPECT_EQ(hprs_run_experiment("toy-hybrids", g.cfg, 0, nullptr, 1, &run), HPRS_ERR_VALIDATION);
    EXPECT_NE(std::string(hprs_last_error()).find("'n'"), std::string::npos);
    EXPECT_EQ(hprs_run_experiment(nullptr, nullptr, 0, nullptr, 1, &run), HPRS_ERR_NULL_ARGUMENT);
    EXPECT_EQ(hprs_run_checks_passed(nullptr), 0);
    EXPECT_EQ(hprs_run_check_count(nullptr), 0U);
    EXPECT_STREQ(hprs_run_summary_line(nullptr), "");
}

TEST(CApi, LastErrorClearsOnSuccess) {
    hprs_run *run = nullptr;
    EXPECT_NE(hprs_run_experiment("nope", nullptr, 0, nullptr, 1, &run), HPRS_OK);
    EXPECT_STRNE(hprs_last_error(), "");
    size_t len = 0;
    EXPECT_EQ(hprs_pseudo_complexity("H 0\n", 0, &len, nullptr), HPRS_OK);
    EXPECT_STREQ(hprs_last_error(), "");
}

TEST(CApi, PseudoComplexity) {
    size_t len = 99;
    char *out = nullptr;
    ASSERT_EQ(hprs_pseudo_complexity("# qubits 2\nH 0\nH 0\nX 1\n", 0, &len, &out), HPRS_OK);
    EXPECT_EQ(len, 1U);
    ASSERT_NE(out, nullptr);
    EXPECT_EQ(std::string(out), "# qubits 2\nX 1\n");
    hprs_string_free(out);
    EXPECT_EQ(hprs_pseudo_complexity("RZ 0 0.001\n", 0.01, &len, nullptr), HPRS_OK);
    EXPECT_EQ(len, 0U);
    EXPECT_EQ(hprs_pseudo_complexity("FOO 0\n", 0, &len, nullptr), HPRS_ERR_VALIDATION);
    EXPECT_EQ(hprs_pseudo_complexity(nullptr, 0, &len, nullptr), HPRS_ERR_NULL_ARGUMENT);
}

TEST(CApi, Weingarten) {
    char *v = nullptr;
    const int id[] = {1, 1};
    ASSERT_EQ(hprs_weingarten(id, 2, 4, &v), HPRS_OK);
    EXPECT_STREQ(v, "1/15");
    hprs_string_free(v);
    const int tr[] = {2};
    ASSERT_EQ(hprs_weingarten(tr, 1, 4, &v), HPRS_OK);
    EXPECT_STREQ(v, "-1/60");
    hprs_string_free(v);
    EXPECT_NE(hprs_weingarten(tr, 1, 0, &v), HPRS_OK);
    EXPECT_EQ(hprs_weingarten(nullptr, 1, 4, &v), HPRS_ERR_NULL_ARGUMENT);
}
