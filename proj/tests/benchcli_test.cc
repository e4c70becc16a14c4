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

#include "holoprs/benchcli/benchcli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "holoprs/common/error.h"
#include "holoprs/common/rng.h"

using namespace holoprs;
using namespace holoprs::benchcli;

namespace {

ErrorCode code_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    return ErrorCode{0};
}

std::string message_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const std::exception &e) {
        return e.what();
    }
    return "";
}

KeyValueConfig config(const std::string &text) {
    return KeyValueConfig::parse_string(text);
}

std::string read_file(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path temp_dir(const std::string &name) {
    auto p = std::filesystem::temp_directory_path() / ("holoprs_benchcli_" + name);
    std::filesystem::remove_all(p);
    return p;
}

const Check &find_check(const ExperimentOutput &out, const std::string &name) {
    for (const auto &c : out.checks) {
        if (c.name == name) {
            return c;
        }
    }
    throw std::runtime_error("no check " + name);
}

}  // namespace

TEST(Registry, TenExperiments) {
    const auto &list = list_experiments();
    EXPECT_EQ(list.size(), 10U);
    std::set<std::string> names;
    for (const auto &e : list) {
        names.insert(e.name);
        EXPECT_FALSE(e.description.empty());
        EXPECT_FALSE(e.anchor.empty());
    }
    const std::set<std::string> expected = {"toy-hybrids",       "toy-distinguish", "prs-gram",
                                            "prs-distinguish",   "prs-energy",      "weingarten-verify",
                                            "appendix-a",        "rewrite-growth",  "switchback",
                                            "scrambling-time"};
    EXPECT_EQ(names, expected);
    EXPECT_TRUE(is_registered("appendix-a"));
    EXPECT_TRUE(is_registered("switchback"));
    EXPECT_FALSE(is_registered("appendix-b"));
}

TEST(Registry, UnknownExperimentListsNames) {
    ExperimentConfig c;
    c.experiment = "nope";
    std::string msg = message_of([&] { run(c); });
    EXPECT_NE(msg.find("appendix-a"), std::string::npos);
    EXPECT_NE(msg.find("scrambling-time"), std::string::npos);
    EXPECT_EQ(code_of([&] { run(c); }), ErrorCode::kValidation);
}

TEST(Validation, NamesTheParameter) {
    auto msg = message_of([] { execute("toy-hybrids", config("n=5"), {}); });
    EXPECT_NE(msg.find("'n'"), std::string::npos);
    EXPECT_EQ(code_of([] { execute("toy-hybrids", config("n=5"), {}); }), ErrorCode::kValidation);
    EXPECT_EQ(code_of([] { execute("toy-hybrids", config("n=3\nl=3"), {}); }), ErrorCode::kValidation);
    msg = message_of([] { execute("appendix-a", config("bogus=1"), {}); });
    EXPECT_NE(msg.find("'bogus'"), std::string::npos);
    EXPECT_EQ(code_of([] { execute("appendix-a", config("trials=abc"), {}); }), ErrorCode::kValidation);
    EXPECT_EQ(code_of([] { execute("appendix-a", config("d=4,1"), {}); }), ErrorCode::kValidation);
    EXPECT_EQ(code_of([] { execute("prs-distinguish", config("strategies=psychic"), {}); }),
              ErrorCode::kValidation);
    EXPECT_EQ(code_of([] { execute("toy-distinguish", config("n=8\nl=8"), {}); }), ErrorCode::kValidation);
    EXPECT_EQ(code_of([] { execute("switchback", config("shock_qubit=9"), {}); }), ErrorCode::kValidation);
    EXPECT_EQ(code_of([] { execute("scrambling-time", config("threshold=1.5"), {}); }), ErrorCode::kValidation);
}

TEST(Validation, EffectiveConfigEchoesDefaults) {
    auto out = execute("switchback", config("t=1"), {});
    EXPECT_EQ(out.effective.get("t"), "1");
    EXPECT_EQ(out.effective.get("n"), "8");
    EXPECT_TRUE(out.effective.has("shock_pauli"));
}

TEST(ToyHybrids, CoincidingHybridsAtN3) {
    auto out = execute("toy-hybrids", config("n=3\nl=2"), {1, 1});
    EXPECT_EQ(out.results["tv_CD"], "0/1");
    EXPECT_EQ(out.results["tv_AB"], "55/56");
    EXPECT_EQ(out.results["tv_DE"], "6/7");
    EXPECT_EQ(out.results["closeness_bound"], "97/56");
    for (const auto &c : out.checks) {
        EXPECT_TRUE(c.passed) << c.name;
    }
}

TEST(AppendixA, FirstMomentAtDimensionFour) {
    auto out = execute("appendix-a", config("K=1\nd=4\ntrials=10000"), {5, 1});
    const auto &p = out.results["points"][0];
    double mean = p["mc_mean"].get<double>();
    double se = p["std_error"].get<double>();
    EXPECT_NEAR(mean, 0.2, 3 * se);
    EXPECT_EQ(p["exact"], "1/5");
    EXPECT_TRUE(find_check(out, "mc_vs_exact").passed);
    EXPECT_TRUE(find_check(out, "exact_first_moment").passed);
}

TEST(AppendixA, SlopeOnlyWithEnoughPoints) {
    auto out = execute("appendix-a", config("K=1\nd=16,32\ntrials=400"), {5, 1});
    EXPECT_TRUE(out.results.contains("loglog_slope"));
    out = execute("appendix-a", config("K=1\nd=4,8\ntrials=400"), {5, 1});
    EXPECT_FALSE(out.results.contains("loglog_slope"));
}

TEST(Determinism, IdenticalConfigGivesIdenticalFiles) {
    auto dir1 = temp_dir("det1");
    auto dir2 = temp_dir("det2");
    ExperimentConfig c;
    c.experiment = "prs-distinguish";
    c.parameters = config("n=4\nl=2\ntrials=40\ncopies=1,2");
    c.seed = 99;
    c.out_dir = dir1.string();
    auto r1 = run(c);
    c.out_dir = dir2.string();
    auto r2 = run(c);
    for (const auto &f : r1.output.files) {
        EXPECT_EQ(read_file(dir1 / f.name), read_file(dir2 / f.name)) << f.name;
    }
    EXPECT_EQ(read_file(dir1 / "summary.json"), read_file(dir2 / "summary.json"));
    EXPECT_TRUE(std::filesystem::exists(dir1 / "manifest.json"));
    std::filesystem::remove_all(dir1);
    std::filesystem::remove_all(dir2);
}

TEST(Determinism, WorkerCountDoesNotMatter) {
    for (const std::string exp : {"toy-distinguish", "prs-gram", "rewrite-growth", "weingarten-verify"}) {
        KeyValueConfig cfg;
        if (exp == "toy-distinguish") {
            cfg = config("n=10\nl=2,4\ntrials=30");
        } else if (exp == "prs-gram") {
            cfg = config("n=4\nl=2\ntrials=12");
        } else if (exp == "rewrite-growth") {
            cfg = config("n=3\nt=1,2\ntelescoping_cases=20\nsoundness_cases=10");
        } else {
            cfg = config("k_max=2\nd_max=4\nmc_specs=6\nmc_trials=500");
        }
        auto one = execute(exp, cfg, {123, 1});
        auto four = execute(exp, cfg, {123, 4});
        ASSERT_EQ(one.files.size(), four.files.size());
        for (std::size_t i = 0; i < one.files.size(); ++i) {
            EXPECT_EQ(one.files[i].contents, four.files[i].contents) << exp << " " << one.files[i].name;
        }
        EXPECT_EQ(dump_json(one.results), dump_json(four.results)) << exp;
        EXPECT_EQ(one.task_seeds, four.task_seeds) << exp;
    }
}

TEST(Runner, WritesFilesAndManifest) {
    auto dir = temp_dir("files");
    ExperimentConfig c;
    c.experiment = "scrambling-time";
    c.parameters = config("n=3,4\ntrials=4");
    c.seed = 42;
    c.out_dir = (dir / "nested").string();
    c.workers = 2;
    auto r = run(c);
    EXPECT_TRUE(std::filesystem::exists(dir / "nested" / "scrambling_time.csv"));
    auto manifest = nlohmann::json::parse(read_file(dir / "nested" / "manifest.json"));
    EXPECT_EQ(manifest["experiment"], "scrambling-time");
    EXPECT_EQ(manifest["seed"], 42);
    EXPECT_EQ(manifest["config"]["n"], "3,4");
    EXPECT_EQ(manifest["config"]["trials"], "4");
    EXPECT_EQ(manifest["version"], code_version());
    ASSERT_EQ(manifest["task_seeds"].size(), 2U);
    EXPECT_EQ(manifest["task_seeds"][1].get<std::uint64_t>(), task_seed(42, 1));
    EXPECT_GE(manifest["duration_seconds"].get<double>(), 0.0);
    auto summary = nlohmann::json::parse(read_file(dir / "nested" / "summary.json"));
    EXPECT_EQ(summary["checks_passed"], r.checks_passed());
    EXPECT_EQ(r.summary_line.rfind("scrambling-time: checks=", 0), 0U);
    std::filesystem::remove_all(dir);
}

TEST(Runner, ManifestReproducesRun) {
    ExperimentConfig c;
    c.experiment = "appendix-a";
    c.parameters = config("d=4\ntrials=300");
    c.seed = 8;
    auto first = run(c);
    ExperimentConfig again;
    again.experiment = first.manifest.experiment;
    again.parameters = first.manifest.config;
    again.seed = first.manifest.seed;
    again.workers = 3;
    auto second = run(again);
    EXPECT_EQ(first.summary_json, second.summary_json);
    EXPECT_EQ(first.output.files[0].contents, second.output.files[0].contents);
}

TEST(Runner, UnwritableOutputIsIoError) {
    ExperimentConfig c;
    c.experiment = "switchback";
    c.parameters = config("t=1\nn=3");
    c.out_dir = "/proc/holoprs_cannot_write_here";
    EXPECT_EQ(code_of([&] { run(c); }), ErrorCode::kIo);
}

TEST(Json, DoublesUseSeventeenDigits) {
    Json j;
    j["x"] = 0.1;
    j["n"] = 3;
    j["s"] = "a\"b";
    j["inf"] = std::numeric_limits<double>::infinity();
    j["list"] = {1.0 / 3.0};
    std::string text = dump_json(j, -1);
    EXPECT_EQ(text, R"({"x":0.10000000000000001,"n":3,"s":"a\"b","inf":null,"list":[0.33333333333333331]})");
    EXPECT_EQ(nlohmann::json::parse(text)["x"].get<double>(), 0.1);
}

TEST(Parallel, OrderAndExceptions) {
    for (unsigned w : {1U, 3U, 8U}) {
        auto v = parallel_map<std::size_t>(50, w, [](std::size_t i) { return i * i; });
        ASSERT_EQ(v.size(), 50U);
        for (std::size_t i = 0; i < 50; ++i) {
            EXPECT_EQ(v[i], i * i);
        }
        auto msg = message_of([&] {
            parallel_map<int>(20, w, [](std::size_t i) -> int {
                if (i == 7 || i == 13) {
                    throw std::runtime_error("task " + std::to_string(i));
                }
                return 0;
            });
        });
        EXPECT_EQ(msg, "task 7");
    }
    EXPECT_TRUE(parallel_map<int>(0, 4, [](std::size_t) { return 1; }).empty());
}

TEST(Seeds, TaskSeedsAreSplitsOfTheMaster) {
    EXPECT_EQ(task_seed(5, 3), Rng(Seed{5}).split(3)());
    EXPECT_NE(task_seed(5, 3), task_seed(5, 4));
    EXPECT_NE(task_seed(5, 3), task_seed(6, 3));
}

TEST(Experiments, SmallRunsProduceCsv) {
    struct Case {
        std::string name, cfg, header;
    };
    const std::vector<Case> cases = {
        {"toy-distinguish", "n=8\nl=2,3\ntrials=20", "strategy,l,trial,hybrid,decision,correct,fwd_queries,inv_queries"},
        {"prs-gram", "n=3\nl=1\ntrials=5", "trial,seed,max_offdiag,mean_offdiag,sibling_overlap,below_threshold"},
        {"prs-energy", "n=3\nfixed_l=1,3\nfixed_m=2\nrandom_l=2\ncopies=2\nmax_copies=8",
         "copies,variant,kind,l,m,T,exact,estimate,std_error,draw_spread,copies_used"},
        {"weingarten-verify", "k_max=2\nd_max=3\nmc_specs=2\nmc_trials=100", "check,k,d,value,expected,passed"},
        {"rewrite-growth", "n=2\nt=1,2,3\ntelescoping_cases=5\nsoundness_cases=5", "t,steps,naive_length,pc,firings"},
        {"switchback", "n=4\nt=1,2", "t,steps,pc_forward_back,pc_shocked,naive"},
    };
    for (const auto &c : cases) {
        auto out = execute(c.name, config(c.cfg), {3, 2});
        ASSERT_FALSE(out.files.empty()) << c.name;
        EXPECT_EQ(out.files[0].contents.substr(0, out.files[0].contents.find('\n')), c.header) << c.name;
        EXPECT_FALSE(out.checks.empty()) << c.name;
    }
}

TEST(Experiments, SwitchbackChecksHold) {
    auto out = execute("switchback", config("t=1,2"), {0, 1});
    for (const auto &c : out.checks) {
        EXPECT_TRUE(c.passed) << c.name << " " << c.detail;
    }
    EXPECT_EQ(out.results["asymmetry_forward"], 2);
    EXPECT_EQ(out.results["asymmetry_reverse"], 4);
}

TEST(Experiments, ChecksCanFail) {
    auto out = execute("prs-distinguish", config("n=3\nl=1\ntrials=30\nbias_threshold=0\ncopies=1"), {1, 1});
    bool any_failed = false;
    for (const auto &c : out.checks) {
        any_failed = any_failed || !c.passed;
    }
    EXPECT_TRUE(any_failed);
}
