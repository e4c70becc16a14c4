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

// Acceptance runner: one PASS/FAIL line per criterion, fixed seed.
// Usage: holoprs_acceptance [--out DIR] [--only N]...

#include "holoprs/benchcli/benchcli.h"
#include "holoprs/common/rational.h"
#include "holoprs/qcore/qcore.h"
#include "holoprs/rewrite/rewrite.h"
#include "holoprs/weingarten/weingarten.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

namespace {

using namespace holoprs;
using benchcli::ExperimentConfig;
using benchcli::ExperimentOutput;

constexpr std::uint64_t kSeed = 2026;

struct Verdict {
    bool passed = true;
    std::string detail;

    void add(bool ok, const std::string &what) {
        passed = passed && ok;
        if (!detail.empty()) detail += "; ";
        detail += (ok ? "" : "FAILED ") + what;
    }
};

struct Criterion {
    int id;
    const char *title;
    double limit_seconds;
    std::function<Verdict()> body;
};

std::string out_root;

ExperimentOutput run_experiment(const std::string &name, const std::string &config_text, const std::string &tag) {
    ExperimentConfig cfg;
    cfg.experiment = name;
    cfg.parameters = KeyValueConfig::parse_string(config_text);
    cfg.seed = kSeed;
    cfg.workers = 1;
    if (!out_root.empty()) cfg.out_dir = out_root + "/" + tag;
    return benchcli::run(cfg).output;
}

// Adds the named checks of an experiment output; all of them when names is empty.
void take_checks(Verdict &v, const ExperimentOutput &out, const std::vector<std::string> &names = {}) {
    std::set<std::string> wanted(names.begin(), names.end());
    std::size_t seen = 0;
    for (const auto &c : out.checks) {
        if (!wanted.empty() && !wanted.count(c.name)) continue;
        ++seen;
        v.add(c.passed, c.name + " (" + c.detail + ")");
    }
    if (!wanted.empty() && seen != wanted.size()) v.add(false, "missing checks");
    if (wanted.empty() && seen == 0) v.add(false, "no checks reported");
}

const ExperimentOutput &toy_hybrids() {
    static const ExperimentOutput out = run_experiment("toy-hybrids", "n = 3\nl = 2\n", "c01_toy_hybrids");
    return out;
}

std::vector<Criterion> criteria() {
    return {
        {1, "hybrid identity TV(C,D) = 0 at n=3, l=2", 300,
         [] {
             Verdict v;
             take_checks(v, toy_hybrids(), {"tv_CD_zero"});
             return v;
         }},
        {2, "hybrid closeness TV(A,B), TV(D,E) within bound", 300,
         [] {
             Verdict v;
             const auto &out = toy_hybrids();
             take_checks(v, out, {"closeness_AB", "closeness_DE"});
             v.detail += "; bound " + out.headline["bound"].get<std::string>();
             return v;
         }},
        {3, "distinguisher scaling at n=16", 600,
         [] {
             Verdict v;
             take_checks(v, run_experiment("toy-distinguish",
                                           "n = 16\nl = 4,6,8,10\ntrials = 200\n"
                                           "strategies = meet-in-middle,forward-enum,zero-query\n",
                                           "c03_toy_distinguish"));
             return v;
         }},
        {4, "Haar first moment equals 1/(2^n+1) for n = 2,3,4", 300,
         [] {
             Verdict v;
             take_checks(v, run_experiment("appendix-a", "K = 1\nd = 4,8,16\ntrials = 2000\nse_tolerance = 3\n",
                                           "c04_first_moment"),
                         {"mc_vs_exact"});
             return v;
         }},
        {5, "Weingarten exactness", 60,
         [] {
             Verdict v;
             take_checks(v,
                         run_experiment("weingarten-verify",
                                        "k_max = 4\nd_max = 8\ndim_k_max = 8\nclosed_d_max = 8\nmc_specs = 0\n",
                                        "c05_weingarten_exact"),
                         {"gram_weingarten_identity", "sum_dim_squared", "k2_closed_forms"});
             return v;
         }},
        {6, "exact vs Monte Carlo Haar moments, 20 specs, d=4", 300,
         [] {
             Verdict v;
             take_checks(v,
                         run_experiment("weingarten-verify",
                                        "k_max = 1\nd_max = 1\ndim_k_max = 1\nclosed_d_max = 2\n"
                                        "mc_specs = 20\nmc_order = 2\nmc_d = 4\nmc_trials = 10000\nmc_se = 5\n",
                                        "c06_weingarten_mc"),
                         {"exact_vs_mc"});
             return v;
         }},
        {7, "appendix A exact K=1 and K=2 scaling", 1200,
         [] {
             Verdict v;
             bool exact = true;
             for (std::int64_t d = 2; d <= 8; ++d) {
                 exact = exact && weingarten::appendix_a_exact(1, d) == Rational(1, d + 1);
             }
             v.add(exact, "K=1 exact equals 1/(d+1) for d <= 8");
             take_checks(v,
                         run_experiment("appendix-a",
                                        "K = 2\nd = 4,16,32,64,128\ntrials = 10000\nse_tolerance = 5\n"
                                        "fit_min_d = 16\nslope = -1\nslope_tol = 0.15\n",
                                        "c07_appendix_a"),
                         {"mc_vs_exact", "loglog_slope"});
             return v;
         }},
        {8, "PRS near-orthogonality at n=8, l=3", 900,
         [] {
             Verdict v;
             take_checks(v, run_experiment("prs-gram", "n = 8\nl = 3\ntrials = 100\nscrambler = haar\n",
                                           "c08_prs_gram"));
             return v;
         }},
        {9, "copy-bounded distinguishers stay below bias 0.1", 900,
         [] {
             Verdict v;
             take_checks(v, run_experiment("prs-distinguish",
                                           "n = 8\nl = 3\ncopies = 1,2,4\ntrials = 500\n"
                                           "strategies = swap-test,overlap-with-reference\nbias_threshold = 0.1\n",
                                           "c09_prs_distinguish"));
             return v;
         }},
        {10, "energy attack leak and mitigation", 900,
         [] {
             Verdict v;
             take_checks(v, run_experiment("prs-energy", "n = 6\nbeta = 1\nshots = 100\ncopies = 4\n",
                                           "c10_prs_energy"));
             return v;
         }},
        {11, "pseudo-complexity growth, switchback, asymmetry, soundness", 600,
         [] {
             Verdict v;
             take_checks(v, run_experiment("rewrite-growth", "n = 6\nt = 1,2,3,4,5,6,7,8\nr2_min = 0.99\n",
                                           "c11_rewrite_growth"));
             take_checks(v, run_experiment("switchback", "n = 8\n", "c11_switchback"));
             return v;
         }},
        {12, "exact complexity 0/2/3 for identity/Bell/GHZ", 300,
         [] {
             Verdict v;
             const double inv = 1 / std::numbers::sqrt2;
             auto zero2 = qcore::Statevector::zeros(2);
             Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
             bell[0] = bell[3] = inv;
             Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(8);
             ghz[0] = ghz[7] = inv;
             const auto id = rewrite::exact_circuit_complexity(zero2, zero2, 1e-6);
             const auto b = rewrite::exact_circuit_complexity(qcore::Statevector(bell), zero2, 1e-6);
             const auto g =
                 rewrite::exact_circuit_complexity(qcore::Statevector(ghz), qcore::Statevector::zeros(3), 1e-6);
             v.add(id == 0, "identity " + std::to_string(id));
             v.add(b == 2, "Bell " + std::to_string(b));
             v.add(g == 3, "GHZ " + std::to_string(g));
             return v;
         }},
    };
}

}  // namespace

int main(int argc, char **argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--out") && i + 1 < argc) {
            out_root = argv[++i];
        } else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) {
            only.insert(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: %s [--out DIR] [--only N]...\n", argv[0]);
            return 2;
        }
    }
    int failed = 0;
    int ran = 0;
    for (const auto &c : criteria()) {
        if (!only.empty() && !only.count(c.id)) continue;
        ++ran;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.body();
        } catch (const std::exception &e) {
            v.add(false, std::string("error: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char timing[96];
        std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", secs, c.limit_seconds);
        v.add(secs <= c.limit_seconds, timing);
        if (!v.passed) ++failed;
        std::printf("%s criterion %d: %s: %s\n", v.passed ? "PASS" : "FAIL", c.id, c.title, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed (seed %llu)\n", ran - failed, ran, static_cast<unsigned long long>(kSeed));
    return failed == 0 ? 0 : 1;
}
