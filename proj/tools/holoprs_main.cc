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

// Command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "holoprs/holoprs.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitValidation = 2;
constexpr int kExitCheckFailed = 3;

int report(int status, const std::string &context) {
    std::cerr << "error: " << context << ": " << hprs_last_error() << " [" << hprs_status_name(status) << "]\n";
    return status == HPRS_ERR_VALIDATION ? kExitValidation : kExitError;
}

struct RunArgs {
    std::string experiment;
    std::string config;
    std::vector<std::string> sets;
    std::uint64_t seed = 0;
    std::string out;
    unsigned workers = 1;
    bool check = false;
    bool quiet = false;
};

int do_run(const RunArgs &a) {
    hprs_config *cfg = nullptr;
    if (int st = hprs_config_create(&cfg); st != HPRS_OK) {
        return report(st, "config");
    }
    auto fail_config = [&](int st, const std::string &what) {
        report(st, what);
        hprs_config_destroy(cfg);
        return kExitValidation;
    };
    if (!a.config.empty()) {
        if (int st = hprs_config_load(cfg, a.config.c_str()); st != HPRS_OK) {
            return fail_config(st, "--config " + a.config);
        }
    }
    for (const auto &s : a.sets) {
        if (int st = hprs_config_set(cfg, s.c_str()); st != HPRS_OK) {
            return fail_config(st, "--set " + s);
        }
    }
    hprs_run *run = nullptr;
    int st = hprs_run_experiment(a.experiment.c_str(), cfg, a.seed, a.out.c_str(), a.workers, &run);
    hprs_config_destroy(cfg);
    if (st != HPRS_OK) {
        return report(st, "run " + a.experiment);
    }
    std::cout << hprs_run_summary_line(run) << '\n';
    if (!a.quiet) {
        for (std::size_t i = 0; i < hprs_run_check_count(run); ++i) {
            const char *name = nullptr;
            const char *detail = nullptr;
            int passed = 0;
            hprs_run_check(run, i, &name, &passed, &detail);
            std::cout << "  " << (passed ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
        }
    }
    const bool ok = hprs_run_checks_passed(run) != 0;
    hprs_run_destroy(run);
    return a.check && !ok ? kExitCheckFailed : kExitOk;
}

int do_list() {
    const std::size_t n = hprs_experiment_count();
    for (std::size_t i = 0; i < n; ++i) {
        const char *name = nullptr;
        const char *desc = nullptr;
        const char *anchor = nullptr;
        hprs_experiment_info(i, &name, &desc, &anchor);
        std::printf("%-18s %s (%s)\n", name, desc, anchor);
    }
    return kExitOk;
}

int do_pc(const std::string &input, double epsilon, const std::string &output) {
    std::ifstream in(input);
    if (!in.is_open()) {
        std::cerr << "error: cannot open " << input << '\n';
        return kExitValidation;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    std::size_t length = 0;
    char *reduced = nullptr;
    if (int st = hprs_pseudo_complexity(buf.str().c_str(), epsilon, &length, &reduced); st != HPRS_OK) {
        return report(st, "pc " + input);
    }
    std::cout << length << '\n';
    int rc = kExitOk;
    if (!output.empty()) {
        std::ofstream out(output);
        out << reduced;
        if (!out) {
            std::cerr << "error: cannot write " << output << '\n';
            rc = kExitError;
        }
    }
    hprs_string_free(reduced);
    return rc;
}

int do_weingarten(const std::vector<int> &cycles, std::int64_t d) {
    char *value = nullptr;
    if (int st = hprs_weingarten(cycles.data(), cycles.size(), d, &value); st != HPRS_OK) {
        return report(st, "weingarten");
    }
    std::cout << value << '\n';
    hprs_string_free(value);
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"holoprs experiment runner"};
    app.set_version_flag("--version", std::string(hprs_version()));
    app.require_subcommand(1);

    RunArgs run_args;
    auto *run = app.add_subcommand("run", "run one registered experiment");
    run->add_option("--experiment", run_args.experiment, "experiment name (see list)")->required();
    run->add_option("--config", run_args.config, "key=value configuration file");
    run->add_option("--set", run_args.sets, "override one parameter, key=value (repeatable)");
    run->add_option("--seed", run_args.seed, "master seed")->required();
    run->add_option("--out", run_args.out, "output directory")->required();
    run->add_option("--workers", run_args.workers, "worker threads; results do not depend on it")
        ->check(CLI::Range(1U, 1024U));
    run->add_flag("--check", run_args.check, "exit with status 3 when an acceptance check fails");
    run->add_flag("--quiet", run_args.quiet, "print only the summary line");

    auto *list = app.add_subcommand("list", "list registered experiments");
    list->alias("list-experiments");

    std::string pc_input, pc_output;
    double pc_epsilon = 0;
    auto *pc = app.add_subcommand("pc", "pseudo-complexity of a gate sequence file");
    pc->add_option("--input", pc_input, "gate sequence file")->required();
    pc->add_option("--epsilon", pc_epsilon, "per-rewrite error budget")->check(CLI::NonNegativeNumber);
    pc->add_option("--output", pc_output, "write the reduced sequence here");

    std::vector<int> cycles;
    std::int64_t wg_d = 0;
    auto *wg = app.add_subcommand("weingarten", "exact Weingarten value for a cycle type");
    wg->add_option("--cycle-type", cycles, "cycle lengths, e.g. 2,1")->required()->delimiter(',');
    wg->add_option("-d,--dimension", wg_d, "dimension d")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }
    if (run->parsed()) {
        return do_run(run_args);
    }
    if (list->parsed()) {
        return do_list();
    }
    if (pc->parsed()) {
        return do_pc(pc_input, pc_epsilon, pc_output);
    }
    return do_weingarten(cycles, wg_d);
}
