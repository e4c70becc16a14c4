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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "holoprs/benchcli/experiments.h"
#include "holoprs/common/error.h"
#include "holoprs/common/rng.h"

#ifndef HOLOPRS_VERSION
#define HOLOPRS_VERSION "0.0.0"
#endif

namespace holoprs::benchcli {

namespace {

using Runner = ExperimentOutput (*)(const KeyValueConfig &, const ExperimentContext &);

struct Entry {
    ExperimentInfo info;
    Runner runner;
};

const std::vector<Entry> &registry() {
    static const std::vector<Entry> entries = {
        {{"toy-hybrids", "exact TV distances between hybrids A-E of the permutation toy model",
          "permutation toy model, hybrid argument"},
         detail::toy_hybrids},
        {{"toy-distinguish", "leaf-membership game: success rate and query counts per strategy",
          "permutation toy model, meet-in-the-middle distinguisher"},
         detail::toy_distinguish},
        {{"prs-gram", "Gram matrix statistics of Haar-backed 4-ary state trees",
          "PRS state tree, first-moment formula"},
         detail::prs_gram},
        {{"prs-distinguish", "copy-limited distinguishers between the PRS ensemble and Haar states",
          "PRS indistinguishability, desk-scale probe"},
         detail::prs_distinguish},
        {{"prs-energy", "energy attack on fixed-spacing and randomized shock schedules",
          "energy-measurement attack and randomized-schedule mitigation"},
         detail::prs_energy},
        {{"weingarten-verify", "exact Weingarten identities and Monte Carlo cross-validation",
          "Weingarten calculus, Collins-Sniady formula"},
         detail::weingarten_verify},
        {{"appendix-a", "flip-overlap moment: exact values and Monte Carlo decay in d",
          "expanded Haar moment and its O(1/d) decay"},
         detail::appendix_a},
        {{"rewrite-growth", "pseudo-complexity of Trotter circuits versus time, plus soundness checks",
          "pseudo-complexity, linear growth"},
         detail::rewrite_growth},
        {{"switchback", "pseudo-complexity of V^-1 P V echoes and the time-asymmetry fixture",
          "switchback effect, time asymmetry"},
         detail::switchback},
        {{"scrambling-time", "OTOC-based scrambling time of the mixed-field Ising chain",
          "scrambling time of local chaotic Hamiltonians"},
         detail::scrambling_time},
    };
    return entries;
}

std::string registered_names() {
    std::string out;
    for (const auto &e : registry()) {
        out += (out.empty() ? "" : ", ") + e.info.name;
    }
    return out;
}

void emit(std::string &out, const Json &v, int indent, int level) {
    auto newline = [&](int lvl) {
        if (indent >= 0) {
            out += '\n';
            out.append(static_cast<std::size_t>(indent * lvl), ' ');
        }
    };
    switch (v.type()) {
        case Json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                out += first ? "" : ",";
                first = false;
                newline(level + 1);
                out += Json(it.key()).dump();
                out += indent >= 0 ? ": " : ":";
                emit(out, it.value(), indent, level + 1);
            }
            newline(level);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto &item : v) {
                out += first ? "" : ",";
                first = false;
                newline(level + 1);
                emit(out, item, indent, level + 1);
            }
            newline(level);
            out += ']';
            return;
        }
        case Json::value_t::number_float: {
            double d = v.get<double>();
            out += std::isfinite(d) ? format_double(d) : "null";
            return;
        }
        default:
            out += v.dump();
    }
}

Json checks_json(const std::vector<Check> &checks) {
    Json arr = Json::array();
    for (const auto &c : checks) {
        arr.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    return arr;
}

std::string scalar_text(const Json &v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return dump_json(v, -1);
}

void write_file(const std::filesystem::path &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary);
    require(out.is_open(), ErrorCode::kIo, "cannot write " + path.string());
    out << contents;
    out.close();
    require(!out.fail(), ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace

const std::vector<ExperimentInfo> &list_experiments() {
    static const std::vector<ExperimentInfo> infos = [] {
        std::vector<ExperimentInfo> out;
        for (const auto &e : registry()) {
            out.push_back(e.info);
        }
        return out;
    }();
    return infos;
}

bool is_registered(const std::string &name) {
    const auto &r = registry();
    return std::any_of(r.begin(), r.end(), [&](const Entry &e) { return e.info.name == name; });
}

std::string code_version() {
    return HOLOPRS_VERSION;
}

std::uint64_t task_seed(std::uint64_t master, std::size_t index) {
    return Rng(Seed{master}).split(index)();
}

std::string dump_json(const Json &value, int indent) {
    std::string out;
    emit(out, value, indent, 0);
    return out;
}

bool RunResult::checks_passed() const {
    return std::all_of(output.checks.begin(), output.checks.end(), [](const Check &c) { return c.passed; });
}

ExperimentOutput execute(const std::string &experiment, const KeyValueConfig &parameters,
                         const ExperimentContext &context) {
    for (const auto &e : registry()) {
        if (e.info.name == experiment) {
            return e.runner(parameters, context);
        }
    }
    fail(ErrorCode::kValidation, "unknown experiment '" + experiment + "'; registered: " + registered_names());
}

std::string manifest_json(const RunManifest &m) {
    Json j;
    j["experiment"] = m.experiment;
    j["version"] = m.version;
    j["seed"] = m.seed;
    j["workers"] = m.workers;
    Json cfg = Json::object();
    for (const auto &[k, v] : m.config.entries()) {
        cfg[k] = v;
    }
    j["config"] = cfg;
    j["duration_seconds"] = m.duration_seconds;
    j["outputs"] = m.outputs;
    j["task_seeds"] = m.task_seeds;
    return dump_json(j) + "\n";
}

RunResult run(const ExperimentConfig &config) {
    require(is_registered(config.experiment), ErrorCode::kValidation,
            "unknown experiment '" + config.experiment + "'; registered: " + registered_names());
    const auto start = std::chrono::steady_clock::now();
    RunResult r;
    r.output = execute(config.experiment, config.parameters, {config.seed, std::max(1U, config.workers)});
    const auto stop = std::chrono::steady_clock::now();

    auto &m = r.manifest;
    m.experiment = config.experiment;
    m.config = r.output.effective;
    m.seed = config.seed;
    m.workers = std::max(1U, config.workers);
    m.version = code_version();
    m.duration_seconds = std::chrono::duration<double>(stop - start).count();
    m.task_seeds = r.output.task_seeds;
    for (const auto &f : r.output.files) {
        m.outputs.push_back(f.name);
    }
    m.outputs.push_back("summary.json");
    m.outputs.push_back("manifest.json");

    Json summary;
    summary["experiment"] = config.experiment;
    summary["seed"] = config.seed;
    Json params = Json::object();
    for (const auto &[k, v] : r.output.effective.entries()) {
        params[k] = v;
    }
    summary["parameters"] = params;
    summary["results"] = r.output.results;
    summary["checks"] = checks_json(r.output.checks);
    summary["checks_passed"] = r.checks_passed();
    r.summary_json = dump_json(summary) + "\n";

    std::ostringstream line;
    line << config.experiment << ": checks=" << (r.checks_passed() ? "pass" : "fail");
    for (auto it = r.output.headline.begin(); it != r.output.headline.end(); ++it) {
        line << ' ' << it.key() << '=' << scalar_text(it.value());
    }
    r.summary_line = line.str();

    if (!config.out_dir.empty()) {
        std::filesystem::path dir(config.out_dir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        require(!ec, ErrorCode::kIo, "cannot create output directory " + config.out_dir + ": " + ec.message());
        for (const auto &f : r.output.files) {
            write_file(dir / f.name, f.contents);
        }
        write_file(dir / "summary.json", r.summary_json);
        write_file(dir / "manifest.json", manifest_json(m));
    }
    return r;
}

}  // namespace holoprs::benchcli
