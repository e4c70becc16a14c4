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

#ifndef HOLOPRS_BENCHCLI_BENCHCLI_H
#define HOLOPRS_BENCHCLI_BENCHCLI_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "holoprs/common/config.h"

// Experiment registry and runner.

namespace holoprs::benchcli {

using Json = nlohmann::ordered_json;

struct ExperimentInfo {
    std::string name;
    std::string description;
    std::string anchor;  // what the experiment reproduces
};

/// All registered experiments, in a fixed order.
const std::vector<ExperimentInfo> &list_experiments();
bool is_registered(const std::string &name);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct OutputFile {
    std::string name;
    std::string contents;
};

struct ExperimentContext {
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

/// What an experiment hands back to the runner; nothing is written yet.
struct ExperimentOutput {
    Json results = Json::object();
    Json headline = Json::object();  // scalars echoed on the summary line
    std::vector<Check> checks;
    std::vector<std::uint64_t> task_seeds;
    std::vector<OutputFile> files;  // the first file is the primary CSV
    KeyValueConfig effective;  // config with defaults filled in
};

struct ExperimentConfig {
    std::string experiment;
    KeyValueConfig parameters;
    std::uint64_t seed = 0;
    std::string out_dir;  // empty: nothing is written
    unsigned workers = 1;
};

struct RunManifest {
    std::string experiment;
    KeyValueConfig config;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string version;
    double duration_seconds = 0;
    std::vector<std::uint64_t> task_seeds;
    std::vector<std::string> outputs;
};

struct RunResult {
    RunManifest manifest;
    ExperimentOutput output;
    std::string summary_json;
    std::string summary_line;

    bool checks_passed() const;
};

/// Validates and executes one experiment, then writes <primary>.csv and any
/// extra CSVs, summary.json and manifest.json into out_dir. Validation
/// problems (unknown experiment, bad or unknown parameter) throw kValidation.
RunResult run(const ExperimentConfig &config);

/// Executes without touching the filesystem.
ExperimentOutput execute(const std::string &experiment, const KeyValueConfig &parameters,
                         const ExperimentContext &context);

std::string code_version();

/// JSON text with every double printed as %.17g (non-finite values as null).
std::string dump_json(const Json &value, int indent = 2);

std::string manifest_json(const RunManifest &manifest);

/// Calls fn(i) for i in [0, count) on up to `workers` threads and returns the
/// results in index order. The lowest-index exception is rethrown.
template <typename T>
std::vector<T> parallel_map(std::size_t count, unsigned workers, const std::function<T(std::size_t)> &fn);

/// Seed of task i under the master seed.
std::uint64_t task_seed(std::uint64_t master, std::size_t index);

}  // namespace holoprs::benchcli

#include "holoprs/benchcli/parallel.h"

#endif
