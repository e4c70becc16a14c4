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

#include "holoprs/holoprs.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "holoprs/benchcli/benchcli.h"
#include "holoprs/common/config.h"
#include "holoprs/common/error.h"
#include "holoprs/rewrite/rewrite.h"
#include "holoprs/weingarten/weingarten.h"

struct hprs_config {
    holoprs::KeyValueConfig cfg;
};

struct hprs_run {
    holoprs::benchcli::RunResult result;
    std::string manifest;
};

namespace {

thread_local std::string g_last_error;

int fail_with(int status, const std::string &message) {
    g_last_error = message;
    return status;
}

// Runs fn, mapping exceptions to status codes.
template <typename Fn>
int guarded(Fn fn) {
    try {
        g_last_error.clear();
        fn();
        return HPRS_OK;
    } catch (const holoprs::Error &e) {
        return fail_with(static_cast<int>(e.code()), e.what());
    } catch (const std::bad_alloc &) {
        return fail_with(HPRS_ERR_RESOURCE_LIMIT, "out of memory");
    } catch (const std::exception &e) {
        return fail_with(HPRS_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail_with(HPRS_ERR_INTERNAL, "unknown error");
    }
}

char *copy_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char *hprs_version(void) {
    static const std::string v = holoprs::benchcli::code_version();
    return v.c_str();
}

const char *hprs_status_name(int status) {
    switch (status) {
        case HPRS_OK: return "ok";
        case HPRS_ERR_NULL_ARGUMENT: return "null-argument";
        case HPRS_ERR_OUT_OF_RANGE: return "out-of-range";
        case HPRS_ERR_INTERNAL: return "internal";
        default: break;
    }
    if (status >= 1 && status <= 15) {
        return holoprs::error_code_name(static_cast<holoprs::ErrorCode>(status));
    }
    return "unknown";
}

const char *hprs_last_error(void) {
    return g_last_error.c_str();
}

void hprs_string_free(char *s) {
    std::free(s);
}

size_t hprs_experiment_count(void) {
    return holoprs::benchcli::list_experiments().size();
}

int hprs_experiment_info(size_t index, const char **name, const char **description, const char **anchor) {
    const auto &list = holoprs::benchcli::list_experiments();
    if (index >= list.size()) {
        return fail_with(HPRS_ERR_OUT_OF_RANGE, "experiment index out of range");
    }
    if (name) {
        *name = list[index].name.c_str();
    }
    if (description) {
        *description = list[index].description.c_str();
    }
    if (anchor) {
        *anchor = list[index].anchor.c_str();
    }
    return HPRS_OK;
}

int hprs_config_create(hprs_config **out) {
    if (out == nullptr) {
        return fail_with(HPRS_ERR_NULL_ARGUMENT, "out is null");
    }
    return guarded([&] { *out = new hprs_config(); });
}

void hprs_config_destroy(hprs_config *cfg) {
    delete cfg;
}

int hprs_config_load(hprs_config *cfg, const char *path) {
    if (cfg == nullptr || path == nullptr) {
        return fail_with(HPRS_ERR_NULL_ARGUMENT, "config or path is null");
    }
    return guarded([&] {
        const auto loaded = holoprs::KeyValueConfig::load(path);
        for (const auto &[k, v] : loaded.entries()) {
            cfg->cfg.set(k, v);
        }
    });
}

int hprs_config_parse(hprs_config *cfg, const char *text) {
    if (cfg == nullptr || text == nullptr) {
        return fail_with(HPRS_ERR_NULL_ARGUMENT, "config or text is null");
    }
    return guarded([&] {
        const auto parsed = holoprs::KeyValueConfig::parse_string(text);
        for (const auto &[k, v] : parsed.entries()) {
            cfg->cfg.set(k, v);
        }
    });
}

int hprs_config_set(hprs_config *cfg, const char *assignment) {
    if (cfg == nullptr || assignment == nullptr) {
        return fail_with(HPRS_ERR_NULL_ARGUMENT, "config or assignment is null");
    }
    return guarded([&] { cfg->cfg.set_assignment(assignment); });
}

size_t hprs_config_size(const hprs_config *cfg) {
    return cfg ? cfg->cfg.entries().size() : 0;
}

int hprs_config_get(const hprs_config *cfg, const char *key, const char **value) {
    if (cfg == nullptr || key == nullptr || value == nullptr) {
        return fail_with(HPRS_ERR_NULL_ARGUMENT, "config, key or value is null");
    }
    return guarded([&] { *value = cfg->cfg.get(key).c_str(); });
}

int hprs_run_experiment(const char *experiment, const hprs_config *cfg, uint64_t seed, const char *out_dir,
                        unsigned workers, hprs_run **out) {
    if (experiment == nullptr || out == nullptr) {
        return fail_with(HPRS_ERR_NULL_ARGUMENT, "experiment or out is null");
    }
    *out = nullptr;
    return guarded([&] {
        holoprs::benchcli::ExperimentConfig c;
        c.experiment = experiment;
        if (cfg) {
            c.parameters = cfg->cfg;
        }
        c.seed = seed;
        c.out_dir = out_dir ? out_dir : "";
        c.workers = workers == 0 ? 1 : workers;
        auto *run = new hprs_run();
        try {
            run->result = holoprs::benchcli::run(c);
            run->manifest = holoprs::benchcli::manifest_json(run->result.manifest);
        } catch (...) {
            delete run;
            throw;
        }
        *out = run;
    });
}

void hprs_run_destroy(hprs_run *run) {
    delete run;
}

const char *hprs_run_summary_line(const hprs_run *run) {
    return run ? run->result.summary_line.c_str() : "";
}

const char *hprs_run_summary_json(const hprs_run *run) {
    return run ? run->result.summary_json.c_str() : "";
}

const char *hprs_run_manifest_json(const hprs_run *run) {
    return run ? run->manifest.c_str() : "";
}

double hprs_run_duration(const hprs_run *run) {
    return run ? run->result.manifest.duration_seconds : 0.0;
}

int hprs_run_checks_passed(const hprs_run *run) {
    return run && run->result.checks_passed() ? 1 : 0;
}

size_t hprs_run_check_count(const hprs_run *run) {
    return run ? run->result.output.checks.size() : 0;
}

int hprs_run_check(const hprs_run *run, size_t index, const char **name, int *passed, const char **detail) {
    if (run == nullptr) {
        return fail_with(HPRS_ERR_NULL_ARGUMENT, "run is null");
    }
    const auto &checks = run->result.output.checks;
    if (index >= checks.size()) {
        return fail_with(HPRS_ERR_OUT_OF_RANGE, "check index out of range");
    }
    if (name) {
        *name = checks[index].name.c_str();
    }
    if (passed) {
        *passed = checks[index].passed ? 1 : 0;
    }
    if (detail) {
        *detail = checks[index].detail.c_str();
    }
    return HPRS_OK;
}

size_t hprs_run_output_count(const hprs_run *run) {
    return run ? run->result.output.files.size() + 2 : 0;
}

int hprs_run_output(const hprs_run *run, size_t index, const char **name, const char **contents) {
    if (run == nullptr) {
        return fail_with(HPRS_ERR_NULL_ARGUMENT, "run is null");
    }
    const auto &files = run->result.output.files;
    const char *n = nullptr;
    const char *c = nullptr;
    if (index < files.size()) {
        n = files[index].name.c_str();
        c = files[index].contents.c_str();
    } else if (index == files.size()) {
        n = "summary.json";
        c = run->result.summary_json.c_str();
    } else if (index == files.size() + 1) {
        n = "manifest.json";
        c = run->manifest.c_str();
    } else {
        return fail_with(HPRS_ERR_OUT_OF_RANGE, "output index out of range");
    }
    if (name) {
        *name = n;
    }
    if (contents) {
        *contents = c;
    }
    return HPRS_OK;
}

int hprs_pseudo_complexity(const char *sequence_text, double epsilon, size_t *length, char **output) {
    if (sequence_text == nullptr || length == nullptr) {
        return fail_with(HPRS_ERR_NULL_ARGUMENT, "sequence_text or length is null");
    }
    return guarded([&] {
        auto seq = holoprs::rewrite::parse_sequence(sequence_text);
        auto pc = holoprs::rewrite::pseudo_complexity(seq, epsilon);
        *length = pc.length;
        if (output) {
            *output = copy_string(holoprs::rewrite::sequence_to_string(pc.output));
        }
    });
}

int hprs_weingarten(const int *cycle_lengths, size_t count, int64_t d, char **value) {
    if ((cycle_lengths == nullptr && count > 0) || value == nullptr) {
        return fail_with(HPRS_ERR_NULL_ARGUMENT, "cycle_lengths or value is null");
    }
    return guarded([&] {
        std::vector<int> parts(cycle_lengths, cycle_lengths + count);
        holoprs::weingarten::CycleType cls{holoprs::weingarten::Partition(parts)};
        *value = copy_string(holoprs::to_fraction_string(holoprs::weingarten::weingarten(cls, d)));
    });
}

}  // extern "C"
