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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "holoprs/benchcli/experiments.h"
#include "holoprs/common/stats.h"
#include "holoprs/qcore/qcore.h"
#include "holoprs/rewrite/rewrite.h"

namespace holoprs::benchcli::detail {

namespace rw = holoprs::rewrite;

namespace {

std::string num(double v) {
    return format_double(v);
}

// Three-qubit Clifford word whose greedy pseudo-complexity differs between the
// sequence and its reversal (2 versus 4 gates).
constexpr const char *kAsymmetryFixture = "# qubits 3\nX 1\nH 0\nX 2\nX 2\nX 1\nX 2\n";

constexpr rw::GateKind kAllKinds[] = {rw::GateKind::kX,   rw::GateKind::kY,  rw::GateKind::kZ,
                                      rw::GateKind::kH,   rw::GateKind::kS,  rw::GateKind::kSdg,
                                      rw::GateKind::kCZ,  rw::GateKind::kCNOT, rw::GateKind::kRZ,
                                      rw::GateKind::kRX};

rw::Gate random_gate(int n, Rng &rng) {
    rw::GateKind k = kAllKinds[rng.below(std::size(kAllKinds))];
    if (rw::gate_arity(k) == 2 && n < 2) {
        k = rw::GateKind::kH;
    }
    if (rw::gate_arity(k) == 2) {
        int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int b = (a + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)))) % n;
        return rw::Gate::two(k, a, b);
    }
    int q = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    double angle = rw::is_rotation(k) ? (rng.uniform() - 0.5) * 0.4 : 0.0;
    return rw::Gate::single(k, q, angle);
}

rw::GateSequence random_sequence(int n, std::size_t length, Rng &rng) {
    rw::GateSequence s{n, {}};
    for (std::size_t i = 0; i < length; ++i) {
        s.gates.push_back(random_gate(n, rng));
    }
    return s;
}

int steps_for(double t, long per_unit) {
    return std::max(1, static_cast<int>(std::lround(t * static_cast<double>(per_unit))));
}

}  // namespace

ExperimentOutput rewrite_growth(const KeyValueConfig &cfg, const ExperimentContext &ctx) {
    Params p(cfg);
    const int n = static_cast<int>(p.integer("n", 6, 2, 10));
    const double g = p.real("g", 1.05, -100, 100);
    const double h = p.real("h", 0.5, -100, 100);
    const auto times = p.reals("t", "1,2,3,4,5,6,7,8", 0, 1000);
    const long per_unit = p.integer("steps_per_unit", 4, 1, 1000);
    const double eps = p.real("epsilon", 0, 0, 2);
    const double r2_min = p.real("r2_min", 0.99, 0, 1);
    const std::size_t tele_cases = p.count("telescoping_cases", 200, 0, 1000000);
    const int tele_qubits = static_cast<int>(p.integer("telescoping_max_qubits", 4, 1, 10));
    const std::size_t tele_len = p.count("telescoping_max_length", 14, 0, 10000);
    const std::size_t sound_cases = p.count("soundness_cases", 100, 0, 1000000);
    const int sound_qubits = static_cast<int>(p.integer("soundness_max_qubits", 6, 1, 8));
    const double sound_eps = p.real("soundness_epsilon", 0.05, 0, 2);
    ExperimentOutput out;
    out.effective = p.finish();

    const auto ham = qcore::build_hamiltonian(n, g, h);
    struct Growth {
        int steps;
        std::size_t naive, pc, firings;
    };
    auto growth = parallel_map<Growth>(times.size(), ctx.workers, [&](std::size_t i) {
        int steps = steps_for(times[i], per_unit);
        auto seq = rw::trotterize(ham, times[i], steps);
        auto pc = rw::pseudo_complexity(seq, eps);
        return Growth{steps, seq.size(), pc.length, pc.trace.entries.size()};
    });
    std::ostringstream gcsv;
    gcsv << "t,steps,naive_length,pc,firings\n";
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto &r = growth[i];
        gcsv << num(times[i]) << ',' << r.steps << ',' << r.naive << ',' << r.pc << ',' << r.firings << '\n';
        xs.push_back(times[i]);
        ys.push_back(static_cast<double>(r.pc));
    }
    if (xs.size() >= 2) {
        auto fit = fit_line(xs, ys);
        out.results["growth_slope"] = fit.slope;
        out.results["growth_intercept"] = fit.intercept;
        out.results["growth_r_squared"] = fit.r_squared;
        out.headline["slope"] = fit.slope;
        out.headline["r_squared"] = fit.r_squared;
        out.checks.push_back({"linear_growth", fit.r_squared >= r2_min,
                              "R^2 " + num(fit.r_squared) + " >= " + num(r2_min)});
    }

    for (std::size_t i = 0; i < tele_cases + sound_cases; ++i) {
        out.task_seeds.push_back(task_seed(ctx.seed, i));
    }
    struct Case {
        int n;
        std::size_t length, result, firings;
        double excess;  // max over fired rewrites of measured error minus declared bound
    };
    auto cases = parallel_map<Case>(tele_cases + sound_cases, ctx.workers, [&](std::size_t i) {
        Rng rng(Seed{out.task_seeds[i]});
        if (i < tele_cases) {
            int q = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(tele_qubits)));
            auto v = random_sequence(q, rng.below(tele_len + 1), rng);
            auto pc = rw::pseudo_complexity(v.concat(v.reversed_inverse()), 0);
            return Case{q, v.size(), pc.length, pc.trace.entries.size(), 0};
        }
        int q = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(sound_qubits)));
        auto s = random_sequence(q, 5 + rng.below(30), rng);
        auto pc = rw::pseudo_complexity(s, sound_eps);
        double excess = -INFINITY;
        for (const auto &e : pc.trace.entries) {
            double measured = rw::operator_norm_error(rw::GateSequence{q, e.before}, rw::GateSequence{q, e.after});
            excess = std::max(excess, measured - e.error);
        }
        return Case{q, s.size(), pc.length, pc.trace.entries.size(), excess};
    });
    std::ostringstream tcsv, scsv;
    tcsv << "case,n,v_length,pc\n";
    scsv << "case,n,length,pc,firings,max_excess\n";
    std::size_t tele_fail = 0, sound_fail = 0, fired = 0;
    double worst = -INFINITY;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto &c = cases[i];
        if (i < tele_cases) {
            tele_fail += c.result != 0 ? 1 : 0;
            tcsv << i << ',' << c.n << ',' << c.length << ',' << c.result << '\n';
        } else {
            fired += c.firings;
            if (c.firings > 0) {
                worst = std::max(worst, c.excess);
                sound_fail += c.excess > 1e-8 ? 1 : 0;
            }
            scsv << i - tele_cases << ',' << c.n << ',' << c.length << ',' << c.result << ',' << c.firings << ','
                 << (c.firings > 0 ? num(c.excess) : "") << '\n';
        }
    }
    out.results["telescoping_cases"] = tele_cases;
    out.results["telescoping_failures"] = tele_fail;
    out.results["soundness_cases"] = sound_cases;
    out.results["soundness_rewrites"] = fired;
    out.results["soundness_worst_excess"] = fired > 0 ? Json(worst) : Json(nullptr);
    if (tele_cases > 0) {
        out.checks.push_back({"telescoping", tele_fail == 0,
                              std::to_string(tele_fail) + " of " + std::to_string(tele_cases) + " V V^-1 not reduced to 0"});
    }
    if (sound_cases > 0) {
        out.checks.push_back({"rewrite_error_bounds", sound_fail == 0,
                              std::to_string(fired) + " rewrites, worst measured - declared = " +
                                  (fired > 0 ? num(worst) : std::string("n/a"))});
    }
    out.files.push_back({"rewrite_growth.csv", gcsv.str()});
    out.files.push_back({"rewrite_telescoping.csv", tcsv.str()});
    out.files.push_back({"rewrite_soundness.csv", scsv.str()});
    return out;
}

ExperimentOutput switchback(const KeyValueConfig &cfg, const ExperimentContext &ctx) {
    Params p(cfg);
    const int n = static_cast<int>(p.integer("n", 8, 2, 10));
    const double g = p.real("g", 1.05, -100, 100);
    const double h = p.real("h", 0.5, -100, 100);
    const auto times = p.reals("t", "1,2,4", 0, 1000);
    const long per_unit = p.integer("steps_per_unit", 4, 1, 1000);
    const int qubit = static_cast<int>(p.integer("shock_qubit", 0, 0, n - 1));
    const std::string pauli = p.choice("shock_pauli", "X", {"X", "Y", "Z"});
    const double eps = p.real("epsilon", 0, 0, 2);
    ExperimentOutput out;
    out.effective = p.finish();

    const auto ham = qcore::build_hamiltonian(n, g, h);
    const auto shock = qcore::PauliTerm::single(n, qubit, qcore::pauli_from_char(pauli[0]));
    const auto rules = rw::rule_set_default();
    auto rows = parallel_map<rw::SwitchbackResult>(times.size(), ctx.workers, [&](std::size_t i) {
        return rw::switchback_experiment(ham, times[i], steps_for(times[i], per_unit), shock, eps, rules);
    });
    std::ostringstream csv;
    csv << "t,steps,pc_forward_back,pc_shocked,naive\n";
    bool echo_ok = true, window_ok = true;
    Json arr = Json::array();
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto &r = rows[i];
        echo_ok = echo_ok && r.pc_forward_back == 0;
        window_ok = window_ok && r.pc_shocked > 0 && r.pc_shocked < r.naive;
        csv << num(times[i]) << ',' << steps_for(times[i], per_unit) << ',' << r.pc_forward_back << ','
            << r.pc_shocked << ',' << r.naive << '\n';
        arr.push_back(Json{{"t", times[i]},
                           {"pc_forward_back", r.pc_forward_back},
                           {"pc_shocked", r.pc_shocked},
                           {"naive", r.naive}});
    }
    const auto fixture = rw::parse_sequence(kAsymmetryFixture);
    const auto asym = rw::asymmetry_check(fixture, 0, rules);
    out.results["rows"] = arr;
    out.results["asymmetry_fixture"] = rw::sequence_to_string(fixture);
    out.results["asymmetry_forward"] = asym.pc_forward;
    out.results["asymmetry_reverse"] = asym.pc_reverse;
    out.checks.push_back({"unshocked_echo_cancels", echo_ok, "pc(V^-1 V) = 0 for every t"});
    out.checks.push_back({"switchback_window", window_ok, "0 < pc_shocked < naive for every t"});
    out.checks.push_back({"time_asymmetry", asym.pc_forward != asym.pc_reverse,
                          "forward " + std::to_string(asym.pc_forward) + ", reverse " +
                              std::to_string(asym.pc_reverse)});
    out.headline["pc_shocked_last"] = rows.empty() ? 0 : rows.back().pc_shocked;
    out.headline["naive_last"] = rows.empty() ? 0 : rows.back().naive;
    out.files.push_back({"switchback.csv", csv.str()});
    return out;
}

}  // namespace holoprs::benchcli::detail
