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
#include <memory>
#include <optional>
#include <sstream>

#include "holoprs/benchcli/experiments.h"
#include "holoprs/common/error.h"
#include "holoprs/common/stats.h"
#include "holoprs/prslab/prslab.h"
#include "holoprs/qcore/qcore.h"

namespace holoprs::benchcli::detail {

namespace {

using prslab::NamedSchedule;

std::string num(double v) {
    return format_double(v);
}

struct GramRow {
    double max_offdiag = 0;
    double mean_offdiag = 0;
    double sibling = 0;
    Eigen::MatrixXd gram;
};

}  // namespace

ExperimentOutput prs_gram(const KeyValueConfig &cfg, const ExperimentContext &ctx) {
    Params p(cfg);
    const int n = static_cast<int>(p.integer("n", 8, 1, 10));
    const int depth = static_cast<int>(p.integer("l", 3, 1, 6));
    const std::size_t trials = p.count("trials", 100, 2, 100000);
    const std::string kind = p.choice("scrambler", "haar", {"haar", "hamiltonian"});
    const double g = p.real("g", 1.05, -100, 100);
    const double h = p.real("h", 0.5, -100, 100);
    const double m = p.real("m", 2, 2, 1000);
    double t_scr = p.real("t_scr", 0, 0, 1e6);
    const double max_entry = p.real("max_entry_count", 50, 0, 1e9);
    const double min_fraction = p.real("min_fraction", 0.95, 0, 1);
    const double sibling_se = p.real("sibling_se", 3, 0, 100);
    if (kind == "hamiltonian" && n < 2) {
        invalid("n", "the Hamiltonian scrambler needs n >= 2");
    }
    ExperimentOutput out;
    out.effective = p.finish();

    const double d = std::ldexp(1.0, n);
    const double threshold = max_entry / d;
    std::optional<qcore::LocalHamiltonian> ham;
    if (kind == "hamiltonian") {
        ham = qcore::build_hamiltonian(n, g, h);
        if (t_scr == 0) {
            t_scr = qcore::scrambling_time(*ham, 0.1, Seed{task_seed(ctx.seed, trials)});
        }
        out.results["t_scr"] = t_scr;
    }
    for (std::size_t t = 0; t < trials; ++t) {
        out.task_seeds.push_back(task_seed(ctx.seed, t));
    }
    auto rows = parallel_map<GramRow>(trials, ctx.workers, [&](std::size_t t) {
        prslab::PRSEnsembleSpec spec;
        spec.kind = ham ? prslab::ScramblerKind::kHamiltonian : prslab::ScramblerKind::kHaar;
        spec.num_qubits = n;
        spec.depth = depth;
        spec.seed = Seed{out.task_seeds[t]};
        spec.hamiltonian = ham;
        spec.multiplier = m;
        spec.t_scr = t_scr;
        auto tree = prslab::build_state_tree(spec);
        GramRow r;
        r.gram = prslab::gram_matrix(tree);
        r.max_offdiag = prslab::near_orthogonality_stat(r.gram);
        const auto k = r.gram.rows();
        r.mean_offdiag = (r.gram.sum() - r.gram.trace()) / static_cast<double>(k * (k - 1));
        r.sibling = std::norm(tree.nodes[1].dot(tree.nodes[2]));
        if (t != 0) {
            r.gram.resize(0, 0);
        }
        return r;
    });

    std::ostringstream csv, gcsv;
    csv << "trial,seed,max_offdiag,mean_offdiag,sibling_overlap,below_threshold\n";
    std::size_t below = 0;
    RunningMean sib;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto &r = rows[t];
        bool ok = r.max_offdiag <= threshold;
        below += ok ? 1 : 0;
        sib.add(r.sibling);
        csv << t << ',' << out.task_seeds[t] << ',' << num(r.max_offdiag) << ',' << num(r.mean_offdiag) << ','
            << num(r.sibling) << ',' << (ok ? 1 : 0) << '\n';
    }
    gcsv << "row,col,value\n";
    for (Eigen::Index i = 0; i < rows[0].gram.rows(); ++i) {
        for (Eigen::Index j = 0; j < rows[0].gram.cols(); ++j) {
            gcsv << i << ',' << j << ',' << num(rows[0].gram(i, j)) << '\n';
        }
    }
    const double fraction = static_cast<double>(below) / static_cast<double>(trials);
    const auto se = sib.estimate();
    const double expected = 1.0 / (d + 1.0);
    out.results["threshold"] = threshold;
    out.results["fraction_below_threshold"] = fraction;
    out.results["sibling_mean"] = se.mean;
    out.results["sibling_std_error"] = se.std_error;
    out.results["sibling_expected"] = expected;
    out.results["tree_nodes"] = prslab::StateTree::node_count(depth);
    out.checks.push_back({"near_orthogonality", fraction >= min_fraction,
                          "fraction " + num(fraction) + " >= " + num(min_fraction)});
    out.checks.push_back({"sibling_first_moment", std::abs(se.mean - expected) <= sibling_se * se.std_error,
                          "mean " + num(se.mean) + " vs " + num(expected) + ", se " + num(se.std_error)});
    out.headline["fraction_below"] = fraction;
    out.headline["sibling_mean"] = se.mean;
    out.files.push_back({"prs_gram.csv", csv.str()});
    out.files.push_back({"prs_gram_matrix_trial0.csv", gcsv.str()});
    return out;
}

ExperimentOutput prs_distinguish(const KeyValueConfig &cfg, const ExperimentContext &ctx) {
    Params p(cfg);
    const int n = static_cast<int>(p.integer("n", 8, 1, 10));
    const int depth = static_cast<int>(p.integer("l", 3, 0, 16));
    const auto copies = p.integers("copies", "1,2,4", 1, 256);
    const auto strategies = p.choices("strategies", "swap-test,overlap-with-reference", prslab::strategy_names());
    const std::size_t trials = p.count("trials", 500, 1, 1000000);
    const std::uint64_t ensemble_seed = p.count("ensemble_seed", 11, 0, UINT64_MAX);
    const std::size_t calibration = p.count("calibration_states", 16, 1, 100000);
    const double g = p.real("g", 1.05, -100, 100);
    const double h = p.real("h", 0.5, -100, 100);
    const double max_bias = p.real("bias_threshold", 0.1, 0, 1);
    if (n < 2 && std::find(strategies.begin(), strategies.end(), "energy") != strategies.end()) {
        invalid("n", "the energy strategy needs n >= 2");
    }
    ExperimentOutput out;
    out.effective = p.finish();

    prslab::PRSEnsembleSpec spec;
    spec.num_qubits = n;
    spec.depth = depth;
    spec.seed = Seed{ensemble_seed};
    auto a = prslab::prs_ensemble(std::make_shared<const prslab::PrsEnsemble>(spec), "prs");
    auto b = prslab::haar_ensemble(n);
    prslab::StrategyOptions options;
    if (n >= 2) {
        options.hamiltonian = qcore::build_hamiltonian(n, g, h);
    }
    options.calibration_states = calibration;
    options.calibration_seed = Seed{task_seed(ctx.seed, trials)};
    std::vector<std::unique_ptr<prslab::Strategy>> objects;
    for (const auto &s : strategies) {
        objects.push_back(prslab::make_strategy(s, a, b, options));
    }
    for (std::size_t t = 0; t < trials; ++t) {
        out.task_seeds.push_back(task_seed(ctx.seed, t));
    }
    const std::size_t per_combo = trials;
    const std::size_t combos = strategies.size() * copies.size();
    auto records = parallel_map<prslab::DistinguisherTrial>(combos * per_combo, ctx.workers, [&](std::size_t i) {
        std::size_t combo = i / per_combo;
        std::size_t t = i % per_combo;
        const auto &strategy = *objects[combo / copies.size()];
        auto c = static_cast<std::size_t>(copies[combo % copies.size()]);
        return prslab::distinguisher_trial(a, b, c, strategy, t, Seed{out.task_seeds[t]});
    });

    std::ostringstream csv, table;
    csv << "strategy,copies,trial,ensemble,decision,correct,copies_used\n";
    table << "strategy,copies,trials,successes,bias,bias_low,bias_high\n";
    Json rows = Json::array();
    double worst = 0;
    for (std::size_t combo = 0; combo < combos; ++combo) {
        const auto &strategy = *objects[combo / copies.size()];
        auto c = static_cast<std::size_t>(copies[combo % copies.size()]);
        auto first = records.begin() + static_cast<std::ptrdiff_t>(combo * per_combo);
        auto res = prslab::collect_distinguisher(
            a, b, c, strategy, {first, first + static_cast<std::ptrdiff_t>(per_combo)});
        for (const auto &r : res.records) {
            csv << res.strategy << ',' << c << ',' << r.trial << ',' << (r.from_a ? a.name : b.name) << ','
                << (r.decision ? a.name : b.name) << ',' << (r.correct ? 1 : 0) << ',' << r.copies_used << '\n';
        }
        const auto iv = res.bias_interval();
        table << res.strategy << ',' << c << ',' << res.trials << ',' << res.successes << ',' << num(res.bias()) << ','
              << num(iv.low) << ',' << num(iv.high) << '\n';
        rows.push_back(Json{{"strategy", res.strategy},
                            {"copies", c},
                            {"successes", res.successes},
                            {"bias", res.bias()},
                            {"bias_interval", {iv.low, iv.high}}});
        worst = std::max(worst, std::abs(res.bias()));
        // Staying under the threshold is the expected outcome.
        out.checks.push_back({res.strategy + "_c" + std::to_string(c), std::abs(res.bias()) <= max_bias,
                              "|bias| = " + num(std::abs(res.bias())) + " <= " + num(max_bias)});
    }
    out.results["ensemble_a"] = a.name;
    out.results["ensemble_b"] = b.name;
    out.results["key_count"] = std::pow(4.0, depth);
    out.results["rows"] = rows;
    out.results["max_abs_bias"] = worst;
    out.headline["max_abs_bias"] = worst;
    out.files.push_back({"prs_distinguish.csv", csv.str()});
    out.files.push_back({"prs_distinguish_summary.csv", table.str()});
    return out;
}

ExperimentOutput prs_energy(const KeyValueConfig &cfg, const ExperimentContext &ctx) {
    Params p(cfg);
    const int n = static_cast<int>(p.integer("n", 6, 2, 6));
    const double beta = p.real("beta", 1, 0, 100);
    const double g = p.real("g", 1.05, -100, 100);
    const double h = p.real("h", 0.5, -100, 100);
    double t_scr = p.real("t_scr", 0, 0, 1e6);
    const double m = p.real("m", 2, 2, 1000);
    const auto fixed_l = p.integers("fixed_l", "2,4,6", 1, 64);
    const auto fixed_m = p.reals("fixed_m", "2,3", 2, 1000);
    const auto random_l = p.integers("random_l", "2,4", 1, 64);
    const std::size_t shots = p.count("shots", 100, 1, 1000000);
    const std::size_t copies = p.count("copies", 4, 1, 1024);
    const std::size_t max_copies = p.count("max_copies", 1024, 1, 1u << 20);
    ExperimentOutput out;
    out.effective = p.finish();

    const auto half = qcore::build_hamiltonian(n, g, h);
    if (t_scr == 0) {
        t_scr = qcore::scrambling_time(half, 0.1, Seed{task_seed(ctx.seed, 0)});
    }
    out.task_seeds.push_back(task_seed(ctx.seed, 0));
    const auto setup = prslab::EnergyAttackSetup::tfd(half, beta);
    const double spacing = m * t_scr;

    struct Meta {
        std::string kind;
        long l;
        double m;
    };
    std::vector<NamedSchedule> variants;
    std::vector<Meta> meta;
    auto fixed_name = [](long l, double mm) { return "fixed-l" + std::to_string(l) + "-m" + format_double(mm); };
    for (long l : fixed_l) {
        variants.push_back({fixed_name(l, m), prslab::fixed_spacing_schedule(static_cast<int>(l), spacing, 0, qcore::Pauli::kX), {}});
        meta.push_back({"fixed", l, m});
    }
    const long l_long = *std::max_element(fixed_l.begin(), fixed_l.end());
    const long l_short = *std::min_element(fixed_l.begin(), fixed_l.end());
    const std::size_t long_index = static_cast<std::size_t>(std::max_element(fixed_l.begin(), fixed_l.end()) - fixed_l.begin());
    std::vector<std::pair<std::size_t, std::size_t>> fixed_pairs;
    for (std::size_t i = 0; i < fixed_l.size(); ++i) {
        for (std::size_t j = i + 1; j < fixed_l.size(); ++j) {
            if (fixed_l[i] != fixed_l[j]) {
                fixed_pairs.emplace_back(i, j);
            }
        }
    }
    for (double mm : fixed_m) {
        if (mm == m) {
            continue;
        }
        variants.push_back({fixed_name(l_long, mm),
                            prslab::fixed_spacing_schedule(static_cast<int>(l_long), mm * t_scr, 0, qcore::Pauli::kX), {}});
        meta.push_back({"fixed", l_long, mm});
        fixed_pairs.emplace_back(long_index, variants.size() - 1);
    }

    // Randomized families: two independent families with equal l and T, and one
    // with twice the evolution time.
    std::vector<std::pair<std::size_t, std::size_t>> equal_pairs, volume_pairs;
    std::size_t family_index = 0;
    for (long l : random_l) {
        const double total = static_cast<double>(l) * spacing;
        auto family = [&](const std::string &tag, double T) {
            const std::uint64_t s = task_seed(ctx.seed, 1000 + family_index++);
            out.task_seeds.push_back(s);
            prslab::RandomizedFamily f{n, static_cast<int>(l), T, Seed{s}};
            variants.push_back({"random-l" + std::to_string(l) + "-T" + format_double(T) + "-" + tag, {}, f});
            meta.push_back({"randomized", l, T / static_cast<double>(l) / t_scr});
            return variants.size() - 1;
        };
        std::size_t a = family("a", total);
        std::size_t b = family("b", total);
        std::size_t c = family("a", 2 * total);
        equal_pairs.emplace_back(a, b);
        volume_pairs.emplace_back(a, c);
    }

    std::vector<std::size_t> copy_levels;
    for (std::size_t c = 1; c <= copies; c *= 2) {
        copy_levels.push_back(c);
    }
    if (copy_levels.back() != copies) {
        copy_levels.push_back(copies);
    }
    const std::size_t attack_base = 1;
    for (std::size_t i = 0; i < copy_levels.size() + fixed_pairs.size(); ++i) {
        out.task_seeds.push_back(task_seed(ctx.seed, attack_base + i));
    }
    struct Task {
        std::optional<prslab::EnergyAttackResult> attack;
        std::optional<std::size_t> resolved_at;
    };
    auto tasks = parallel_map<Task>(copy_levels.size() + fixed_pairs.size(), ctx.workers, [&](std::size_t i) {
        Task t;
        Seed s{task_seed(ctx.seed, attack_base + i)};
        if (i < copy_levels.size()) {
            t.attack = prslab::energy_attack_experiment(setup, variants, shots, copy_levels[i], s);
        } else {
            const auto &pr = fixed_pairs[i - copy_levels.size()];
            t.resolved_at = prslab::copies_to_resolve(setup, variants[pr.first], variants[pr.second], shots, max_copies, s);
        }
        return t;
    });

    std::ostringstream vcsv, pcsv, rcsv;
    vcsv << "copies,variant,kind,l,m,T,exact,estimate,std_error,draw_spread,copies_used\n";
    pcsv << "copies,first,second,relation,difference,combined_se,resolved\n";
    rcsv << "first,second,exact_difference,copies_to_resolve,max_copies\n";
    auto relation = [&](std::size_t i, std::size_t j) -> std::string {
        for (const auto &pr : equal_pairs) {
            if (pr == std::make_pair(i, j)) {
                return "equal-l-equal-T";
            }
        }
        for (const auto &pr : volume_pairs) {
            if (pr == std::make_pair(i, j)) {
                return "equal-l-double-T";
            }
        }
        for (const auto &pr : fixed_pairs) {
            if (pr == std::make_pair(i, j)) {
                return "fixed";
            }
        }
        return "";
    };
    bool equal_unresolved = true;
    Json levels = Json::array();
    for (std::size_t k = 0; k < copy_levels.size(); ++k) {
        const auto &res = *tasks[k].attack;
        Json jv = Json::array();
        for (std::size_t v = 0; v < res.variants.size(); ++v) {
            const auto &e = res.variants[v];
            vcsv << copy_levels[k] << ',' << e.name << ',' << meta[v].kind << ',' << meta[v].l << ','
                 << num(meta[v].m) << ',' << num(e.volume_proxy) << ',' << num(e.exact) << ',' << num(e.estimate) << ','
                 << num(e.std_error) << ',' << num(e.draw_spread) << ',' << e.copies_used << '\n';
            jv.push_back(Json{{"variant", e.name},
                              {"T", e.volume_proxy},
                              {"exact", e.exact},
                              {"estimate", e.estimate},
                              {"std_error", e.std_error},
                              {"draw_spread", e.draw_spread}});
        }
        Json jp = Json::array();
        for (const auto &pv : res.pairs) {
            std::string rel = relation(pv.first, pv.second);
            if (rel.empty()) {
                continue;
            }
            pcsv << copy_levels[k] << ',' << res.variants[pv.first].name << ',' << res.variants[pv.second].name << ','
                 << rel << ',' << num(pv.difference) << ',' << num(pv.combined_se) << ',' << (pv.resolved ? 1 : 0)
                 << '\n';
            jp.push_back(Json{{"first", res.variants[pv.first].name},
                              {"second", res.variants[pv.second].name},
                              {"relation", rel},
                              {"difference", pv.difference},
                              {"combined_se", pv.combined_se},
                              {"resolved", pv.resolved}});
            if (rel == "equal-l-equal-T" && pv.resolved) {
                equal_unresolved = false;
            }
        }
        levels.push_back(Json{{"copies", copy_levels[k]}, {"variants", jv}, {"pairs", jp}});
    }
    const auto &exact_ref = *tasks[0].attack;
    Json jr = Json::array();
    std::optional<std::size_t> short_long;
    for (std::size_t i = 0; i < fixed_pairs.size(); ++i) {
        const auto [a, b] = fixed_pairs[i];
        const auto &at = tasks[copy_levels.size() + i].resolved_at;
        const double diff = exact_ref.variants[b].exact - exact_ref.variants[a].exact;
        rcsv << variants[a].name << ',' << variants[b].name << ',' << num(diff) << ','
             << (at ? std::to_string(*at) : "") << ',' << max_copies << '\n';
        jr.push_back(Json{{"first", variants[a].name},
                          {"second", variants[b].name},
                          {"exact_difference", diff},
                          {"copies_to_resolve", at ? Json(*at) : Json(nullptr)}});
        if (meta[a].l == l_short && meta[b].l == l_long && meta[a].m == m && meta[b].m == m) {
            short_long = at;
        }
    }
    out.results["t_scr"] = t_scr;
    out.results["tfd_energy"] = qcore::energy_expectation(setup.measured, setup.initial);
    out.results["shots_per_copy"] = shots;
    out.results["fixed_resolution"] = jr;
    out.results["levels"] = levels;
    if (l_short != l_long) {
        out.checks.push_back({"fixed_short_vs_long_resolved", short_long.has_value(),
                              short_long ? "resolved with " + std::to_string(*short_long) + " copies x " +
                                               std::to_string(shots) + " shots"
                                         : "not resolved within " + std::to_string(max_copies) + " copies"});
        out.headline["short_long_copies"] = short_long ? Json(*short_long) : Json("none");
    }
    out.checks.push_back({"randomized_equal_unresolved", equal_unresolved,
                          "equal-l, equal-T families at up to " + std::to_string(copies) + " copies x " +
                              std::to_string(shots) + " shots"});
    out.headline["t_scr"] = t_scr;
    out.files.push_back({"prs_energy_variants.csv", vcsv.str()});
    out.files.push_back({"prs_energy_pairs.csv", pcsv.str()});
    out.files.push_back({"prs_energy_resolution.csv", rcsv.str()});
    return out;
}

ExperimentOutput scrambling_time(const KeyValueConfig &cfg, const ExperimentContext &ctx) {
    Params p(cfg);
    const auto sizes = p.integers("n", "4,6,8", 2, qcore::kMaxQubits);
    const double g = p.real("g", 1.05, -100, 100);
    const double h = p.real("h", 0.5, -100, 100);
    const double threshold = p.real("threshold", 0.1, 1e-9, 1 - 1e-9);
    const double step = p.real("step", 0.25, 1e-6, 1e6);
    const double max_time = p.real("max_time", 0, 0, 1e6);
    const std::size_t trials = p.count("trials", 16, 1, 100000);
    ExperimentOutput out;
    out.effective = p.finish();

    struct Row {
        std::optional<double> t_scr;
        double final_otoc = 0;
    };
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        out.task_seeds.push_back(task_seed(ctx.seed, i));
    }
    auto rows = parallel_map<Row>(sizes.size(), ctx.workers, [&](std::size_t i) {
        Row r;
        auto ham = qcore::build_hamiltonian(static_cast<int>(sizes[i]), g, h);
        try {
            r.t_scr = qcore::scrambling_time(ham, threshold, Seed{out.task_seeds[i]}, {step, max_time, trials});
        } catch (const NoScramblingError &e) {
            r.final_otoc = e.final_otoc();
        }
        return r;
    });
    std::ostringstream csv;
    csv << "n,t_scr,found,final_otoc\n";
    Json arr = Json::array();
    bool all_found = true;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const auto &r = rows[i];
        all_found = all_found && r.t_scr.has_value();
        csv << sizes[i] << ',' << (r.t_scr ? num(*r.t_scr) : "") << ',' << (r.t_scr ? 1 : 0) << ','
            << (r.t_scr ? "" : num(r.final_otoc)) << '\n';
        arr.push_back(Json{{"n", sizes[i]}, {"t_scr", r.t_scr ? Json(*r.t_scr) : Json(nullptr)}});
        out.headline["t_scr_n" + std::to_string(sizes[i])] = r.t_scr ? Json(*r.t_scr) : Json("none");
    }
    out.results["scrambling_times"] = arr;
    out.checks.push_back({"all_scrambled", all_found, "OTOC dropped below threshold for every n"});
    out.files.push_back({"scrambling_time.csv", csv.str()});
    return out;
}

}  // namespace holoprs::benchcli::detail
