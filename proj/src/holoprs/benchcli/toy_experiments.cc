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

#include <cmath>
#include <map>
#include <sstream>

#include "holoprs/benchcli/experiments.h"
#include "holoprs/common/stats.h"
#include "holoprs/toyperm/toyperm.h"

namespace holoprs::benchcli::detail {

using toyperm::Hybrid;

ExperimentOutput toy_hybrids(const KeyValueConfig &cfg, const ExperimentContext &ctx) {
    Params p(cfg);
    const int n = static_cast<int>(p.integer("n", 3, 2, 3));
    const int depth = static_cast<int>(p.integer("l", 2, 1, n - 1));
    ExperimentOutput out;
    out.effective = p.finish();

    const std::vector<Hybrid> labels = {Hybrid::kA, Hybrid::kB, Hybrid::kC, Hybrid::kD, Hybrid::kE};
    auto tables = parallel_map<toyperm::JointTable>(labels.size(), ctx.workers, [&](std::size_t i) {
        return toyperm::enumerate_joint_distribution(labels[i], n, depth);
    });
    const Rational bound = toyperm::closeness_bound(n, depth);
    const Rational distinct = toyperm::distinct_fraction(n, depth);

    std::ostringstream csv;
    csv << "pair,tv,tv_value\n";
    std::map<std::string, Rational> tv;
    auto add_pair = [&](std::size_t a, std::size_t b) {
        std::string name{toyperm::hybrid_label(labels[a]), toyperm::hybrid_label(labels[b])};
        tv[name] = toyperm::tv_distance(tables[a], tables[b]);
        csv << name << ',' << to_fraction_string(tv[name]) << ',' << format_double(tv[name].get_d()) << '\n';
        out.results["tv_" + name] = to_fraction_string(tv[name]);
    };
    add_pair(0, 1);
    add_pair(1, 2);
    add_pair(2, 3);
    add_pair(3, 4);
    add_pair(0, 4);
    out.results["closeness_bound"] = to_fraction_string(bound);
    out.results["distinct_fraction"] = to_fraction_string(distinct);
    out.results["tree_nodes"] = (std::size_t{1} << (depth + 1)) - 1;
    out.results["permutations"] = tables[0].counts.size() >> n;

    // Marginal law of the challenge string y under each hybrid.
    std::ostringstream marg;
    marg << "hybrid,y,probability,probability_value\n";
    const std::size_t size = std::size_t{1} << n;
    for (std::size_t h = 0; h < labels.size(); ++h) {
        std::vector<std::uint64_t> sums(size, 0);
        for (std::size_t i = 0; i < tables[h].counts.size(); ++i) {
            sums[i % size] += tables[h].counts[i];
        }
        for (std::size_t y = 0; y < size; ++y) {
            Rational q = Rational(mpz_class(static_cast<unsigned long>(sums[y]))) / tables[h].denominator;
            q.canonicalize();
            marg << toyperm::hybrid_label(labels[h]) << ',' << y << ',' << to_fraction_string(q) << ','
                 << format_double(q.get_d()) << '\n';
        }
    }

    out.checks.push_back({"tv_CD_zero", tv["CD"] == 0, "TV(C,D) = " + to_fraction_string(tv["CD"])});
    out.checks.push_back({"closeness_AB", tv["AB"] <= bound,
                          "TV(A,B) = " + to_fraction_string(tv["AB"]) + " <= " + to_fraction_string(bound)});
    out.checks.push_back({"closeness_DE", tv["DE"] <= bound,
                          "TV(D,E) = " + to_fraction_string(tv["DE"]) + " <= " + to_fraction_string(bound)});
    out.headline["tv_AB"] = to_fraction_string(tv["AB"]);
    out.headline["tv_CD"] = to_fraction_string(tv["CD"]);
    out.headline["tv_DE"] = to_fraction_string(tv["DE"]);
    out.headline["bound"] = to_fraction_string(bound);
    out.files.push_back({"toy_hybrids.csv", csv.str()});
    out.files.push_back({"toy_hybrids_marginals.csv", marg.str()});
    return out;
}

ExperimentOutput toy_distinguish(const KeyValueConfig &cfg, const ExperimentContext &ctx) {
    Params p(cfg);
    const int n = static_cast<int>(p.integer("n", 16, 4, toyperm::kMaxBits));
    const auto depths = p.integers("l", "4,6,8,10", 0, 24);
    const auto strategies = p.choices("strategies", "meet-in-middle,forward-enum,zero-query", toyperm::strategy_names());
    const std::size_t trials = p.count("trials", 200, 1, 1000000);
    const double min_success = p.real("min_success", 0.99, 0, 1);
    const double mim_slope = p.real("mim_slope", 0.5, -10, 10);
    const double fwd_slope = p.real("forward_slope", 1.0, -10, 10);
    const double slope_tol = p.real("slope_tol", 0.1, 0, 10);
    const double baseline = p.real("baseline", 0.5, 0, 1);
    const double baseline_tol = p.real("baseline_tol", 0.05, 0, 1);
    for (long l : depths) {
        if (l >= n - 1) {
            invalid("l", "depth " + std::to_string(l) + " needs n > l + 1");
        }
        for (const auto &s : strategies) {
            if (s == "meet-in-middle" && l < 2) {
                invalid("l", "meet-in-middle needs l >= 2");
            }
        }
    }
    ExperimentOutput out;
    out.effective = p.finish();

    // One seed per (depth, trial); strategies share them.
    for (std::size_t t = 0; t < depths.size() * trials; ++t) {
        out.task_seeds.push_back(task_seed(ctx.seed, t));
    }
    const std::size_t per_strategy = depths.size() * trials;
    auto records = parallel_map<toyperm::TrialRecord>(strategies.size() * per_strategy, ctx.workers,
                                                      [&](std::size_t i) {
                                                          const auto &s = strategies[i / per_strategy];
                                                          std::size_t rest = i % per_strategy;
                                                          int l = static_cast<int>(depths[rest / trials]);
                                                          std::size_t t = rest % trials;
                                                          return toyperm::play_trial(s, n, l, t, Seed{out.task_seeds[rest]});
                                                      });

    std::ostringstream csv, table;
    csv << "strategy,l,trial,hybrid,decision,correct,fwd_queries,inv_queries\n";
    table << "strategy,l,trials,success_rate,ci_low,ci_high,mean_queries,log2_mean_queries\n";
    Json per = Json::object();
    for (std::size_t s = 0; s < strategies.size(); ++s) {
        Json js;
        std::vector<double> xs, ys;
        std::size_t pooled_ok = 0;
        Json rows = Json::array();
        for (std::size_t li = 0; li < depths.size(); ++li) {
            auto first = records.begin() + static_cast<std::ptrdiff_t>(s * per_strategy + li * trials);
            std::vector<toyperm::TrialRecord> chunk(first, first + static_cast<std::ptrdiff_t>(trials));
            for (const auto &r : chunk) {
                csv << strategies[s] << ',' << depths[li] << ',' << r.trial << ',' << toyperm::hybrid_label(r.hybrid)
                    << ',' << (r.decision ? 1 : 0) << ',' << (r.correct ? 1 : 0) << ',' << r.forward_queries << ','
                    << r.inverse_queries << '\n';
            }
            auto g = toyperm::collect_game(std::move(chunk));
            pooled_ok += g.successes;
            const double mean_q = g.mean_queries();
            const auto ci = g.success_interval();
            table << strategies[s] << ',' << depths[li] << ',' << g.trials << ',' << format_double(g.success_rate())
                  << ',' << format_double(ci.low) << ',' << format_double(ci.high) << ',' << format_double(mean_q)
                  << ',' << (mean_q > 0 ? format_double(std::log2(mean_q)) : "") << '\n';
            rows.push_back(Json{{"l", depths[li]},
                                {"success_rate", g.success_rate()},
                                {"success_interval", {ci.low, ci.high}},
                                {"mean_queries", mean_q}});
            if (strategies[s] == "meet-in-middle") {
                out.checks.push_back({"mim_success_l" + std::to_string(depths[li]), g.success_rate() >= min_success,
                                      "success " + format_double(g.success_rate()) + " >= " + format_double(min_success)});
            }
            if (mean_q > 0) {
                xs.push_back(static_cast<double>(depths[li]));
                ys.push_back(std::log2(mean_q));
            }
        }
        js["by_depth"] = rows;
        const double pooled = static_cast<double>(pooled_ok) / static_cast<double>(per_strategy);
        js["pooled_success_rate"] = pooled;
        const bool fit_ok = xs.size() >= 2 && xs.size() == depths.size();
        if (fit_ok) {
            auto fit = fit_line(xs, ys);
            js["log2_query_slope"] = fit.slope;
            js["log2_query_r_squared"] = fit.r_squared;
            out.headline[strategies[s] + "_slope"] = fit.slope;
            double target = strategies[s] == "meet-in-middle" ? mim_slope : fwd_slope;
            if (strategies[s] != "zero-query") {
                out.checks.push_back({strategies[s] + "_slope", std::abs(fit.slope - target) <= slope_tol,
                                      "slope " + format_double(fit.slope) + " vs " + format_double(target) + " +- " +
                                          format_double(slope_tol)});
            }
        }
        if (strategies[s] == "zero-query") {
            out.headline["zero_query_success"] = pooled;
            out.checks.push_back({"zero_query_baseline", std::abs(pooled - baseline) <= baseline_tol,
                                  "pooled success " + format_double(pooled) + " vs " + format_double(baseline) +
                                      " +- " + format_double(baseline_tol)});
        }
        per[strategies[s]] = js;
    }
    out.results["strategies"] = per;
    out.files.push_back({"toy_distinguish.csv", csv.str()});
    out.files.push_back({"toy_distinguish_summary.csv", table.str()});
    return out;
}

}  // namespace holoprs::benchcli::detail
