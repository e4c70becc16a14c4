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
#include <optional>
#include <sstream>

#include "holoprs/benchcli/experiments.h"
#include "holoprs/common/stats.h"
#include "holoprs/prslab/prslab.h"
#include "holoprs/weingarten/weingarten.h"

namespace holoprs::benchcli::detail {

namespace wg = holoprs::weingarten;

namespace {

std::string num(double v) {
    return format_double(v);
}

std::string frac(const Rational &q) {
    return to_fraction_string(q);
}

std::string index_list(const std::vector<std::int64_t> &v) {
    std::string out;
    for (auto x : v) {
        out += (out.empty() ? "" : " ") + std::to_string(x);
    }
    return out;
}

Rational closed_identity(std::int64_t d) {
    Rational q(1, static_cast<unsigned long>(d * d - 1));
    q.canonicalize();
    return q;
}

Rational closed_transposition(std::int64_t d) {
    Rational q(-1, static_cast<unsigned long>(d * (d * d - 1)));
    q.canonicalize();
    return q;
}

// i and j uniform; the conjugate indices are random rearrangements so the
// moment is generically nonzero.
wg::MomentSpec random_spec(int order, std::int64_t d, Rng &rng) {
    wg::MomentSpec s;
    for (int a = 0; a < order; ++a) {
        s.i.push_back(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(d))));
        s.j.push_back(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(d))));
    }
    auto shuffled = [&](std::vector<std::int64_t> v) {
        for (std::size_t k = v.size(); k > 1; --k) {
            std::swap(v[k - 1], v[rng.below(k)]);
        }
        return v;
    };
    s.i_conj = shuffled(s.i);
    s.j_conj = shuffled(s.j);
    return s;
}

}  // namespace

ExperimentOutput weingarten_verify(const KeyValueConfig &cfg, const ExperimentContext &ctx) {
    Params p(cfg);
    const int k_max = static_cast<int>(p.integer("k_max", 4, 1, 6));
    const long d_max = p.integer("d_max", 8, k_max, 64);
    const int dim_k_max = static_cast<int>(p.integer("dim_k_max", 8, 1, wg::kMaxWeight));
    const long closed_d_max = p.integer("closed_d_max", 8, 2, 1000);
    const std::size_t specs = p.count("mc_specs", 20, 0, 10000);
    const int order = static_cast<int>(p.integer("mc_order", 2, 1, 4));
    const long mc_d = p.integer("mc_d", 4, order, 64);
    const std::size_t mc_trials = p.count("mc_trials", 10000, 2, 100000000);
    const double se_mult = p.real("mc_se", 5, 0, 100);
    ExperimentOutput out;
    out.effective = p.finish();

    std::ostringstream exact_csv, values_csv, mc_csv;
    exact_csv << "check,k,d,value,expected,passed\n";
    values_csv << "k,cycle_type,d,value,value_double\n";

    struct IdRow {
        int k;
        long d;
        wg::IdentityCheck check;
    };
    std::vector<std::pair<int, long>> grid;
    for (int k = 1; k <= k_max; ++k) {
        for (long d = k; d <= d_max; ++d) {
            grid.emplace_back(k, d);
        }
    }
    auto ids = parallel_map<IdRow>(grid.size(), ctx.workers, [&](std::size_t i) {
        return IdRow{grid[i].first, grid[i].second, wg::gram_weingarten_identity(grid[i].first, grid[i].second)};
    });
    bool identity_ok = true;
    for (const auto &r : ids) {
        identity_ok = identity_ok && r.check.is_identity;
        exact_csv << "gram_times_weingarten," << r.k << ',' << r.d << ',' << frac(r.check.max_deviation) << ",0,"
                  << (r.check.is_identity ? 1 : 0) << '\n';
        for (const auto &lambda : wg::partitions(r.k)) {
            wg::CycleType cls(lambda);
            Rational v = wg::weingarten(cls, r.d);
            values_csv << r.k << ',' << cls.to_string() << ',' << r.d << ',' << frac(v) << ',' << num(v.get_d()) << '\n';
        }
    }
    bool dims_ok = true;
    for (int k = 1; k <= dim_k_max; ++k) {
        mpz_class sum = 0;
        for (const auto &lambda : wg::partitions(k)) {
            mpz_class dim(static_cast<unsigned long>(wg::dim_sk(lambda)));
            sum += dim * dim;
        }
        mpz_class fact = 1;
        for (int a = 2; a <= k; ++a) {
            fact *= a;
        }
        dims_ok = dims_ok && sum == fact;
        exact_csv << "sum_dim_squared," << k << ",," << sum.get_str() << ',' << fact.get_str() << ','
                  << (sum == fact ? 1 : 0) << '\n';
    }
    bool closed_ok = true;
    for (long d = 2; d <= closed_d_max; ++d) {
        Rational id = wg::weingarten(wg::CycleType(wg::Partition({1, 1})), d);
        Rational tr = wg::weingarten(wg::CycleType(wg::Partition({2})), d);
        bool a = id == closed_identity(d);
        bool b = tr == closed_transposition(d);
        closed_ok = closed_ok && a && b;
        exact_csv << "wg_k2_identity,2," << d << ',' << frac(id) << ',' << frac(closed_identity(d)) << ','
                  << (a ? 1 : 0) << '\n';
        exact_csv << "wg_k2_transposition,2," << d << ',' << frac(tr) << ',' << frac(closed_transposition(d)) << ','
                  << (b ? 1 : 0) << '\n';
    }

    struct McRow {
        wg::MomentSpec spec;
        Rational exact;
        wg::ComplexEstimate mc;
    };
    for (std::size_t s = 0; s < specs; ++s) {
        out.task_seeds.push_back(task_seed(ctx.seed, s));
    }
    auto rows = parallel_map<McRow>(specs, ctx.workers, [&](std::size_t s) {
        Rng rng(Seed{out.task_seeds[s]});
        McRow r;
        r.spec = random_spec(order, mc_d, rng);
        r.exact = wg::haar_moment_exact(r.spec, mc_d);
        Rng mc_rng = rng.split(1);
        r.mc = wg::haar_moment_mc(r.spec, mc_d, mc_trials, mc_rng);
        return r;
    });
    mc_csv << "spec,i,j,i_conj,j_conj,exact,exact_value,mc_real,mc_imag,std_error,deviation_in_se,passed\n";
    bool mc_ok = true;
    double worst = 0;
    for (std::size_t s = 0; s < rows.size(); ++s) {
        const auto &r = rows[s];
        double dev = std::abs(r.mc.mean - std::complex<double>(r.exact.get_d(), 0));
        bool ok = dev <= se_mult * r.mc.std_error + 1e-12;
        double z = r.mc.std_error > 0 ? dev / r.mc.std_error : 0;
        worst = std::max(worst, z);
        mc_ok = mc_ok && ok;
        mc_csv << s << ',' << index_list(r.spec.i) << ',' << index_list(r.spec.j) << ',' << index_list(r.spec.i_conj)
               << ',' << index_list(r.spec.j_conj) << ',' << frac(r.exact) << ',' << num(r.exact.get_d()) << ','
               << num(r.mc.mean.real()) << ',' << num(r.mc.mean.imag()) << ',' << num(r.mc.std_error) << ','
               << num(z) << ',' << (ok ? 1 : 0) << '\n';
    }

    out.results["identity_cases"] = ids.size();
    out.results["mc_specs"] = specs;
    out.results["mc_worst_deviation_in_se"] = worst;
    out.checks.push_back({"gram_weingarten_identity", identity_ok,
                          "k <= " + std::to_string(k_max) + ", k <= d <= " + std::to_string(d_max)});
    out.checks.push_back({"sum_dim_squared", dims_ok, "k <= " + std::to_string(dim_k_max)});
    out.checks.push_back({"k2_closed_forms", closed_ok, "2 <= d <= " + std::to_string(closed_d_max)});
    if (specs > 0) {
        out.checks.push_back({"exact_vs_mc", mc_ok, "worst deviation " + num(worst) + " SE, limit " + num(se_mult)});
    }
    out.headline["mc_worst_se"] = worst;
    out.files.push_back({"weingarten_exact.csv", exact_csv.str()});
    out.files.push_back({"weingarten_values.csv", values_csv.str()});
    out.files.push_back({"weingarten_mc.csv", mc_csv.str()});
    return out;
}

ExperimentOutput appendix_a(const KeyValueConfig &cfg, const ExperimentContext &ctx) {
    Params p(cfg);
    const int power = static_cast<int>(p.integer("K", 1, 1, 4));
    const auto dims = p.integers("d", "4", 2, 4096);
    const std::size_t trials = p.count("trials", 10000, 2, 100000000);
    const double se_mult = p.real("se_tolerance", power == 1 ? 3 : 5, 0, 100);
    const long fit_min_d = p.integer("fit_min_d", 16, 2, 4096);
    const double slope_target = p.real("slope", -1, -10, 10);
    const double slope_tol = p.real("slope_tol", 0.15, 0, 10);
    ExperimentOutput out;
    out.effective = p.finish();

    for (std::size_t i = 0; i < dims.size(); ++i) {
        out.task_seeds.push_back(task_seed(ctx.seed, i));
    }
    auto mcs = parallel_map<MeanEstimate>(dims.size(), ctx.workers, [&](std::size_t i) {
        return prslab::moment_power_overlap_mc(static_cast<std::size_t>(dims[i]), power, trials,
                                               Seed{out.task_seeds[i]});
    });

    std::ostringstream csv;
    csv << "d,K,trials,mc_mean,std_error,exact,exact_value,deviation_in_se\n";
    Json points = Json::array();
    std::vector<double> xs, ys;
    bool agree = true;
    std::string agree_detail;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        const long d = dims[i];
        const auto &e = mcs[i];
        std::optional<Rational> exact;
        if (power == 1) {
            exact = Rational(1, static_cast<unsigned long>(d + 1));
        } else if (power == 2 && d <= 8 && d >= 2 * power) {
            exact = wg::appendix_a_exact(power, d);
        }
        double z = 0;
        if (exact) {
            z = e.std_error > 0 ? std::abs(e.mean - exact->get_d()) / e.std_error : 0;
            bool ok = std::abs(e.mean - exact->get_d()) <= se_mult * e.std_error + 1e-15;
            agree = agree && ok;
            agree_detail += (agree_detail.empty() ? "" : "; ") + ("d=" + std::to_string(d) + ": " + num(z) + " SE");
        }
        csv << d << ',' << power << ',' << trials << ',' << num(e.mean) << ',' << num(e.std_error) << ','
            << (exact ? frac(*exact) : "") << ',' << (exact ? num(exact->get_d()) : "") << ','
            << (exact ? num(z) : "") << '\n';
        points.push_back(Json{{"d", d},
                              {"mc_mean", e.mean},
                              {"std_error", e.std_error},
                              {"exact", exact ? Json(frac(*exact)) : Json(nullptr)}});
        if (d >= fit_min_d && e.mean > 0) {
            xs.push_back(std::log(static_cast<double>(d)));
            ys.push_back(std::log(e.mean));
        }
        if (dims.size() == 1) {
            out.headline["mean"] = e.mean;
            out.headline["std_error"] = e.std_error;
        }
    }
    out.results["points"] = points;
    if (power == 1) {
        bool first_ok = true;
        for (std::int64_t d = 2; d <= 8; ++d) {
            first_ok = first_ok && wg::appendix_a_exact(1, d) == Rational(1, static_cast<unsigned long>(d + 1));
        }
        out.checks.push_back({"exact_first_moment", first_ok, "exact K=1 value equals 1/(d+1) for 2 <= d <= 8"});
    }
    if (!agree_detail.empty()) {
        out.checks.push_back({"mc_vs_exact", agree, agree_detail + ", limit " + num(se_mult) + " SE"});
    }
    if (xs.size() >= 2) {
        auto fit = fit_line(xs, ys);
        out.results["loglog_slope"] = fit.slope;
        out.results["loglog_r_squared"] = fit.r_squared;
        out.headline["slope"] = fit.slope;
        out.checks.push_back({"loglog_slope", std::abs(fit.slope - slope_target) <= slope_tol,
                              "slope " + num(fit.slope) + " vs " + num(slope_target) + " +- " + num(slope_tol)});
    }
    out.files.push_back({"appendix_a.csv", csv.str()});
    return out;
}

}  // namespace holoprs::benchcli::detail
