#include "a2lab/lab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <sstream>

namespace a2lab::lab {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string now_string() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void push_config(ExperimentReport& rep, const LabConfig& cfg) {
    std::ostringstream as;
    for (std::size_t i = 0; i < cfg.a_list.size(); ++i) as << (i ? "," : "") << cfg.a_list[i];
    rep.config.emplace_back("a_list", as.str());
    rep.config.emplace_back("tol", fmt(cfg.tol));
    rep.config.emplace_back("budget", fmt(static_cast<double>(cfg.budget)));
    rep.config.emplace_back("seed", fmt(static_cast<double>(cfg.seed)));
    rep.config.emplace_back("jmax", fmt(static_cast<double>(cfg.jmax)));
    rep.config.emplace_back("kmax", fmt(static_cast<double>(cfg.kmax)));
    rep.config.emplace_back("depth", fmt(cfg.depth));
    rep.timestamp = now_string();
}

A2SearchConfig a2_config(const LabConfig& cfg) {
    A2SearchConfig sc;
    sc.dyadic_depth = cfg.depth;
    if (cfg.budget > 0) {
        sc.grid = static_cast<std::size_t>(cfg.budget);
        sc.refinement_depth = std::max(32, static_cast<int>(cfg.budget / 64));
    }
    return sc;
}

void fit_main(ExperimentReport& rep) {
    if (rep.rows.size() < 3) return;
    std::vector<double> xs, ys;
    for (const ExperimentRow& r : rep.rows) {
        xs.push_back(1.0 / r.alpha);
        ys.push_back(std::exp2(r.quantity_log2));
    }
    rep.fit = fit_exponent(xs, ys);
}

void fit_extra(ExperimentReport& rep, const std::string& name, const std::vector<double>& log2s) {
    if (log2s.size() < 3) return;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < log2s.size(); ++i) {
        xs.push_back(1.0 / rep.rows[i].alpha);
        ys.push_back(std::exp2(log2s[i]));
    }
    rep.extra_fits[name] = fit_exponent(xs, ys);
}

long auto_cap(double per_alpha, double alpha, long cap) {
    const double v = std::ceil(per_alpha / alpha);
    return std::min(cap, static_cast<long>(v));
}

// ||f||^2_{L2(w)} for piecewise-power f and w sharing offsets
LogPos l2_norm_sq_power(const PiecewisePowerFn& f, const PiecewisePowerFn& w) {
    const PiecewisePowerFn f2w = multiply_power(pow_scalar(f, 2.0), w);
    return f2w.integral(f2w.support());
}

} // namespace

std::vector<int> default_a_list(const std::string& experiment) {
    if (experiment == "char") return {4, 5, 6, 7, 8, 9, 10};
    if (experiment == "weak-lower") return {5, 6, 7, 8, 9, 10};
    if (experiment == "strong-lower") return {6, 7, 8, 9, 10};
    if (experiment == "chain") return {4, 5, 6, 7, 8, 9};
    throw std::invalid_argument("default_a_list: unknown experiment " + experiment);
}

ExperimentReport exp_char(const LabConfig& cfg) {
    ExperimentReport rep;
    rep.name = "char";
    push_config(rep, cfg);
    auto& dyadic_series = rep.extra_series["dyadic_log2"];
    auto& converged_series = rep.extra_series["converged"];

    for (int a : cfg.a_list) {
        const auto t0 = Clock::now();
        const WeightPair pair = lacunary_pair(a, cfg.tol);
        const A2Report a2 = a2_search(pair, a2_config(cfg));
        ExperimentRow row;
        row.a = a;
        row.alpha = pair.alpha;
        row.a2_log2 = a2.value.log2_value();
        row.quantity_log2 = a2.value.log2_value();
        row.oracle_log2 = a2_product(pair, Interval(0.0, 1.0)).log2_value();
        row.cpu_ms = ms_since(t0);
        rep.rows.push_back(row);
        dyadic_series.push_back(a2.dyadic_value.log2_value());
        converged_series.push_back(a2.converged ? 1.0 : 0.0);
    }
    fit_main(rep);
    return rep;
}

ExperimentReport exp_weak_lower(const LabConfig& cfg) {
    ExperimentReport rep;
    rep.name = "weak-lower";
    push_config(rep, cfg);
    auto& phi_series = rep.extra_series["phi_ratio_sq_log2"];
    auto& best_n_series = rep.extra_series["best_n"];
    auto& mdev_series = rep.extra_series["m_const_dev_log2"];
    auto& c_half = rep.extra_series["explicit_path_c0.5_log2"];
    auto& c_one = rep.extra_series["explicit_path_c1_log2"];
    auto& c_two = rep.extra_series["explicit_path_c2_log2"];
    std::vector<double> oracle_log2s;

    const SupSearchConfig scfg;
    for (int a : cfg.a_list) {
        const auto t0 = Clock::now();
        const double alpha = std::ldexp(1.0, -a);
        const WeightPair pair = power_pair(alpha);
        const A2Report a2 = a2_search(pair, a2_config(cfg));

        const PiecewisePowerFn sigma1 = multiply_step(pair.sigma, indicator(Interval(0.0, 1.0)));
        const long kmax = cfg.kmax > 0 ? cfg.kmax : auto_cap(6.0, alpha, 65536) + 8;

        // M_k = M_{[0,2^-k)}(sigma 1): searched on a chain prefix, verified
        // constant in k, then extended by that constant
        const long search_k = std::min<long>(kmax, 32);
        std::optional<MaximalResult> seedres;
        LogPos M;
        double mdev = 0.0;
        for (long k = 1; k <= search_k; ++k) {
            const Interval B(0.0, std::ldexp(1.0, static_cast<int>(-k)));
            const MaximalResult r = maximal_over_containing(sigma1, B, scfg, seedres);
            seedres = r;
            if (k == 1)
                M = r.value;
            else
                mdev = std::max(mdev, std::fabs(r.value.log2_value() - M.log2_value()));
        }

        const LogPos strong_sq = l2_norm_sq_power(sigma1, pair.w);

        // weak norm squared: max_n (n M)^2 w([0, 2^-n)), exact level scan
        const LogPos ratio_w = LogPos::two_pow(-alpha);
        const LogPos wtail0 = tail_integrals(pair, 0).w_mass;
        auto scan = [&](const LogPos& m_val) {
            LogPos best;
            long best_n = 0;
            LogPos wt = wtail0;
            for (long n = 1; n <= kmax; ++n) {
                wt *= ratio_w;
                const LogPos level = LogPos::from_value(static_cast<double>(n)) * m_val;
                const LogPos cand = level * level * wt;
                if (cand > best) {
                    best = cand;
                    best_n = n;
                }
            }
            return std::pair<LogPos, long>(best, best_n);
        };
        const auto [weak_sq, best_n] = scan(M);
        const LogPos ratio_sq = weak_sq / strong_sq;

        // analytic oracle: M replaced by the closed-form <sigma 1>_{[0,1)}
        const LogPos m_oracle = LogPos::one() / LogPos::from_value(2.0 - alpha);
        const LogPos ratio_sq_oracle = scan(m_oracle).first / strong_sq;

        ExperimentRow row;
        row.a = a;
        row.alpha = alpha;
        row.a2_log2 = a2.value.log2_value();
        row.quantity_log2 = ratio_sq.log2_value();
        row.oracle_log2 = ratio_sq_oracle.log2_value();
        row.cpu_ms = ms_since(t0);
        rep.rows.push_back(row);

        phi_series.push_back(ratio_sq.log2_value() - 2.8 * a2.value.log2_value());
        best_n_series.push_back(static_cast<double>(best_n));
        mdev_series.push_back(mdev);
        // the explicit level-choice path: level n_c = c/alpha, set [0, 2^-n_c)
        for (const auto& [c, series] :
             {std::pair<double, std::vector<double>*>{0.5, &c_half}, {1.0, &c_one}, {2.0, &c_two}}) {
            const long n_c = std::max<long>(1, std::llround(c / alpha));
            const LogPos level = LogPos::from_value(static_cast<double>(n_c)) * M;
            const LogPos val = level * level * wtail0 *
                               LogPos::two_pow(-alpha * static_cast<double>(n_c)) / strong_sq;
            series->push_back(val.log2_value());
        }
    }
    fit_main(rep);
    std::vector<double> oracle_col;
    for (const ExperimentRow& r : rep.rows) oracle_col.push_back(*r.oracle_log2);
    fit_extra(rep, "oracle", oracle_col);
    return rep;
}

ExperimentReport exp_strong_lower(const LabConfig& cfg) {
    ExperimentReport rep;
    rep.name = "strong-lower";
    push_config(rep, cfg);
    auto& jdev_series = rep.extra_series["m_j_dev_log2"];
    auto& kdev_series = rep.extra_series["m_scaling_dev_log2"];
    auto& halfdev_series = rep.extra_series["jmax_double_dev_log2"];
    auto& m_series = rep.extra_series["m_log2"];

    const SupSearchConfig scfg;
    for (int a : cfg.a_list) {
        const auto t0 = Clock::now();
        const double alpha = std::ldexp(1.0, -a);
        const WeightPair pair = lacunary_pair(a, cfg.tol);
        const A2Report a2 = a2_search(pair, a2_config(cfg));
        const Integrand& sigma = pair.exact_sigma();

        // one genuine search on the widest level-1 band; the maximizer
        // [0, 1/2) contains every band, making M j-independent
        const Interval band1(std::ldexp(1.0 - alpha, -1), 0.5);
        const MaximalResult m1 = maximal_over_containing(sigma, band1, scfg);
        const LogPos M = m1.value;

        double jdev = 0.0;
        std::optional<MaximalResult> seedres = m1;
        for (int d = 1; d <= 6; ++d) {
            if (a + 1 + d - 1 > 50) break;
            const double lo = 0.5 - std::ldexp(1.0, -(a + 1 + d));
            const MaximalResult md =
                maximal_over_containing(sigma, Interval(lo, 0.5), scfg, seedres);
            jdev = std::max(jdev, std::fabs(md.value.log2_value() - M.log2_value()));
        }
        // level-2 probe of the exact scaling M_{k+1} = 2^{1-alpha} M_k
        const Interval band2(std::ldexp(1.0 - alpha, -2), 0.25);
        const MaximalResult m2 = maximal_over_containing(sigma, band2, scfg);
        const double kdev =
            std::fabs(m2.value.log2_value() - (M.log2_value() + (1.0 - alpha)));

        const long N = cfg.jmax > 0 ? cfg.jmax : auto_cap(55.0, alpha, 131072) + 16;
        const long kmax = cfg.kmax > 0 ? cfg.kmax : auto_cap(4.0, alpha, 65536);
        const LogPos r = LogPos::two_pow(-alpha);
        const LogPos one_minus_r = one_minus_pow(r, 1.0);
        const LogPos Ts0 = tail_integrals(pair, 0).sigma_mass;

        // level-1 cell masses: 2^{-2(1-alpha)} 2^{-(a+1)alpha} 2^{-i alpha};
        // value on cell i is (i+1) M
        auto level1_value = [&](long n_cells) {
            LogPos cell_sum;
            LogPos rpow = LogPos::one();
            for (long i = 0; i < n_cells; ++i) {
                const LogPos count = LogPos::from_value(static_cast<double>(i + 1));
                cell_sum += count * count * rpow;
                rpow *= r;
            }
            const LogPos tip = LogPos::from_value(static_cast<double>(n_cells + 1)).pow(2.0) *
                               LogPos::two_pow(-alpha * static_cast<double>(n_cells));
            const LogPos base = LogPos::two_pow(-2.0 * (1.0 - alpha)) *
                                LogPos::two_pow(-static_cast<double>(a + 1) * alpha);
            return M * M * base * (one_minus_r * cell_sum + tip);
        };
        const LogPos I1 = level1_value(N);
        // exact level recursion: level-k contribution is 2^{-alpha(k-1)} I1
        const LogPos ksum = one_minus_pow(r, static_cast<double>(kmax)) / one_minus_r;
        const LogPos R = I1 * ksum / Ts0;

        // independent oracle: change of variables onto y^{alpha-1} with the
        // closed form sum_{n>=0} (n+1)^2 r^n = (1+r)/(1-r)^3, analytic M
        const LogPos G = (LogPos::one() + r) * LogPos::two_pow(a) /
                         (one_minus_r * one_minus_r);
        const LogPos R_oracle = LogPos::two_pow(-(1.0 + alpha) * static_cast<double>(a)) * G *
                                Ts0 * r * one_minus_pow(r, static_cast<double>(kmax)) /
                                one_minus_r;

        // truncation probe: doubling the band depth must not move R
        const LogPos R_deep = level1_value(2 * N) * ksum / Ts0;
        const double halfdev = std::fabs(R.log2_value() - R_deep.log2_value());

        ExperimentRow row;
        row.a = a;
        row.alpha = alpha;
        row.a2_log2 = a2.value.log2_value();
        row.quantity_log2 = R.log2_value();
        row.oracle_log2 = R_oracle.log2_value();
        row.cpu_ms = ms_since(t0);
        rep.rows.push_back(row);
        jdev_series.push_back(jdev);
        kdev_series.push_back(kdev);
        halfdev_series.push_back(halfdev);
        m_series.push_back(M.log2_value());
    }
    fit_main(rep);
    return rep;
}

ExperimentReport exp_chain(const LabConfig& cfg) {
    ExperimentReport rep;
    rep.name = "chain";
    push_config(rep, cfg);
    auto& infl_sigma = rep.extra_series["inflation_sigma_log2"];
    auto& infl_one = rep.extra_series["inflation_one_log2"];
    auto& ratio_one = rep.extra_series["opratio_one_log2"];
    auto& dom_sigma = rep.extra_series["domination_C_sigma"];
    auto& dom_one = rep.extra_series["domination_C_one"];
    auto& meanpres = rep.extra_series["mean_preservation_dev_log2"];

    SupSearchConfig scfg;
    scfg.refinement_depth = 48;
    scfg.breakpoint_budget = 64;

    for (int a : cfg.a_list) {
        const auto t0 = Clock::now();
        const double alpha = std::ldexp(1.0, -a);
        const WeightPair pair = power_pair(alpha);
        const A2Report a2 = a2_search(pair, a2_config(cfg));

        const long kmax = cfg.kmax > 0 ? std::min<long>(cfg.kmax, 1000)
                                       : std::min<long>(auto_cap(6.0, alpha, 992) + 8, 1000);
        const std::vector<Interval> chain = nested_family(kmax);
        const SparseFamily fam = make_sparse_family(chain, 0.5);

        const PiecewisePowerFn one_fn(
            {Piece{Interval(0.0, 1.0), PowerTerm{LogPos::one(), 0.0, 0.0, Orientation::ascending}}});
        const PiecewisePowerFn sigma1 =
            multiply_step(pair.sigma, indicator(Interval(0.0, 1.0)));

        double row_quantity = 0.0;
        for (int which = 0; which < 2; ++which) {
            const PiecewisePowerFn& g = which == 0 ? sigma1 : one_fn;

            const StrongApplyResult strong = strong_sparse_apply(fam, g, scfg);
            const ChainState st = flatten_chain(g, chain, scfg);
            const StepFn flat_overlay = sparse_apply(st.projections, st.flattened);

            const LogPos op_sq = l2w_norm_sq(strong.output, pair.w);
            const LogPos g_sq = l2_norm_sq_power(g, pair.w);
            const LogPos gt_sq = l2_norm_sq_power(st.flattened, pair.w);
            const double opratio_log2 = 0.5 * (op_sq.log2_value() - g_sq.log2_value());
            const double inflation_log2 = gt_sq.log2_value() - g_sq.log2_value();

            // pointwise domination on a geometric grid spanning all levels
            double C = 0.0;
            for (int m = 0; m < 10000; ++m) {
                const double e = -static_cast<double>(kmax) * (m + 0.5) / 10000.0;
                const double x = std::exp2(e);
                const LogPos num = strong.output(x);
                if (num.is_zero()) continue;
                const LogPos den = flat_overlay(x);
                if (den.is_zero()) {
                    C = std::numeric_limits<double>::infinity();
                    break;
                }
                C = std::max(C, std::exp2(num.log2_value() - den.log2_value()));
            }

            // mean preservation over every projection
            double mp = 0.0;
            for (const Interval& A : st.projections) {
                const LogPos lhs = st.flattened.integral(A);
                const LogPos rhs = g.integral(A);
                if (lhs.is_zero() && rhs.is_zero()) continue;
                mp = std::max(mp, std::fabs(lhs.log2_value() - rhs.log2_value()));
            }

            if (which == 0) {
                row_quantity = opratio_log2;
                infl_sigma.push_back(inflation_log2);
                dom_sigma.push_back(C);
                meanpres.push_back(mp);
            } else {
                ratio_one.push_back(opratio_log2);
                infl_one.push_back(inflation_log2);
                dom_one.push_back(C);
            }
        }

        ExperimentRow row;
        row.a = a;
        row.alpha = alpha;
        row.a2_log2 = a2.value.log2_value();
        row.quantity_log2 = row_quantity;
        row.cpu_ms = ms_since(t0);
        rep.rows.push_back(row);
    }
    fit_main(rep);
    fit_extra(rep, "opratio_one", ratio_one);
    // inflation can be exactly 1 (log2 = 0); shift by 1 to keep the fit legal
    {
        std::vector<double> shifted;
        for (double v : infl_sigma) shifted.push_back(std::log2(std::exp2(v) + 1.0));
        fit_extra(rep, "inflation_sigma_plus1", shifted);
        shifted.clear();
        for (double v : infl_one) shifted.push_back(std::log2(std::exp2(v) + 1.0));
        fit_extra(rep, "inflation_one_plus1", shifted);
    }
    return rep;
}

namespace {

std::string slope_detail(const std::optional<FitResult>& fit) {
    if (!fit) return "no fit (need >= 3 rows)";
    std::ostringstream os;
    os << "slope=" << fit->slope << " intercept=" << fit->intercept
       << " residual=" << fit->residual;
    return os.str();
}

double total_ms(const ExperimentReport& rep) {
    double ms = 0.0;
    for (const ExperimentRow& r : rep.rows) ms += r.cpu_ms;
    return ms;
}

} // namespace

std::vector<CriterionResult> evaluate_char(const ExperimentReport& rep) {
    std::vector<CriterionResult> out;
    const bool slope_ok = rep.fit && std::fabs(rep.fit->slope - 1.0) <= 0.05;
    out.push_back({"A2 scaling: slope of log2[w]_{A2} vs log2(1/alpha) = 1.0 +- 0.05",
                   slope_ok, slope_detail(rep.fit)});
    const double ms = total_ms(rep);
    out.push_back({"A2 sweep runtime < 60 s", ms < 60000.0, "total " + fmt(ms) + " ms"});
    return out;
}

std::vector<CriterionResult> evaluate_strong(const ExperimentReport& rep) {
    std::vector<CriterionResult> out;
    const bool slope_ok = rep.fit && std::fabs(rep.fit->slope - 4.0) <= 0.2;
    out.push_back({"strong sharpness: slope of log2 R vs log2(1/alpha) = 4.0 +- 0.2", slope_ok,
                   slope_detail(rep.fit)});
    double worst = 0.0;
    for (const ExperimentRow& r : rep.rows)
        if (r.a <= 8 && r.oracle_log2)
            worst = std::max(worst, std::fabs(r.quantity_log2 - *r.oracle_log2));
    out.push_back({"strong pipeline vs analytic oracle: |log2 ratio| <= 0.02 for a <= 8",
                   worst <= 0.02, "worst |log2(R/R_oracle)| = " + fmt(worst)});
    const double ms = total_ms(rep);
    out.push_back({"strong sweep runtime < 120 s", ms < 120000.0, "total " + fmt(ms) + " ms"});
    return out;
}

std::vector<CriterionResult> evaluate_weak(const ExperimentReport& rep) {
    std::vector<CriterionResult> out;
    const bool slope_ok = rep.fit && std::fabs(rep.fit->slope - 3.0) <= 0.2;
    out.push_back({"weak sharpness: slope of squared weak-to-strong ratio = 3.0 +- 0.2",
                   slope_ok, slope_detail(rep.fit)});
    bool monotone = true;
    const auto it = rep.extra_series.find("phi_ratio_sq_log2");
    if (it == rep.extra_series.end() || it->second.size() < 2) {
        monotone = false;
    } else {
        for (std::size_t i = 0; i + 1 < it->second.size(); ++i)
            monotone = monotone && it->second[i + 1] > it->second[i];
    }
    out.push_back({"weak ratio against phi(x)=x^{1.4} increases across the sweep", monotone,
                   it != rep.extra_series.end() && !it->second.empty()
                       ? "ratio_sq/[w]^{2.8} log2 from " + fmt(it->second.front()) + " to " +
                             fmt(it->second.back())
                       : "series missing"});
    return out;
}

std::vector<CriterionResult> evaluate_chain(const ExperimentReport& rep) {
    std::vector<CriterionResult> out;
    const bool op_ok = rep.fit && rep.fit->slope <= 1.6;
    const auto one_fit = rep.extra_fits.find("opratio_one");
    const bool op_one_ok = one_fit == rep.extra_fits.end() || one_fit->second.slope <= 1.6;
    out.push_back({"chain operator-ratio slope <= 1.6", op_ok && op_one_ok,
                   slope_detail(rep.fit) +
                       (one_fit != rep.extra_fits.end()
                            ? " (g=1: slope=" + fmt(one_fit->second.slope) + ")"
                            : "")});

    const auto inf_s = rep.extra_fits.find("inflation_sigma_plus1");
    const auto inf_o = rep.extra_fits.find("inflation_one_plus1");
    const bool infl_ok = (inf_s == rep.extra_fits.end() || inf_s->second.slope <= 1.1) &&
                         (inf_o == rep.extra_fits.end() || inf_o->second.slope <= 1.1);
    out.push_back({"chain flattening inflation slope <= 1.1", infl_ok,
                   inf_s != rep.extra_fits.end() ? "slope=" + fmt(inf_s->second.slope)
                                                 : "fit missing"});

    double cmax = 0.0;
    for (const std::string& key : {std::string("domination_C_sigma"), std::string("domination_C_one")}) {
        const auto it = rep.extra_series.find(key);
        if (it != rep.extra_series.end())
            for (double c : it->second) cmax = std::max(cmax, c);
    }
    out.push_back({"chain pointwise domination A*g <= C A(g~) with one finite C",
                   cmax > 0.0 && std::isfinite(cmax), "realized C = " + fmt(cmax)});
    return out;
}

} // namespace a2lab::lab
