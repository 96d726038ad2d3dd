#include "a2lab/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace a2lab {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;

struct ProductBest {
    LogPos value;
    Interval attaining{0.0, 0.0};
    std::size_t evaluations = 0;

    void offer(const LogPos& v, Interval iv) {
        ++evaluations;
        if (v > value || (v == value && iv.length() < attaining.length())) {
            value = v;
            attaining = iv;
        }
    }
};

class ProductProbe {
public:
    ProductProbe(const WeightPair& pair, ProductBest& best) : pair_(&pair), best_(&best) {}

    LogPos operator()(double lo, double hi) {
        if (!(hi > lo)) return LogPos();
        const Interval iv(lo, hi);
        const LogPos len = LogPos::from_value(hi - lo);
        const LogPos p =
            pair_->exact_w().integral(iv) * pair_->exact_sigma().integral(iv) / (len * len);
        best_->offer(p, iv);
        return p;
    }

private:
    const WeightPair* pair_;
    ProductBest* best_;
};

template <typename Fn>
void golden_max(Fn&& fn, double a, double b, int iters) {
    if (!(b > a)) return;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    LogPos fc = fn(c), fd = fn(d);
    for (int i = 0; i < iters; ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = fn(d);
        }
    }
}

// tails [0, 2^-k) and dyadic intervals inside the base cell; deeper dyadic
// copies repeat these products exactly by self-similar scaling. Generations
// far below the spike width land inside single power branches whose products
// stay below the tail product, so the sweep is capped there.
void dyadic_scan(const WeightPair& pair, int depth, ProductProbe& probe) {
    for (int k = 0; k <= std::min(depth, 24); ++k) probe(0.0, std::ldexp(1.0, -k));
    const int cap = pair.kind == WeightKind::lacunary ? pair.a + 12 : 24;
    for (int g = 1; g <= std::min(depth, cap); ++g) {
        const double h = std::ldexp(1.0, -g);
        for (long j = 1L << (g - 1); j < (1L << g); ++j)
            probe(static_cast<double>(j) * h, static_cast<double>(j + 1) * h);
    }
}

A2Report a2_search_once(const WeightPair& pair, const A2SearchConfig& cfg) {
    ProductBest best;
    ProductProbe probe(pair, best);

    dyadic_scan(pair, cfg.dyadic_depth, probe);
    const LogPos dyadic = best.value;

    // [0, v) sweeps: scale invariance of the product makes one well-resolved
    // octave exhaustive, so v runs over the top octave of the support plus
    // fine grids between the weight's own breakpoints there (the product
    // peaks just inside spike regions, which sit between breakpoints)
    const double top = pair.exact_sigma().support().hi;
    for (std::size_t i = 1; i <= cfg.grid; ++i)
        probe(0.0, top * (0.5 + 0.5 * static_cast<double>(i) / static_cast<double>(cfg.grid)));
    std::vector<double> bps{top / 8.0, top / 4.0, top / 2.0, top};
    pair.exact_sigma().collect_breakpoints(Interval(top / 8.0, top), 64, bps);
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    const std::size_t fine = std::max<std::size_t>(cfg.grid / 16, 32);
    for (std::size_t b = 0; b + 1 < bps.size(); ++b)
        for (std::size_t i = 0; i <= fine; ++i)
            probe(0.0, bps[b] + (bps[b + 1] - bps[b]) * static_cast<double>(i) /
                                    static_cast<double>(fine));
    // band-shaped candidates at the first representable levels
    if (pair.kind == WeightKind::lacunary) {
        for (long k = 1; k <= 2; ++k) {
            const double hi = std::ldexp(1.0, static_cast<int>(-k));
            for (long j = pair.a + k; j - k <= 50 && j <= pair.a + k + 40; ++j)
                probe(hi - std::ldexp(1.0, static_cast<int>(-j)), hi);
        }
    }

    // golden refinement of the right endpoint of [0, v), then both endpoints
    Interval anchor = best.attaining;
    golden_max([&](double v) { return probe(0.0, v); },
               std::max(anchor.hi - 0.25 * anchor.length(), 1e-300),
               std::min(anchor.hi + 0.25 * anchor.length(), top), cfg.refinement_depth);
    for (std::size_t round = 0; round < cfg.starts; ++round) {
        const Interval at = best.attaining;
        const double w = at.length();
        golden_max([&](double u) { return probe(u, at.hi); }, std::max(0.0, at.lo - 0.5 * w),
                   at.lo + 0.5 * w, cfg.refinement_depth);
        const Interval at2 = best.attaining;
        golden_max([&](double v) { return probe(at2.lo, v); },
                   std::max(at2.lo + 1e-300, at2.hi - 0.5 * w),
                   std::min(at2.hi + 0.5 * w, top), cfg.refinement_depth);
    }

    A2Report rep;
    rep.value = best.value;
    rep.attaining = best.attaining;
    rep.dyadic_value = dyadic;
    rep.evaluations = best.evaluations;
    return rep;
}

} // namespace

LogPos a2_product(const WeightPair& pair, Interval I) {
    require_nonempty(I, "a2_product");
    const LogPos len = LogPos::from_value(I.length());
    return pair.exact_w().integral(I) * pair.exact_sigma().integral(I) / (len * len);
}

LogPos a2_dyadic(const WeightPair& pair, int depth) {
    if (depth < 1) throw std::invalid_argument("a2_dyadic: depth must be >= 1");
    ProductBest best;
    ProductProbe probe(pair, best);
    dyadic_scan(pair, depth, probe);
    return best.value;
}

A2Report a2_search(const WeightPair& pair, const A2SearchConfig& cfg) {
    A2Report rep = a2_search_once(pair, cfg);
    if (cfg.convergence_probe) {
        A2SearchConfig half = cfg;
        half.convergence_probe = false;
        half.grid = std::max<std::size_t>(cfg.grid / 2, 64);
        half.refinement_depth = std::max(cfg.refinement_depth / 2, 16);
        const A2Report coarse = a2_search_once(pair, half);
        rep.evaluations += coarse.evaluations;
        rep.converged = !rep.value.is_zero() &&
                        std::fabs(rep.value.log2_value() - coarse.value.log2_value()) < 1e-6;
    }
    return rep;
}

AInfReport a_infty_estimate(const Integrand& w, const std::vector<Interval>& candidates,
                            const AInfConfig& cfg) {
    if (cfg.grid < 16) throw std::invalid_argument("a_infty_estimate: grid must be >= 16");
    AInfReport report;
    report.grid = cfg.grid;
    for (const Interval& I : candidates) {
        require_nonempty(I, "a_infty_estimate");
        const LogPos denom = w.integral(I);
        if (denom.is_zero()) throw std::domain_error("a_infty_estimate: w(I) = 0");
        const RestrictedIntegrand wI(w, I);

        // cell edges: uniform backbone, geometric clustering at interior
        // breakpoints, and deep quarter-octave clustering at the interval and
        // support edges. The integrand M(w 1_I) can concentrate its mass in a
        // thin neighborhood of an edge singularity (for x^{alpha-1} a 2^-m
        // neighborhood of 0 still carries mass 2^{-m alpha}), so the edge
        // clusters must reach far deeper than the interior ones.
        std::vector<double> edges{I.lo, I.hi};
        const std::size_t uniform = cfg.grid / 2;
        for (std::size_t i = 1; i < uniform; ++i)
            edges.push_back(I.lo + I.length() * static_cast<double>(i) /
                                       static_cast<double>(uniform));
        std::vector<double> bps;
        w.collect_breakpoints(I, 24, bps);
        for (double b : bps)
            for (int m = 2; m <= 14; ++m) {
                const double d = I.length() * std::ldexp(1.0, -m);
                if (b - d > I.lo) edges.push_back(b - d);
                if (b + d < I.hi) edges.push_back(b + d);
            }
        const Interval wsup = w.support();
        for (double anchor : {I.lo, I.hi, wsup.lo, wsup.hi})
            for (int s = 8; s <= static_cast<int>(cfg.deep_steps); ++s) {
                const double d = I.length() * std::exp2(-static_cast<double>(s) * 0.25);
                if (anchor - d > I.lo && anchor - d < I.hi) edges.push_back(anchor - d);
                if (anchor + d < I.hi && anchor + d > I.lo) edges.push_back(anchor + d);
            }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

        LogPos integral_lb;
        std::optional<MaximalResult> seed;
        for (std::size_t c = 0; c + 1 < edges.size(); ++c) {
            const Interval cell(edges[c], edges[c + 1]);
            const MaximalResult r = maximal_over_containing(wI, cell, cfg.cell_search, seed);
            seed = r;
            integral_lb += LogPos::from_value(cell.length()) * r.value;
        }
        AInfCandidate entry{I, integral_lb / denom, edges.size() - 1};
        report.per_interval.push_back(entry);
        if (entry.ratio > report.value) {
            report.value = entry.ratio;
            report.attaining = I;
        }
    }
    return report;
}

std::vector<Interval> default_ainf_candidates(const WeightPair& pair) {
    std::vector<Interval> out;
    for (int k = 0; k <= 6; ++k) out.push_back(Interval(0.0, std::ldexp(1.0, -k)));
    out.push_back(Interval(0.25, 1.0));
    out.push_back(Interval(0.5, 1.0));
    out.push_back(Interval(0.5, 0.75));
    if (pair.kind == WeightKind::lacunary) {
        const double alpha = pair.alpha;
        out.push_back(Interval(0.5 * (1.0 - alpha), 0.5 * (1.0 + alpha)));
        out.push_back(Interval(1.0 - 2.0 * alpha, 1.0));
    }
    return out;
}

CheckOutcome reverse_holder_check_pre(const PiecewisePowerFn& w_pow, const PiecewisePowerFn& w,
                                      double one_plus_eps, Interval I) {
    require_nonempty(I, "reverse_holder_check");
    CheckOutcome out;
    LogPos lhs;
    try {
        lhs = average(w_pow, I);
    } catch (const std::domain_error& err) {
        out.evaluated = false;
        out.pass = false;
        out.note = std::string("w^{1+eps} not integrable on I: ") + err.what();
        return out;
    }
    const LogPos rhs = LogPos::from_value(2.0) * average(w, I).pow(one_plus_eps);
    out.pass = !(lhs > rhs);
    out.margin_log2 = lhs.is_zero() ? std::numeric_limits<double>::infinity()
                                    : rhs.log2_value() - lhs.log2_value();
    return out;
}

CheckOutcome reverse_holder_check(const PiecewisePowerFn& w, Interval I, double ainf) {
    if (!(ainf >= 1.0)) throw std::invalid_argument("reverse_holder_check: ainf must be >= 1");
    const double one_plus_eps = 1.0 + 1.0 / (4.0 * ainf);
    return reverse_holder_check_pre(pow_scalar(w, one_plus_eps), w, one_plus_eps, I);
}

CheckOutcome subset_mass_check(const Integrand& w, Interval Q, const std::vector<Interval>& E,
                               double c_const, double ainf) {
    require_nonempty(Q, "subset_mass_check");
    if (!(ainf >= 1.0)) throw std::invalid_argument("subset_mass_check: ainf must be >= 1");
    std::vector<Interval> parts = E;
    std::sort(parts.begin(), parts.end());
    double e_len = 0.0;
    LogPos lhs;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].empty()) continue;
        if (!Q.contains(parts[i]))
            throw std::invalid_argument("subset_mass_check: E must lie inside Q");
        if (i > 0 && parts[i].lo < parts[i - 1].hi)
            throw std::invalid_argument("subset_mass_check: E parts must be disjoint");
        e_len += parts[i].length();
        lhs += w.integral(parts[i]);
    }
    CheckOutcome out;
    if (e_len == 0.0) {
        out.pass = true;
        out.margin_log2 = std::numeric_limits<double>::infinity();
        return out;
    }
    const LogPos frac = LogPos::from_value(e_len) / LogPos::from_value(Q.length());
    const LogPos rhs = LogPos::from_value(2.0) * w.integral(Q) * frac.pow(c_const / ainf);
    out.pass = !(lhs > rhs);
    out.margin_log2 = lhs.is_zero() ? std::numeric_limits<double>::infinity()
                                    : rhs.log2_value() - lhs.log2_value();
    return out;
}

} // namespace a2lab
