#include "a2lab/sup_search.hpp"

#include <algorithm>
#include <cmath>

namespace a2lab {

namespace {

struct Best {
    LogPos value;
    Interval attaining{0.0, 0.0};
    bool valid = false;

    // value first, then shortest, then leftmost: deterministic reports and
    // memoization keys independent of probe order
    void offer(const LogPos& v, Interval iv) {
        if (!valid) {
            value = v;
            attaining = iv;
            valid = true;
            return;
        }
        if (v > value ||
            (v == value && (iv.length() < attaining.length() ||
                            (iv.length() == attaining.length() && iv.lo < attaining.lo)))) {
            value = v;
            attaining = iv;
        }
    }
};

class AvgProbe {
public:
    AvgProbe(const Integrand& f, Best& best) : f_(&f), best_(&best) {}

    LogPos operator()(double lo, double hi) {
        ++evals_;
        if (!(hi > lo)) return LogPos();
        const LogPos v = f_->integral(Interval(lo, hi)) / LogPos::from_value(hi - lo);
        best_->offer(v, Interval(lo, hi));
        return v;
    }
    std::size_t evaluations() const { return evals_; }

private:
    const Integrand* f_;
    Best* best_;
    std::size_t evals_ = 0;
};

constexpr double kInvPhi = 0.6180339887498948482;

// golden-section ascent of `fn` on [a, b]; every probe feeds the global best
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

void dedup(std::vector<double>& xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

MaximalResult run_search(const Integrand& f, Interval B, double right_open_from,
                         const SupSearchConfig& cfg, const std::vector<Interval>& seeds) {
    const Interval sup = f.support();
    const double span = std::max(sup.length(), 1e-300);
    const double expand = cfg.max_expansion < 0.0 ? span : cfg.max_expansion;
    const double lo_min = std::min(sup.lo - expand, B.lo);
    const double hi_max = std::max(sup.hi + expand, right_open_from);

    Best best;
    AvgProbe avg(f, best);

    // breakpoint candidates trim to the budget (nearest B first); the
    // structural endpoints are always retained
    std::vector<double> lefts;
    f.collect_breakpoints(Interval(lo_min, B.lo), cfg.breakpoint_budget, lefts);
    dedup(lefts);
    if (lefts.size() > cfg.breakpoint_budget)
        lefts.erase(lefts.begin(), lefts.end() - static_cast<long>(cfg.breakpoint_budget));
    lefts.push_back(B.lo);
    lefts.push_back(lo_min);
    if (sup.lo >= lo_min && sup.lo <= B.lo) lefts.push_back(sup.lo);

    std::vector<double> rights;
    f.collect_breakpoints(Interval(right_open_from, hi_max), cfg.breakpoint_budget, rights);
    dedup(rights);
    if (rights.size() > cfg.breakpoint_budget) rights.resize(cfg.breakpoint_budget);
    rights.push_back(right_open_from);
    rights.push_back(hi_max);
    if (sup.hi >= right_open_from && sup.hi <= hi_max) rights.push_back(sup.hi);
    dedup(lefts);
    dedup(rights);

    for (double l : lefts)
        for (double r : rights)
            if (r >= right_open_from && r > l) avg(l, r);
    for (const Interval& s : seeds)
        if (s.lo <= B.lo && s.hi >= right_open_from && !s.empty()) avg(s.lo, s.hi);

    // coordinate-wise golden refinement from the best candidate
    LogPos before = best.valid ? best.value : LogPos();
    for (int round = 0; round < 2; ++round) {
        if (!best.valid) break;
        const double r_fixed = best.attaining.hi;
        golden_max([&](double l) { return avg(l, r_fixed); }, lo_min, B.lo,
                   cfg.refinement_depth);
        const double l_fixed = best.attaining.lo;
        golden_max([&](double r) { return avg(l_fixed, r); }, right_open_from, hi_max,
                   cfg.refinement_depth);
    }

    MaximalResult res;
    res.value = best.valid ? best.value : LogPos();
    res.attaining = best.valid ? best.attaining : B;
    res.evaluations = avg.evaluations();
    if (res.value.is_zero() || before.is_zero()) {
        res.converged = true;
    } else {
        res.converged = res.value.log2_value() - before.log2_value() <
                        std::max(cfg.rel_tol, 1e-12) * 1e3;
    }
    return res;
}

} // namespace

MaximalResult maximal_over_containing(const Integrand& f, Interval B, const SupSearchConfig& cfg,
                                      const std::optional<MaximalResult>& seed) {
    require_nonempty(B, "maximal_over_containing");
    std::vector<Interval> seeds{B};
    if (seed) seeds.push_back(seed->attaining);
    return run_search(f, B, B.hi, cfg, seeds);
}

MaximalResult hl_maximal_at(const Integrand& f, double x, const SupSearchConfig& cfg,
                            const std::optional<Interval>& seed) {
    // intervals [l, r) with l <= x < r; r must clear x by at least one step
    const double scale = std::max({std::fabs(x), f.support().length(), 1e-30});
    const double r_min = x + scale * 1e-14;
    std::vector<Interval> seeds;
    if (seed) {
        if (!seed->contains(x))
            throw std::invalid_argument("hl_maximal_at: seed must contain the point");
        seeds.push_back(*seed);
    }
    return run_search(f, Interval(x, x), r_min, cfg, seeds);
}

} // namespace a2lab
