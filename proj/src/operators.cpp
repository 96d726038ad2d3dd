#include "a2lab/operators.hpp"

#include <algorithm>
#include <map>

namespace a2lab {

namespace {

// overlay of per-interval constants over a laminar family in canonical order
StepFn overlay(const std::vector<Interval>& fam, const std::vector<LogPos>& per_interval) {
    if (fam.empty()) return StepFn();
    std::vector<double> edges;
    edges.reserve(2 * fam.size());
    for (const Interval& iv : fam) {
        edges.push_back(iv.lo);
        edges.push_back(iv.hi);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<LogPos> values(edges.size() - 1);
    // active chain carries cumulative sums; laminar => stack discipline
    std::vector<std::pair<double, LogPos>> active; // (hi, cumulative value)
    std::size_t next = 0;
    for (std::size_t c = 0; c + 1 < edges.size(); ++c) {
        const double x = edges[c];
        while (!active.empty() && active.back().first <= x) active.pop_back();
        while (next < fam.size() && fam[next].lo <= x) {
            if (fam[next].hi > x) {
                LogPos cum = active.empty() ? LogPos() : active.back().second;
                cum += per_interval[next];
                active.emplace_back(fam[next].hi, cum);
            }
            ++next;
        }
        values[c] = active.empty() ? LogPos() : active.back().second;
    }
    return StepFn(std::move(edges), std::move(values));
}

} // namespace

StepFn sparse_apply(const SparseFamily& family, const Integrand& f) {
    return sparse_apply(family.intervals, f);
}

StepFn sparse_apply(const std::vector<Interval>& laminar_family, const Integrand& f) {
    std::vector<Interval> fam = laminar_family;
    canonical_sort(fam);
    std::vector<LogPos> avgs;
    avgs.reserve(fam.size());
    for (const Interval& iv : fam) avgs.push_back(average(f, iv));
    return overlay(fam, avgs);
}

StrongApplyResult strong_sparse_apply(const SparseFamily& family, const Integrand& f,
                                      const SupSearchConfig& cfg) {
    StrongApplyResult res;
    const std::vector<Interval>& fam = family.intervals;
    const std::vector<long> parent = laminar_parents(fam);
    res.per_interval.resize(fam.size());

    std::map<Interval, MaximalResult> memo;
    std::vector<LogPos> values(fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i) {
        auto hit = memo.find(fam[i]);
        if (hit != memo.end()) {
            res.per_interval[i] = hit->second;
        } else {
            std::optional<MaximalResult> seed;
            if (parent[i] >= 0) seed = res.per_interval[static_cast<std::size_t>(parent[i])];
            res.per_interval[i] = maximal_over_containing(f, fam[i], cfg, seed);
            memo.emplace(fam[i], res.per_interval[i]);
        }
        values[i] = res.per_interval[i].value;
        res.all_converged = res.all_converged && res.per_interval[i].converged;
    }
    res.output = overlay(fam, values);
    return res;
}

LogPos l2w_norm_sq(const StepFn& h, const Integrand& weight) {
    LogPos total;
    for (std::size_t i = 0; i < h.cells(); ++i) {
        const LogPos& v = h.cell_value(i);
        if (v.is_zero()) continue;
        total += v * v * weight.integral(h.cell(i));
    }
    return total;
}

LogPos weak_l2w_norm(const StepFn& h, const Integrand& weight) {
    // cells sorted by value descending; prefix masses give w{h >= v} exactly
    std::vector<std::size_t> order;
    order.reserve(h.cells());
    for (std::size_t i = 0; i < h.cells(); ++i)
        if (!h.cell_value(i).is_zero()) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return h.cell_value(b) < h.cell_value(a);
    });

    LogPos best;
    LogPos mass;
    for (std::size_t r = 0; r < order.size(); ++r) {
        mass += weight.integral(h.cell(order[r]));
        // only complete value-groups give superlevel sets
        if (r + 1 < order.size() && h.cell_value(order[r + 1]) == h.cell_value(order[r]))
            continue;
        const LogPos cand = h.cell_value(order[r]) * mass.pow(0.5);
        if (cand > best) best = cand;
    }
    return best;
}

} // namespace a2lab
