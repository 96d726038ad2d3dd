#include "a2lab/lab/chain.hpp"

#include <algorithm>
#include <cmath>

namespace a2lab::lab {

namespace {

bool qualifies(const Integrand& g, Interval A, const LogPos& target) {
    return !(average(g, A) < target);
}

// grow one endpoint outward (doubling then bisection) while A keeps
// qualifying; returns the grown coordinate
double grow_endpoint(const Integrand& g, Interval A, const LogPos& target, bool left,
                     double bound, double tol) {
    double good = left ? A.lo : A.hi;
    double step = std::max(A.length(), tol);
    auto with = [&](double v) { return left ? Interval(v, A.hi) : Interval(A.lo, v); };
    // doubling phase
    while (true) {
        double trial = left ? good - step : good + step;
        trial = left ? std::max(trial, bound) : std::min(trial, bound);
        if (trial == good) return good;
        if (qualifies(g, with(trial), target)) {
            good = trial;
            if (trial == bound) return good;
            step *= 2.0;
        } else {
            break;
        }
    }
    // bisection between the last qualifying point and the failed trial
    double bad = left ? std::max(good - step, bound) : std::min(good + step, bound);
    while (std::fabs(good - bad) > tol) {
        const double mid = 0.5 * (good + bad);
        if (qualifies(g, with(mid), target))
            good = mid;
        else
            bad = mid;
    }
    return good;
}

} // namespace

Interval project_interval(const Integrand& g, Interval B, const SupSearchConfig& cfg) {
    require_nonempty(B, "project_interval");
    const MaximalResult mb = maximal_over_containing(g, B, cfg);
    if (mb.value.is_zero()) return mb.attaining; // g vanishes around B; nothing to grow
    const LogPos target = mb.value * LogPos::from_value(0.5);

    const Interval sup = g.support();
    const double span = std::max(sup.length(), 1e-300);
    const double expand = cfg.max_expansion < 0.0 ? span : cfg.max_expansion;
    const double lo_bound = std::min(sup.lo - expand, B.lo);
    const double hi_bound = std::max(sup.hi + expand, B.hi);
    const double tol = std::max(cfg.rel_tol, 1e-14) * span;

    // which side grows first matters (one side's growth can block the
    // other's); run both orders and keep the longest, then leftmost
    Interval left_first = mb.attaining; // qualifies with constant 1 <= 2
    for (int round = 0; round < 2; ++round) {
        left_first.lo = grow_endpoint(g, left_first, target, true, lo_bound, tol);
        left_first.hi = grow_endpoint(g, left_first, target, false, hi_bound, tol);
    }
    Interval right_first = mb.attaining;
    for (int round = 0; round < 2; ++round) {
        right_first.hi = grow_endpoint(g, right_first, target, false, hi_bound, tol);
        right_first.lo = grow_endpoint(g, right_first, target, true, lo_bound, tol);
    }
    if (left_first.length() > right_first.length()) return left_first;
    if (right_first.length() > left_first.length() + tol) return right_first;
    return left_first.lo <= right_first.lo ? left_first : right_first;
}

ChainState flatten_chain(const PiecewisePowerFn& g, const std::vector<Interval>& chain,
                         const SupSearchConfig& cfg) {
    if (chain.empty()) throw std::invalid_argument("flatten_chain: empty chain");
    ChainState st;
    st.chain = chain;
    canonical_sort(st.chain);
    for (std::size_t i = 0; i + 1 < st.chain.size(); ++i)
        if (!st.chain[i].contains(st.chain[i + 1]))
            throw std::invalid_argument("flatten_chain: family is not a chain");

    std::optional<MaximalResult> seed;
    for (std::size_t i = 0; i < st.chain.size(); ++i) {
        st.chain_maximal.push_back(maximal_over_containing(g, st.chain[i], cfg, seed));
        seed = st.chain_maximal.back();
        Interval A = project_interval(g, st.chain[i], cfg);
        if (!st.projections.empty()) A = A.intersect(st.projections.back());
        st.projections.push_back(A);
    }

    // annuli A_i \ A_{i+1}: one constant (the annulus average of g) on up to
    // two side pieces
    std::vector<std::pair<Interval, LogPos>> constant_parts;
    for (std::size_t i = 0; i + 1 < st.projections.size(); ++i) {
        const Interval outer = st.projections[i];
        const Interval inner = st.projections[i + 1];
        const Interval left(outer.lo, inner.lo);
        const Interval right(inner.hi, outer.hi);
        const double len = std::max(left.length(), 0.0) + std::max(right.length(), 0.0);
        if (len <= 0.0) {
            st.annulus_avg.push_back(LogPos());
            continue;
        }
        LogPos mass;
        if (!left.empty()) mass += g.integral(left);
        if (!right.empty()) mass += g.integral(right);
        const LogPos avg = mass / LogPos::from_value(len);
        st.annulus_avg.push_back(avg);
        for (const Interval& part : {left, right})
            if (!part.empty()) {
                st.annulus_parts.push_back(part);
                if (!avg.is_zero()) constant_parts.emplace_back(part, avg);
            }
    }

    // assemble g~: constants on annulus parts, g's own pieces elsewhere
    std::vector<Interval> holes = st.annulus_parts;
    std::sort(holes.begin(), holes.end());
    std::vector<Piece> pieces;
    for (const auto& [part, avg] : constant_parts)
        pieces.push_back(Piece{part, PowerTerm{avg, part.lo, 0.0, Orientation::ascending}});
    for (const Piece& p : g.pieces()) {
        double cursor = p.span.lo;
        for (const Interval& h : holes) {
            if (h.hi <= cursor) continue;
            if (h.lo >= p.span.hi) break;
            if (h.lo > cursor) pieces.push_back(Piece{Interval(cursor, h.lo), p.term});
            cursor = std::max(cursor, h.hi);
        }
        if (cursor < p.span.hi) pieces.push_back(Piece{Interval(cursor, p.span.hi), p.term});
    }
    st.flattened = PiecewisePowerFn(std::move(pieces));
    return st;
}

} // namespace a2lab::lab
