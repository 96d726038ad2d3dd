#include "a2lab/piecewise_fn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace a2lab {

namespace {

void validate_piece(const Piece& p) {
    if (!(p.span.lo < p.span.hi))
        throw std::invalid_argument("Piece: requires lo < hi");
    if (p.term.coeff.is_zero())
        throw std::invalid_argument("Piece: zero coefficient (drop the piece instead)");
    const bool asc = p.term.orient == Orientation::ascending;
    const double gap = asc ? p.span.lo - p.term.offset : p.term.offset - p.span.hi;
    if (gap < 0.0)
        throw std::invalid_argument("Piece: oriented argument not positive on the interior");
}

} // namespace

PiecewisePowerFn::PiecewisePowerFn(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    std::sort(pieces_.begin(), pieces_.end(),
              [](const Piece& a, const Piece& b) { return a.span.lo < b.span.lo; });
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        validate_piece(pieces_[i]);
        if (i > 0 && pieces_[i - 1].span.hi > pieces_[i].span.lo)
            throw std::invalid_argument("PiecewisePowerFn: overlapping pieces");
    }

    // leaf masses, then power-of-two block sums on top of them
    blocks_.clear();
    blocks_.emplace_back();
    blocks_[0].reserve(pieces_.size());
    for (const Piece& p : pieces_) {
        LogPos m;
        try {
            m = integrate_term(p.term, p.span);
        } catch (const std::domain_error&) {
            m = LogPos::from_log2(std::numeric_limits<double>::infinity());
        }
        blocks_[0].push_back(m);
    }
    while (blocks_.back().size() > 1) {
        const auto& prev = blocks_.back();
        std::vector<LogPos> next((prev.size() + 1) / 2);
        for (std::size_t i = 0; i < next.size(); ++i) {
            next[i] = prev[2 * i];
            if (2 * i + 1 < prev.size()) next[i] += prev[2 * i + 1];
        }
        blocks_.push_back(std::move(next));
    }

    prefix_.assign(pieces_.size() + 1, LogPos());
    for (std::size_t i = 0; i < pieces_.size(); ++i)
        prefix_[i + 1] = prefix_[i] + blocks_[0][i];
}

Interval PiecewisePowerFn::support() const {
    if (pieces_.empty()) return Interval(0.0, 0.0);
    return Interval(pieces_.front().span.lo, pieces_.back().span.hi);
}

LogPos PiecewisePowerFn::operator()(double x) const {
    // rightmost piece with span.lo <= x
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](double v, const Piece& p) { return v < p.span.lo; });
    if (it == pieces_.begin()) return LogPos();
    --it;
    if (x >= it->span.hi) return LogPos();
    return eval_term(it->term, x);
}

LogPos PiecewisePowerFn::block_sum(std::size_t first, std::size_t last) const {
    LogPos total;
    std::size_t lvl = 0, lo = first, hi = last;
    while (lo < hi) {
        if (lo & 1) total += blocks_[lvl][lo++];
        if (hi & 1) total += blocks_[lvl][--hi];
        lo >>= 1;
        hi >>= 1;
        ++lvl;
    }
    return total;
}

LogPos PiecewisePowerFn::integral(Interval iv) const {
    if (iv.hi < iv.lo) throw std::invalid_argument("integral: inverted interval");
    if (pieces_.empty() || iv.empty()) return LogPos();
    iv = iv.intersect(Interval(support().lo, support().hi));
    if (iv.empty()) return LogPos();

    // first piece whose span ends after iv.lo / begins before iv.hi
    auto lo_it = std::upper_bound(pieces_.begin(), pieces_.end(), iv.lo,
                                  [](double v, const Piece& p) { return v < p.span.hi; });
    auto hi_it = std::lower_bound(pieces_.begin(), pieces_.end(), iv.hi,
                                  [](const Piece& p, double v) { return p.span.lo < v; });
    if (lo_it >= hi_it) return LogPos();

    const std::size_t first = static_cast<std::size_t>(lo_it - pieces_.begin());
    const std::size_t last = static_cast<std::size_t>(hi_it - pieces_.begin());

    auto clipped = [&](std::size_t i) {
        const Piece& p = pieces_[i];
        const Interval cut = p.span.intersect(iv);
        if (cut.empty()) return LogPos();
        if (cut == p.span) return blocks_[0][i];
        return integrate_term(p.term, cut);
    };

    LogPos total;
    if (last - first == 1) {
        total = clipped(first);
    } else {
        total = clipped(first) + clipped(last - 1);
        if (last - first > 2) total += block_sum(first + 1, last - 1);
    }
    if (!total.is_zero() && std::isinf(total.log2_value()))
        throw std::domain_error("integral: non-integrable piece inside query range");
    return total;
}

LogPos PiecewisePowerFn::prefix_mass(double x) const {
    if (pieces_.empty()) return LogPos();
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](double v, const Piece& p) { return v < p.span.lo; });
    const std::size_t idx = static_cast<std::size_t>(it - pieces_.begin());
    LogPos total = prefix_[idx];
    if (idx > 0) {
        const Piece& p = pieces_[idx - 1];
        if (x < p.span.hi) {
            // replace the already-counted full piece with its clipped part
            total = prefix_[idx - 1];
            if (x > p.span.lo) total += integrate_term(p.term, Interval(p.span.lo, x));
        }
    }
    if (!total.is_zero() && std::isinf(total.log2_value()))
        throw std::domain_error("prefix_mass: non-integrable piece inside query range");
    return total;
}

void PiecewisePowerFn::collect_breakpoints(Interval range, std::size_t cap,
                                           std::vector<double>& out) const {
    if (range.empty()) return;
    std::size_t added = 0;
    for (const Piece& p : pieces_) {
        for (double e : {p.span.lo, p.span.hi}) {
            if (e >= range.lo && e <= range.hi) {
                out.push_back(e);
                if (++added >= cap) return;
            }
        }
    }
}

StepFn::StepFn(std::vector<double> edges, std::vector<LogPos> values)
    : edges_(std::move(edges)), values_(std::move(values)) {
    if (edges_.size() != values_.size() + 1)
        throw std::invalid_argument("StepFn: edges must be one longer than values");
    for (std::size_t i = 0; i + 1 < edges_.size(); ++i)
        if (!(edges_[i] < edges_[i + 1]))
            throw std::invalid_argument("StepFn: breakpoints must be strictly increasing");
}

LogPos StepFn::operator()(double x) const {
    if (values_.empty() || x < edges_.front() || x >= edges_.back()) return LogPos();
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    return values_[static_cast<std::size_t>(it - edges_.begin()) - 1];
}

Interval StepFn::support() const {
    if (values_.empty()) return Interval(0.0, 0.0);
    return Interval(edges_.front(), edges_.back());
}

StepFn StepFn::pow(double t) const {
    std::vector<LogPos> vals;
    vals.reserve(values_.size());
    for (const LogPos& v : values_) vals.push_back(v.pow(t));
    return StepFn(edges_, std::move(vals));
}

PiecewisePowerFn multiply_step(const PiecewisePowerFn& f, const StepFn& s) {
    std::vector<Piece> out;
    for (const Piece& p : f.pieces()) {
        if (s.empty()) break;
        for (std::size_t c = 0; c < s.cells(); ++c) {
            const Interval cut = p.span.intersect(s.cell(c));
            if (cut.empty() || s.cell_value(c).is_zero()) continue;
            out.push_back(Piece{cut, scale(p.term, s.cell_value(c))});
        }
    }
    return PiecewisePowerFn(std::move(out));
}

PiecewisePowerFn reciprocal(const PiecewisePowerFn& f) {
    std::vector<Piece> out;
    out.reserve(f.pieces().size());
    for (const Piece& p : f.pieces()) out.push_back(Piece{p.span, reciprocal(p.term)});
    return PiecewisePowerFn(std::move(out));
}

PiecewisePowerFn pow_scalar(const PiecewisePowerFn& f, double t) {
    std::vector<Piece> out;
    out.reserve(f.pieces().size());
    for (const Piece& p : f.pieces()) out.push_back(Piece{p.span, pow_scalar(p.term, t)});
    return PiecewisePowerFn(std::move(out));
}

PiecewisePowerFn scale(const PiecewisePowerFn& f, const LogPos& c) {
    if (c.is_zero()) return PiecewisePowerFn();
    std::vector<Piece> out;
    out.reserve(f.pieces().size());
    for (const Piece& p : f.pieces()) out.push_back(Piece{p.span, scale(p.term, c)});
    return PiecewisePowerFn(std::move(out));
}

PiecewisePowerFn multiply_power(const PiecewisePowerFn& f, const PiecewisePowerFn& g) {
    std::vector<Piece> out;
    for (const Piece& pf : f.pieces()) {
        for (const Piece& pg : g.pieces()) {
            const Interval cut = pf.span.intersect(pg.span);
            if (cut.empty()) continue;
            const PowerTerm& a = pf.term;
            const PowerTerm& b = pg.term;
            PowerTerm prod;
            if (a.exponent == 0.0) {
                prod = PowerTerm{a.coeff * b.coeff, b.offset, b.exponent, b.orient};
            } else if (b.exponent == 0.0) {
                prod = PowerTerm{a.coeff * b.coeff, a.offset, a.exponent, a.orient};
            } else if (a.offset == b.offset && a.orient == b.orient) {
                prod = PowerTerm{a.coeff * b.coeff, a.offset, a.exponent + b.exponent, a.orient};
            } else {
                throw std::domain_error(
                    "multiply_power: power terms with distinct offsets have no closed form");
            }
            out.push_back(Piece{cut, prod});
        }
    }
    return PiecewisePowerFn(std::move(out));
}

StepFn indicator(Interval iv) {
    require_nonempty(iv, "indicator");
    return StepFn({iv.lo, iv.hi}, {LogPos::one()});
}

} // namespace a2lab
