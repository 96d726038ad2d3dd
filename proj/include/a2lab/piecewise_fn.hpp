#pragma once

#include "a2lab/integrand.hpp"
#include "a2lab/power_term.hpp"

#include <vector>

namespace a2lab {

/// One half-open span carrying a single power term.
struct Piece {
    Interval span;
    PowerTerm term;
};

/// Ordered, pairwise-disjoint pieces; zero off their union. Immutable after
/// construction. Interval queries run in O(log n) through a binary block
/// index whose nodes hold exact piece-sum masses (additions only, so deep
/// interior queries do not lose precision to cancellation); a cumulative
/// prefix per breakpoint serves one-sided tail queries.
class PiecewisePowerFn final : public Integrand {
public:
    PiecewisePowerFn() = default;
    explicit PiecewisePowerFn(std::vector<Piece> pieces);

    const std::vector<Piece>& pieces() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }

    LogPos integral(Interval iv) const override;
    LogPos operator()(double x) const override;
    Interval support() const override;
    void collect_breakpoints(Interval range, std::size_t cap,
                             std::vector<double>& out) const override;

    /// Integral over (-inf, x): prefix index plus one partial piece.
    LogPos prefix_mass(double x) const;
    /// prefix()[i] is the exact integral up to pieces()[i].span.lo;
    /// one extra trailing entry holds the total mass.
    const std::vector<LogPos>& prefix() const { return prefix_; }

private:
    LogPos block_sum(std::size_t first, std::size_t last) const; // pieces [first, last)
    std::vector<Piece> pieces_;
    std::vector<LogPos> prefix_;
    std::vector<std::vector<LogPos>> blocks_;
};

inline LogPos integrate(const PiecewisePowerFn& f, Interval iv) { return f.integral(iv); }

/// Piecewise-constant function with log-domain values, zero outside its
/// breakpoint range. Output type of the sparse operators.
class StepFn {
public:
    StepFn() = default;
    StepFn(std::vector<double> edges, std::vector<LogPos> values);

    std::size_t cells() const { return values_.size(); }
    Interval cell(std::size_t i) const { return Interval(edges_[i], edges_[i + 1]); }
    const LogPos& cell_value(std::size_t i) const { return values_[i]; }
    const std::vector<double>& edges() const { return edges_; }

    LogPos operator()(double x) const;
    Interval support() const;
    bool empty() const { return values_.empty(); }

    /// Values raised to a power, cells unchanged.
    StepFn pow(double t) const;

private:
    std::vector<double> edges_;  // strictly increasing, values_.size() + 1 entries
    std::vector<LogPos> values_;
};

/// Pointwise product f * s, with the partition refined to both families of
/// breakpoints. Cells where s vanishes are dropped (the product is zero).
PiecewisePowerFn multiply_step(const PiecewisePowerFn& f, const StepFn& s);

/// 1/f piece by piece: coefficients inverted, exponents negated.
PiecewisePowerFn reciprocal(const PiecewisePowerFn& f);

/// f^t piece by piece. Pieces whose power becomes non-integrable at a touched
/// offset stay constructible; integration over them raises a domain error.
PiecewisePowerFn pow_scalar(const PiecewisePowerFn& f, double t);

/// c * f, exact in the log domain.
PiecewisePowerFn scale(const PiecewisePowerFn& f, const LogPos& c);

/// Pointwise product f * g. Defined when on every overlap the two terms
/// share offset and orientation (exponents add) or one of them is constant;
/// products of genuine power terms with distinct offsets have no closed form
/// here and raise a domain error.
PiecewisePowerFn multiply_power(const PiecewisePowerFn& f, const PiecewisePowerFn& g);

/// Indicator of [lo, hi) as a StepFn.
StepFn indicator(Interval iv);

} // namespace a2lab
