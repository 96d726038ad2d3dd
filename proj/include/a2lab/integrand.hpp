#pragma once

#include "a2lab/interval.hpp"
#include "a2lab/logpos.hpp"

#include <vector>

namespace a2lab {

/// A nonnegative function with exact interval integrals. The sup-search,
/// sparse operators and characteristic estimators only consume this surface,
/// so explicit piecewise functions and closed-form self-similar weights are
/// interchangeable behind it.
class Integrand {
public:
    virtual ~Integrand() = default;

    /// Exact integral over the interval (clamped to the support).
    virtual LogPos integral(Interval iv) const = 0;

    /// Pointwise value; zero outside the support.
    virtual LogPos operator()(double x) const = 0;

    /// Smallest interval outside of which the function vanishes.
    virtual Interval support() const = 0;

    /// Append up to `cap` structural breakpoints inside `range`, nearest the
    /// end of the range that carries the finest structure first. Used to seed
    /// interval searches; may be a subset when there are infinitely many.
    virtual void collect_breakpoints(Interval range, std::size_t cap,
                                     std::vector<double>& out) const = 0;
};

inline LogPos average(const Integrand& f, Interval iv) {
    if (!(iv.length() > 0.0))
        throw std::invalid_argument("average: zero-length interval");
    return f.integral(iv) / LogPos::from_value(iv.length());
}

/// View of an integrand restricted to a window (f * 1_W).
class RestrictedIntegrand final : public Integrand {
public:
    RestrictedIntegrand(const Integrand& base, Interval window)
        : base_(&base), window_(window) {}

    LogPos integral(Interval iv) const override {
        const Interval cut = iv.intersect(window_);
        if (cut.empty()) return LogPos();
        return base_->integral(cut);
    }
    LogPos operator()(double x) const override {
        return window_.contains(x) ? (*base_)(x) : LogPos();
    }
    Interval support() const override { return base_->support().intersect(window_); }
    void collect_breakpoints(Interval range, std::size_t cap,
                             std::vector<double>& out) const override {
        base_->collect_breakpoints(range.intersect(window_), cap, out);
        if (range.contains(window_.lo)) out.push_back(window_.lo);
        if (range.contains(window_.hi)) out.push_back(window_.hi);
    }

private:
    const Integrand* base_;
    Interval window_;
};

} // namespace a2lab
