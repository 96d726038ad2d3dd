#pragma once

#include "a2lab/interval.hpp"
#include "a2lab/logpos.hpp"

namespace a2lab {

/// Which side of the offset the argument lives on: (x - a)^p or (a - x)^p.
enum class Orientation { ascending, descending };

/// One signed-offset power expression c * (+-(x - a))^p with a log-domain
/// coefficient. Every branch of the weights in this project is one of these.
struct PowerTerm {
    LogPos coeff = LogPos::one();
    double offset = 0.0;
    double exponent = 0.0;
    Orientation orient = Orientation::ascending;
};

inline PowerTerm reciprocal(const PowerTerm& t) {
    if (t.coeff.is_zero()) throw std::domain_error("reciprocal: zero coefficient");
    return PowerTerm{LogPos::one() / t.coeff, t.offset, -t.exponent, t.orient};
}

inline PowerTerm pow_scalar(const PowerTerm& t, double s) {
    return PowerTerm{t.coeff.pow(s), t.offset, t.exponent * s, t.orient};
}

inline PowerTerm scale(const PowerTerm& t, const LogPos& c) {
    return PowerTerm{t.coeff * c, t.offset, t.exponent, t.orient};
}

/// Pointwise value. The oriented argument must be nonnegative; at the offset
/// itself the value is 0 for p > 0, coeff for p = 0, and a domain error for
/// p < 0 (the term is singular there).
inline LogPos eval_term(const PowerTerm& t, double x) {
    const double u = t.orient == Orientation::ascending ? x - t.offset : t.offset - x;
    if (u < 0.0) throw std::domain_error("eval_term: outside validity region");
    if (u == 0.0) {
        if (t.exponent > 0.0) return LogPos();
        if (t.exponent == 0.0) return t.coeff;
        throw std::domain_error("eval_term: singular point");
    }
    return t.coeff * LogPos::from_value(u).pow(t.exponent);
}

/// Exact closed-form integral of the term over [l, r].
///
/// With q = p + 1 and rho = (r - l) / d, d the distance from the far endpoint
/// to the offset, the antiderivative difference is written as
///     c * d^q * |expm1(q * log1p(-rho))| / |q|,
/// which stays fully accurate both for slivers (rho -> 0) and for intervals
/// touching the offset (rho = 1). q = 0 uses the logarithmic antiderivative.
/// Intervals touching the offset with q <= 0 are not integrable.
inline LogPos integrate_term(const PowerTerm& t, Interval iv) {
    if (iv.empty()) {
        if (iv.lo == iv.hi) return LogPos();
        throw std::invalid_argument("integrate_term: inverted interval");
    }
    if (t.coeff.is_zero()) return LogPos();

    const bool asc = t.orient == Orientation::ascending;
    const double near = asc ? iv.lo : iv.hi;   // endpoint nearest the offset
    const double far = asc ? iv.hi : iv.lo;    // endpoint farthest from it
    const double gap = asc ? near - t.offset : t.offset - near;
    const double d = asc ? far - t.offset : t.offset - far;
    if (gap < 0.0) throw std::domain_error("integrate_term: interval outside validity region");

    const double q = t.exponent + 1.0;
    const double width = iv.length();

    if (gap == 0.0) { // touches the offset
        if (q <= 0.0) throw std::domain_error("integrate_term: non-integrable at offset");
        // c * d^q / q
        return t.coeff * LogPos::from_value(d).pow(q) / LogPos::from_value(q);
    }

    const double rho = width / d; // in (0, 1)
    if (q == 0.0) {
        // c * ln(d / gap) = c * (-log1p(-rho))
        return t.coeff * LogPos::from_value(-std::log1p(-rho));
    }
    const double f = std::fabs(std::expm1(q * std::log1p(-rho)));
    return t.coeff * LogPos::from_value(d).pow(q) * LogPos::from_value(f)
           / LogPos::from_value(std::fabs(q));
}

} // namespace a2lab
