#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <stdexcept>

namespace a2lab {

/// Nonnegative quantity stored as its base-2 logarithm. The value 0 is the
/// bottom element (log2 = -inf). Everything the weights produce -- level
/// masses like 2^{-k(2-alpha)}, coefficients like 2^{2k(1-alpha)}/alpha --
/// lives here, so depths k in the tens of thousands stay representable.
///
/// Sums use the max-anchored form max + log2(1 + 2^{min-max}); differences
/// (needed by closed-form antiderivatives) go through expm1/log1p so that
/// nearly-cancelling arguments keep full relative precision.
class LogPos {
public:
    constexpr LogPos() = default; // zero

    static LogPos from_log2(double lg) {
        LogPos v;
        v.lg_ = lg;
        return v;
    }

    static LogPos from_value(double x) {
        if (x < 0.0 || std::isnan(x))
            throw std::domain_error("LogPos::from_value: negative or NaN");
        if (x == 0.0) return LogPos();
        int e = 0;
        const double m = std::frexp(x, &e); // x = m * 2^e, m in [1/2, 1)
        return from_log2(static_cast<double>(e) + std::log2(m));
    }

    bool is_zero() const { return lg_ == -std::numeric_limits<double>::infinity(); }
    double log2_value() const { return lg_; }

    /// Round trip to the linear domain. Exact for dyadic values; otherwise
    /// within 1 ulp of the log2 payload. Overflows to +inf / underflows to 0
    /// outside double range.
    double value() const {
        if (is_zero()) return 0.0;
        const double k = std::floor(lg_);
        if (k > 1024.0) return std::numeric_limits<double>::infinity();
        if (k < -1075.0) return 0.0;
        return std::ldexp(std::exp2(lg_ - k), static_cast<int>(k));
    }

    LogPos& operator+=(const LogPos& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) { lg_ = o.lg_; return *this; }
        const double hi = std::max(lg_, o.lg_);
        const double lo = std::min(lg_, o.lg_);
        lg_ = hi + std::log1p(std::exp2(lo - hi)) / kLn2;
        return *this;
    }

    LogPos& operator*=(const LogPos& o) {
        if (is_zero() || o.is_zero()) { *this = LogPos(); return *this; }
        lg_ += o.lg_;
        return *this;
    }

    LogPos& operator/=(const LogPos& o) {
        if (o.is_zero()) throw std::domain_error("LogPos: division by zero");
        if (!is_zero()) lg_ -= o.lg_;
        return *this;
    }

    /// x^t in the log domain (log2 scales by t). 0^t = 0 for t > 0.
    LogPos pow(double t) const {
        if (is_zero()) {
            if (t > 0.0) return LogPos();
            throw std::domain_error("LogPos::pow: 0 to a nonpositive power");
        }
        if (t == 0.0) return one();
        return from_log2(lg_ * t);
    }

    static LogPos one() { return from_log2(0.0); }
    static LogPos two_pow(double e) { return from_log2(e); }

    friend LogPos operator+(LogPos a, const LogPos& b) { a += b; return a; }
    friend LogPos operator*(LogPos a, const LogPos& b) { a *= b; return a; }
    friend LogPos operator/(LogPos a, const LogPos& b) { a /= b; return a; }

    friend bool operator==(const LogPos& a, const LogPos& b) { return a.lg_ == b.lg_; }
    friend auto operator<=>(const LogPos& a, const LogPos& b) { return a.lg_ <=> b.lg_; }

private:
    static constexpr double kLn2 = 0.6931471805599453094;
    double lg_ = -std::numeric_limits<double>::infinity();
};

/// log2(1 - 2^d) for d < 0, stable for d near 0 and for very negative d.
inline double log2_one_minus_exp2(double d) {
    if (!(d < 0.0)) throw std::domain_error("log2_one_minus_exp2: requires d < 0");
    // 1 - 2^d = -expm1(d ln 2)
    return std::log(-std::expm1(d * 0.6931471805599453094)) / 0.6931471805599453094;
}

/// hi - lo for hi >= lo (exact zero when equal).
inline LogPos log_diff(const LogPos& hi, const LogPos& lo) {
    if (lo.is_zero()) return hi;
    if (hi < lo) throw std::domain_error("log_diff: negative result");
    if (hi == lo) return LogPos();
    const double d = lo.log2_value() - hi.log2_value();
    return LogPos::from_log2(hi.log2_value() + log2_one_minus_exp2(d));
}

/// 1 - r^m for r in (0,1), m > 0, as a LogPos (stable when r^m is near 1).
inline LogPos one_minus_pow(const LogPos& r, double m) {
    if (r.is_zero()) return LogPos::one();
    const double d = r.log2_value() * m;
    if (!(d < 0.0)) throw std::domain_error("one_minus_pow: requires r < 1, m > 0");
    return LogPos::from_log2(log2_one_minus_exp2(d));
}

/// sum_{k=k_from}^{k_to} first_at_zero * ratio^k, with ratio in (0,1).
/// Pass k_to < 0 for the infinite tail.
inline LogPos geometric_block(const LogPos& first_at_zero, const LogPos& ratio,
                              long k_from, long k_to = -1) {
    if (first_at_zero.is_zero()) return LogPos();
    if (ratio >= LogPos::one())
        throw std::domain_error("geometric_block: ratio must be < 1");
    const LogPos head = first_at_zero * ratio.pow(static_cast<double>(k_from));
    const LogPos denom = one_minus_pow(ratio, 1.0);
    if (k_to < 0) return head / denom;
    if (k_to < k_from) return LogPos();
    const double n = static_cast<double>(k_to - k_from + 1);
    return head * one_minus_pow(ratio, n) / denom;
}

} // namespace a2lab
