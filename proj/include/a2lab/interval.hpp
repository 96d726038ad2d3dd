#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace a2lab {

/// Half-open interval [lo, hi). All pieces, cells and sparse-family members
/// use this convention; point evaluation at a shared endpoint belongs to the
/// piece on the right.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double l, double h) : lo(l), hi(h) {}

    double length() const { return hi - lo; }
    bool empty() const { return !(lo < hi); }
    bool contains(double x) const { return lo <= x && x < hi; }
    bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
    bool disjoint(const Interval& other) const { return hi <= other.lo || other.hi <= lo; }

    Interval intersect(const Interval& other) const {
        return Interval(std::max(lo, other.lo), std::min(hi, other.hi));
    }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
    friend bool operator<(const Interval& a, const Interval& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.hi < b.hi;
    }
};

inline Interval require_nonempty(const Interval& iv, const char* what) {
    if (iv.empty()) throw std::invalid_argument(std::string(what) + ": empty interval");
    return iv;
}

} // namespace a2lab
