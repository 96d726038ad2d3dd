#pragma once

#include "a2lab/operators.hpp"

namespace a2lab::lab {

/// Search for the largest interval A containing B with <g>_A >= M_B(g)/2:
/// outward doubling of each endpoint followed by bisection to tolerance,
/// alternating sides. The attaining interval of M_B(g) always qualifies, so
/// a qualifying result exists; the return value is the largest qualifying
/// interval the scheme visits (ties broken toward the leftmost placement by
/// growing the left endpoint first).
Interval project_interval(const Integrand& g, Interval B, const SupSearchConfig& cfg = {});

struct ChainState {
    std::vector<Interval> chain;              // B_1 >= B_2 >= ... (canonical order)
    std::vector<Interval> projections;        // A_i, forced nested: A_{i+1} <- A_{i+1} ^ A_i
    std::vector<MaximalResult> chain_maximal; // M_{B_i} g
    std::vector<Interval> annulus_parts;      // the pieces of all A_i \ A_{i+1}
    std::vector<LogPos> annulus_avg;          // one average per annulus i
    PiecewisePowerFn flattened;               // g~: annulus averages, g elsewhere
};

/// Flattens g along a totally ordered chain: A_i = project_interval(B_i),
/// forced nested, and g~ equals the annulus average of g on each A_i\A_{i+1}
/// (both side pieces share one constant) and g elsewhere. Preserves
/// int_{A_i} g for every i by construction.
ChainState flatten_chain(const PiecewisePowerFn& g, const std::vector<Interval>& chain,
                         const SupSearchConfig& cfg = {});

} // namespace a2lab::lab
