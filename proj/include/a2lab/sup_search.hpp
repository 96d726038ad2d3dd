#pragma once

#include "a2lab/integrand.hpp"

#include <optional>

namespace a2lab {

/// Budget for the interval-endpoint searches. Endpoints may extend up to
/// max_expansion beyond the support (negative means "one support length").
struct SupSearchConfig {
    double max_expansion = -1.0;
    int refinement_depth = 64;        // golden-section steps per coordinate
    double rel_tol = 1e-10;
    std::size_t breakpoint_budget = 128; // candidate endpoints per side
};

struct MaximalResult {
    LogPos value;        // certified lower bound of the sup
    Interval attaining;  // interval realizing `value`
    bool converged = true;
    std::size_t evaluations = 0;
};

/// Certified lower bound for M_B f = sup { <f>_A : A an interval containing B }.
/// Candidates are breakpoint-anchored endpoint pairs extended past B followed
/// by coordinate-wise golden-section ascent of each endpoint; the reported
/// value is the best average actually evaluated, so it never overstates the
/// sup. Ties break to the shortest, then leftmost attaining interval. A seed
/// (e.g. the parent's attaining interval in a nested chain) joins the
/// candidate set, which makes the result dominate the seed's average.
MaximalResult maximal_over_containing(const Integrand& f, Interval B,
                                      const SupSearchConfig& cfg = {},
                                      const std::optional<MaximalResult>& seed = std::nullopt);

/// Hardy-Littlewood maximal value at a point: same scheme over intervals
/// containing x (degenerate B). The optional seed interval must contain x.
MaximalResult hl_maximal_at(const Integrand& f, double x, const SupSearchConfig& cfg = {},
                            const std::optional<Interval>& seed = std::nullopt);

} // namespace a2lab
