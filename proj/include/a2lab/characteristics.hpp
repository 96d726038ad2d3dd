#pragma once

#include "a2lab/operators.hpp"
#include "a2lab/weights.hpp"

#include <string>
#include <vector>

namespace a2lab {

/// <w>_I <sigma>_I for one interval, exact through the pair's exact integrands.
LogPos a2_product(const WeightPair& pair, Interval I);

/// Max of the A2 product over the dyadic tails [0, 2^-k), k <= depth, and all
/// dyadic intervals of generation <= depth inside [1/2, 1). Both families are
/// exactly self-similar (w(x/2) sigma(x/2) = w(x) sigma(x) after averaging),
/// so every dyadic interval inside [0, 1/2) is a half-scale copy of one of
/// these with an identical product; the enumeration is exhaustive.
LogPos a2_dyadic(const WeightPair& pair, int depth);

struct A2Report {
    LogPos value;       // certified lower bound of [w]_{A2}
    Interval attaining{0.0, 0.0};
    LogPos dyadic_value;
    std::size_t evaluations = 0;
    bool converged = false; // stable under a halved budget
};

struct A2SearchConfig {
    int dyadic_depth = 18;
    std::size_t grid = 4096;  // endpoint scan density inside the base cell
    int refinement_depth = 96;
    std::size_t starts = 6;
    bool convergence_probe = true;
};

/// Certified lower bound over general intervals: dyadic candidates, [0, v)
/// scans through the base cell (scale invariance covers the other scales),
/// band-shaped candidates, then coordinate-wise golden refinement of both
/// endpoints. Never below a2_dyadic at the same depth.
A2Report a2_search(const WeightPair& pair, const A2SearchConfig& cfg = {});

struct AInfCandidate {
    Interval interval;
    LogPos ratio;
    std::size_t cells = 0;
};

struct AInfConfig {
    std::size_t grid = 512;       // quadrature cells per candidate interval
    std::size_t deep_steps = 480; // quarter-octave clustering depth at edges
    SupSearchConfig cell_search{-1.0, 24, 1e-9, 24};
};

struct AInfReport {
    LogPos value; // approximate [w]_{A_infty}; a certified lower bound
    Interval attaining{0.0, 0.0};
    std::size_t grid = 0;
    std::vector<AInfCandidate> per_interval;
};

/// For each candidate I estimates (1/w(I)) int_I M(w 1_I) from below: the
/// cells partition I (geometrically clustered at the weight's breakpoints)
/// and each cell contributes |cell| * <w 1_I>_{A_cell} for a searched
/// interval A_cell containing the whole cell -- a certified lower bound of
/// inf over the cell of M(w 1_I). Refining the grid with inherited seeds
/// never decreases the estimate.
AInfReport a_infty_estimate(const Integrand& w, const std::vector<Interval>& candidates,
                            const AInfConfig& cfg = {});

/// Reasonable candidate intervals for the A_infty sup of a pair's weight.
std::vector<Interval> default_ainf_candidates(const WeightPair& pair);

struct CheckOutcome {
    bool pass = false;
    bool evaluated = true;      // false when the quantity was not integrable
    double margin_log2 = 0.0;   // log2(bound) - log2(quantity); >= 0 passes
    std::string note;
};

/// <w^{1+eps}>_I <= 2 (<w>_I)^{1+eps} with eps = 1/(4 ainf). A non-integrable
/// w^{1+eps} is reported (evaluated = false), not asserted.
CheckOutcome reverse_holder_check(const PiecewisePowerFn& w, Interval I, double ainf);

/// Same check against a precomputed w^{1+eps} (for sweeps over many intervals).
CheckOutcome reverse_holder_check_pre(const PiecewisePowerFn& w_pow, const PiecewisePowerFn& w,
                                      double one_plus_eps, Interval I);

/// w(E) <= 2 w(Q) (|E|/|Q|)^{c/ainf} for a finite disjoint union E inside Q.
CheckOutcome subset_mass_check(const Integrand& w, Interval Q, const std::vector<Interval>& E,
                               double c_const, double ainf);

} // namespace a2lab
