#pragma once

#include "a2lab/characteristics.hpp"
#include "a2lab/lab/chain.hpp"
#include "a2lab/lab/report.hpp"

#include <cstdint>

namespace a2lab::lab {

struct LabConfig {
    std::vector<int> a_list;
    double tol = 1e-10;       // lacunary tail tolerance
    long budget = 0;          // scales the characteristic search; 0 = defaults
    std::uint64_t seed = 0x5EED;
    long jmax = 0;            // strong-lower band truncation; 0 = auto (~34/alpha)
    long kmax = 0;            // level truncation; 0 = auto per experiment
    int depth = 18;           // dyadic generation depth for characteristics
};

/// Lacunary A2 characteristic sweep: one a2_search per a, fitted against
/// 1/alpha. oracle_log2 carries the exact [0,1) tail product.
ExperimentReport exp_char(const LabConfig& cfg);

/// Weak lower bound on the power pair with the nested family {[0,2^-k)}:
/// quantity is the squared weak-to-strong ratio
///   weak_l2w(A*(sigma 1))^2 / ||sigma 1||^2_{L2(w)}.
/// M_k is searched on a prefix of the chain, verified constant, and extended
/// by that constant so the level scan can run to kmax ~ 6/alpha (far past
/// representable step-function coordinates). Also emits the explicit
/// level-choice path for c in {1/2, 1, 2} and the ratio against [w]^{2.8}.
ExperimentReport exp_weak_lower(const LabConfig& cfg);

/// Strong lower bound on the lacunary pair with the band family
/// { B_{k,j} = [2^-k - 2^-j, 2^-k) : j in [a+k, a+k+jmax] }:
/// quantity is R = l2w_norm_sq(A* sigma, w) / int_0^1 sigma.
/// Level 1 is evaluated through one genuine sup-search (M is verified
/// j-independent and level-scaling-exact), the in-level cell sum runs in the
/// log domain, and the exact self-similar level ratio folds in levels up to
/// kmax ~ 4/alpha with no per-level materialization. oracle_log2 carries the
/// independent change-of-variables route with the closed form
/// sum n^2 r^n = r(1+r)/(1-r)^3 and the analytic tail-average M.
ExperimentReport exp_strong_lower(const LabConfig& cfg);

/// Chain (totally ordered family) bound on the power pair, for g = sigma 1
/// and g = 1: operator ratios ||A* g|| / ||g||, flattening inflation
/// ||g~||^2 / ||g||^2, pointwise domination constant of A* g against the
/// sparse operator of g~ over the projections, and mean preservation.
ExperimentReport exp_chain(const LabConfig& cfg);

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Acceptance thresholds, pinned here so the CLI and the acceptance suite
// share one source of truth.
std::vector<CriterionResult> evaluate_char(const ExperimentReport& report);
std::vector<CriterionResult> evaluate_weak(const ExperimentReport& report);
std::vector<CriterionResult> evaluate_strong(const ExperimentReport& report);
std::vector<CriterionResult> evaluate_chain(const ExperimentReport& report);

/// Default sweeps: char/weak a in {4..10}/{5..10}, strong {6..10}, chain {4..9}.
std::vector<int> default_a_list(const std::string& experiment);

} // namespace a2lab::lab
