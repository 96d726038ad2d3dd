#pragma once

#include "a2lab/piecewise_fn.hpp"
#include "a2lab/sparse_family.hpp"
#include "a2lab/sup_search.hpp"

namespace a2lab {

/// A_S f = sum over A in S of <f>_A 1_A, as a step function on the family's
/// endpoint partition. Exact given exact interval integrals of f.
StepFn sparse_apply(const SparseFamily& family, const Integrand& f);

/// Same operator over a bare laminar interval list (members may repeat;
/// each occurrence contributes its average).
StepFn sparse_apply(const std::vector<Interval>& laminar_family, const Integrand& f);

struct StrongApplyResult {
    StepFn output;
    std::vector<MaximalResult> per_interval; // canonical family order
    bool all_converged = true;
};

/// A*_S f = sum over A in S of (M_A f) 1_A. M_A comes from the certified
/// sup-search; within each nested chain the parent's attaining interval seeds
/// the child (its candidate set contains the parent's), so results do not
/// depend on evaluation order.
StrongApplyResult strong_sparse_apply(const SparseFamily& family, const Integrand& f,
                                      const SupSearchConfig& cfg = {});

/// integral of h^2 w: exact cell-by-cell sum in the log domain.
LogPos l2w_norm_sq(const StepFn& h, const Integrand& weight);

/// Weak-L2(w) norm sup_l l * w{h > l}^{1/2} for a step function h >= 0.
/// Over each cell of constant value the sup in level is attained at the
/// value itself, so the sup reduces to max over distinct values v of
/// v * w{h >= v}^{1/2} with superlevel sets resolved exactly as cell unions.
LogPos weak_l2w_norm(const StepFn& h, const Integrand& weight);

} // namespace a2lab
