#pragma once

#include "a2lab/interval.hpp"

#include <optional>
#include <string>
#include <vector>

namespace a2lab {

/// Finite laminar family of half-open intervals (any two members nested or
/// disjoint) with sparseness parameter gamma and, once certified, the
/// disjoint subsets E_A = A minus the union of A's maximal children.
struct SparseFamily {
    std::vector<Interval> intervals; // canonical order: lo ascending, hi descending
    double gamma = 0.5;
    // certificate[i]: the residual set E_A of intervals[i] as disjoint intervals
    std::vector<std::vector<Interval>> certificate;
};

struct SparseCheckResult {
    bool sparse = false;
    double worst_ratio = 0.0;      // min over A of |E_A| / |A|
    std::size_t worst_index = 0;
    std::vector<std::vector<Interval>> certificate;
};

/// Certifies gamma-sparseness of a laminar family: for each A the residual
/// E_A = A \ (union of maximal children) must satisfy |E_A| >= gamma |A|.
/// Throws std::invalid_argument for non-laminar input (that is an unsupported
/// family, not a sparseness verdict).
SparseCheckResult check_sparse(const std::vector<Interval>& family, double gamma);

/// check_sparse + packaging; throws if the family is not gamma-sparse.
SparseFamily make_sparse_family(std::vector<Interval> family, double gamma);

/// Laminar structure: parent[i] is the index of the tightest enclosing
/// member, or -1 for roots. Input must be in canonical order.
std::vector<long> laminar_parents(const std::vector<Interval>& sorted_family);

void canonical_sort(std::vector<Interval>& family);

/// Family spec strings for the CLI:
///   "nested:kmax=40"            -> { [0, 2^-k) : 1 <= k <= kmax }
///   "bands:a=6,jmax=40,kmax=8"  -> { [2^-k - 2^-j, 2^-k) : 1 <= k <= kmax,
///                                     a+k <= j <= a+k+jmax }
/// Band offsets j are clamped to j - k <= 50, past which the left endpoint
/// no longer resolves in double precision.
std::vector<Interval> parse_family_spec(const std::string& spec);

std::vector<Interval> nested_family(long kmax);
std::vector<Interval> band_family(int a, long kmax, long jmax);

} // namespace a2lab
