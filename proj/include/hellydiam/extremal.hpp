#pragma once

#include "hellydiam/geometry.hpp"

#include <map>
#include <vector>

namespace hellydiam {

/// 2dk + 1 bodies; for every 2d-subset A a point v_A with |v_A| = 1/2, and
/// K_i = conv{±v_A : i ∈ A}. Every 2d members share a unit segment, yet any
/// split into k parts leaves a part of 2d + 1 members meeting strictly
/// inside the ball.
struct ClaimFamily
{
    Family family;
    std::size_t d = 0;
    std::size_t k = 0;
    std::map<std::vector<std::size_t>, Point> pairs; ///< A ↦ v_A (the pair is ±v_A)
    Scalar norm_defect;                               ///< max |¼ - |v_A|²|; zero for this construction
};

/// Rational point of norm exactly 1/2 near the unit vector `direction`
/// (last coordinate >= 0), by inverse stereographic projection of a
/// preimage rounded down to multiples of 1/denom.
Point half_sphere_point(const std::vector<double>& direction, long long denom);

/// Throws Unsupported for d = 1 and ArgumentError for k = 0.
ClaimFamily build_claim_family(std::size_t d, std::size_t k);

struct ClaimReport
{
    bool all_2d_wide = false;
    Scalar worst_2d_diam_sq;
    bool all_partitions_thin = false;
    /// Over all partitions into at most k parts, the largest value of the
    /// thinnest part's squared diameter; -1 stands for an empty intersection.
    Scalar worst_part_diam_sq;
    std::size_t subsets_checked = 0;
    std::size_t partitions_checked = 0;
    bool partial = false; ///< the partition cap stopped the enumeration
};

ClaimReport verify_claim(const ClaimFamily& cf, std::size_t partition_cap = 1000000);

} // namespace hellydiam
