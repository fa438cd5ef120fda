#pragma once

#include "hellydiam/tverberg_nets.hpp"

#include <optional>
#include <vector>

namespace hellydiam {

/// "Wide" predicate the pipeline is generic over: diameter >= 1, or v-width
/// >= 1 along a fixed direction.
struct WideProperty
{
    std::optional<Direction> direction;

    bool wide(const ConvexBody& body) const;
    /// Diameter segment, or the v-minimum to v-maximum segment.
    Segment witness(const ConvexBody& body) const;
    /// Length floor for results at loss δ; v-width mode has no loss.
    bool acceptable(const Segment& s, const Scalar& delta) const;
};

struct GroundSet
{
    std::vector<Segment> candidates;
    Scalar delta;
};

/// Witness segments of all wide q-subset and 2d-subset intersections, shrunk
/// about their midpoints to length 1 - δ (diameter mode only), deduplicated.
GroundSet ground_set(const Family& family, const Scalar& delta, std::size_t q, const WideProperty& property = {});

/// Symmetric shrink of s about its midpoint to length >= target, as short as
/// the rational square-root bound allows; unchanged when already shorter.
Segment shrink_segment(const Segment& s, const Scalar& target);

struct FractionalWeights
{
    std::vector<Scalar> weights;
    Scalar total;
};

/// min Σ w(C) s.t. every body F has Σ_{C ⊆ F} w(C) >= 1. Throws
/// GroundSetInsufficient when some body contains no candidate.
FractionalWeights fractional_transversal(const Family& family, const GroundSet& gs);

/// max Σ w(F) s.t. every candidate C has Σ_{F ⊇ C} w(F) <= 1; bodies without
/// a candidate are capped at weight 1.
FractionalWeights fractional_packing(const Family& family, const GroundSet& gs);

struct Transversal
{
    std::vector<Segment> elements;
    bool net_exhaustive = true;     ///< weak net searched every subfamily
    std::size_t multiset_size = 0;  ///< copies fed to the weak net
    std::size_t completed = 0;      ///< elements added for bodies the net missed
};

struct RoundingOptions
{
    std::size_t multiset_cap = 48;
    std::size_t packing_copies_cap = 40;
    NetOptions net;
};

/// Rounds feasible transversal weights (computed at δ/2) to a transversal at
/// δ through a weak net over the weighted multiset of candidates.
Transversal transversal_from_weights(const Family& family,
                                     const GroundSet& gs,
                                     const FractionalWeights& w,
                                     const Scalar& delta,
                                     const WideProperty& property = {},
                                     const RoundingOptions& opts = {});

struct PqCondition
{
    std::size_t p = 0;
    std::size_t q = 0;
    bool holds = true;
    std::optional<std::vector<std::size_t>> violator;
};

PqCondition check_pq(const Family& family, std::size_t p, std::size_t q, const WideProperty& property = {});

/// Packing bound check: ν* <= 1/β with β from the fractional Helly routine
/// run on copies of the bodies proportional to the packing weights.
struct PackingBoundCheck
{
    Scalar beta_observed;
    bool holds = false;
    std::size_t copies = 0;
    std::size_t rounds = 0; ///< re-solves after adding the fractional witness
};

struct PqReport
{
    GroundSet ground;
    FractionalWeights transversal_weights;
    FractionalWeights packing_weights;
    Transversal transversal;
    /// nullopt when the copies family would exceed packing_copies_cap.
    std::optional<PackingBoundCheck> packing_bound;
    std::size_t enrichments = 0;

    const Scalar& tau_star() const { return transversal_weights.total; }
    const Scalar& nu_star() const { return packing_weights.total; }
};

PqReport pq_transversal(const Family& family,
                        std::size_t p,
                        std::size_t q,
                        const Scalar& delta,
                        const WideProperty& property = {},
                        const RoundingOptions& opts = {});

struct PartitionReport
{
    PqReport pq;
    std::vector<std::vector<std::size_t>> parts;
    std::vector<std::size_t> element_of_part; ///< transversal element index per part
};

/// Splits a family whose 2d-wise intersections are wide into parts whose
/// full intersections contain a transversal element.
PartitionReport partition_large_intersections(const Family& family,
                                              const Scalar& delta,
                                              const WideProperty& property = {},
                                              const RoundingOptions& opts = {});

} // namespace hellydiam
