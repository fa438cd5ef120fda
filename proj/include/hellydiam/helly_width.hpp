#pragma once

#include "hellydiam/geometry.hpp"

#include <functional>
#include <span>
#include <variant>
#include <vector>

namespace hellydiam {

struct WidthWitness
{
    Segment segment;
    Direction direction;
    Scalar raw_gap; ///< ⟨v, b - a⟩
};

/// One body index per colour class.
struct RainbowChoice
{
    std::vector<std::size_t> indices;
};

template <typename Witness>
struct ClassWitness
{
    std::size_t index;
    Witness witness;
};

/// Segment [p, q] inside every member with v-width >= t. p is the
/// lexicographically perturbed v-minimum of the whole intersection, found as
/// the largest such minimum over d-subsets; q symmetrically.
/// Throws HypothesisFailed with an offending subset when some intersection
/// of at most 2d members is empty or too thin.
WidthWitness helly_width_witness(const Family& family, const Direction& v, const Scalar& t);

using ColorfulWidthResult = std::variant<ClassWitness<WidthWitness>, RainbowChoice>;

/// Either the first class whose full intersection has v-width >= t, or the
/// first rainbow choice (last class varying fastest) whose intersection is
/// empty or thinner than t. Requires exactly 2d nonempty classes.
ColorfulWidthResult colorful_helly_width(std::span<const Family> classes, const Direction& v, const Scalar& t);

struct FractionalWidthResult
{
    Segment pair;                     ///< v-minimum to the cut level of the anchor
    std::vector<std::size_t> members; ///< every member containing both endpoints
    Scalar beta_observed;             ///< |members| / n
    std::vector<std::size_t> anchor;  ///< the most frequently assigned (2d-1)-subset
    std::size_t good_subsets = 0;     ///< admitted 2d-subsets with v-width >= t
};

/// Fractional Helly for v-width. Each good 2d-subset is charged to the
/// (2d-1)-subset whose minimal top cut {⟨v,x⟩ <= L} keeping width t is
/// highest; the most charged one yields the returned pair.
/// Throws HypothesisFailed when no 2d-subset is good.
FractionalWidthResult fractional_helly_width(const Family& family, const Direction& v, const Scalar& t);

/// Same, counting only 2d-subsets accepted by `admit` as candidates.
FractionalWidthResult fractional_helly_width_restricted(const Family& family,
                                                        const Direction& v,
                                                        const Scalar& t,
                                                        const std::function<bool(std::span<const std::size_t>)>& admit);

} // namespace hellydiam
