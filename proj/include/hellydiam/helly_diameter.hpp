#pragma once

#include "hellydiam/helly_width.hpp"

#include <optional>
#include <span>
#include <variant>

namespace hellydiam {

struct DiameterWitness
{
    Segment segment;
    Scalar squared_length;
};

struct FractionalDiameterResult
{
    DiameterWitness witness;
    std::vector<std::size_t> members;
    Scalar beta_observed;
    Direction axis;           ///< pigeonholed direction
    Scalar width_threshold;   ///< v-width demanded along the axis
    std::size_t good_subsets = 0;
    std::size_t captured_subsets = 0;
};

/// Fractional Helly for diameter: the diameter directions of all 2d-subsets
/// with diameter >= 1 are pigeonholed into one double cap of angle
/// acos(1 - δ); the captured subsets have axis-width >= 1 - δ (>= 1 when
/// every captured direction is the axis itself) and are fed to the
/// fractional v-width routine. Throws HypothesisFailed without a good
/// subset.
FractionalDiameterResult fractional_helly_diameter(const Family& family, const Scalar& delta);

struct ColourfulCounterexample
{
    RainbowChoice choice;
    /// Squared diameter of the choice's intersection; nullopt when empty.
    std::optional<Scalar> diameter_squared;
};

using ColorfulDiameterResult = std::variant<ClassWitness<DiameterWitness>, ColourfulCounterexample>;

/// 2d times the number of cover axes of build_cover(d, δ).
std::size_t colorful_diameter_classes_required(std::size_t dim, const Scalar& delta);

/// Either the first class whose intersection has diameter >= 1 - δ, or a
/// rainbow choice whose intersection has diameter < 1: for every cover axis
/// a rainbow 2d-tuple thin along that axis is found among that axis's own
/// 2d classes, and the union of these tuples is returned. Throws
/// PreconditionFailed (carrying the required count) with too few classes.
ColorfulDiameterResult colorful_helly_diameter(std::span<const Family> classes, const Scalar& delta);

} // namespace hellydiam
