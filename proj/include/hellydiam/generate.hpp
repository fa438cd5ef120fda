#pragma once

#include "hellydiam/geometry.hpp"
#include "hellydiam/serialize.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace hellydiam {

enum class Shape { Boxes, RandomHalfspaces, ShiftedCore };

Shape parse_shape(const std::string& name);
std::string shape_name(Shape shape);

/// Shape parameters (all rational, all optional):
///   boxes:             size (1), jitter (1/2)
///   random-halfspaces: radius (1), rows (2d + 2), extent (2), jitter (1)
///   shifted-core:      cores (1), miss (0), spread (1/2), extra (2)
/// shifted-core places `cores` unit segments along e1 (one at the origin, or
/// spread on a circle in the first coordinate plane) and makes each body the
/// hull of all but `miss` randomly chosen cores plus `extra` jitter points
/// per kept core. With miss = 0 every intersection contains a unit core; with
/// cores = 5, miss = 1 every four bodies still share one.
struct GeneratorSpec
{
    std::size_t dim = 2;
    std::size_t count = 0;
    Shape shape = Shape::ShiftedCore;
    std::uint64_t seed = 0;
    std::map<std::string, Scalar> params;
};

/// Deterministic in the spec; randomness comes only from raw mt19937_64 output.
Family generate(const GeneratorSpec& spec);

Json to_json(const GeneratorSpec& spec);

} // namespace hellydiam
