#pragma once

#include "hellydiam/geometry.hpp"
#include "hellydiam/sphere_caps.hpp"

#include <json.hpp>

#include <string>

namespace hellydiam {

using Json = nlohmann::ordered_json;

/// [numerator, denominator]; components outside int64 become decimal strings.
Json to_json(const Scalar& x);
Scalar scalar_from_json(const Json& j);

Json to_json(const Point& p);
Point point_from_json(const Json& j);

/// {"a": point, "b": point}
Json to_json(const Segment& s);
Segment segment_from_json(const Json& j);

/// {"A": rows, "b": rhs}
Json to_json(const ConvexBody& body);
ConvexBody body_from_json(const Json& j, std::size_t dim);

/// {"dim": d, "bodies": [...]}
Json to_json(const Family& family);
Family family_from_json(const Json& j);

Json to_json(const CapCover& cover);

/// 64-bit FNV-1a of the compact dump, as 16 hex digits.
std::string digest(const Json& j);

} // namespace hellydiam
