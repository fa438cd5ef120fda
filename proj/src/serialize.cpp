#include "hellydiam/serialize.hpp"

#include "hellydiam/errors.hpp"

#include <cstdint>
#include <cstdio>
#include <limits>

namespace hellydiam {

namespace {

Json integer_json(const Integer& z)
{
    static const Integer lo = std::numeric_limits<std::int64_t>::min();
    static const Integer hi = std::numeric_limits<std::int64_t>::max();
    if (z >= lo && z <= hi)
        return static_cast<std::int64_t>(z);
    return z.str();
}

Integer integer_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Integer(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return Integer(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw ArgumentError("json: expected an integer");
}

} // namespace

Json to_json(const Scalar& x)
{
    return Json::array({integer_json(numerator(x)), integer_json(denominator(x))});
}

Scalar scalar_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Scalar(j.get<std::int64_t>());
    if (j.is_string())
        return parse_scalar(j.get<std::string>());
    if (!j.is_array() || j.size() != 2)
        throw ArgumentError("json: a rational is [numerator, denominator]");
    Integer den = integer_from_json(j[1]);
    if (den == 0)
        throw ArgumentError("json: zero denominator");
    return Scalar(integer_from_json(j[0]), den);
}

Json to_json(const Point& p)
{
    Json out = Json::array();
    for (const auto& x : p)
        out.push_back(to_json(x));
    return out;
}

Point point_from_json(const Json& j)
{
    if (!j.is_array())
        throw ArgumentError("json: a point is an array of rationals");
    Point p;
    for (const auto& x : j)
        p.push_back(scalar_from_json(x));
    return p;
}

Json to_json(const Segment& s)
{
    return Json{{"a", to_json(s.a)}, {"b", to_json(s.b)}};
}

Segment segment_from_json(const Json& j)
{
    return Segment{point_from_json(j.at("a")), point_from_json(j.at("b"))};
}

Json to_json(const ConvexBody& body)
{
    Json rows = Json::array();
    for (const auto& r : body.rows())
        rows.push_back(to_json(r));
    Json rhs = Json::array();
    for (const auto& b : body.rhs())
        rhs.push_back(to_json(b));
    return Json{{"A", rows}, {"b", rhs}};
}

ConvexBody body_from_json(const Json& j, std::size_t dim)
{
    if (!j.is_object() || !j.contains("A") || !j.contains("b"))
        throw ArgumentError("json: a body is {\"A\": rows, \"b\": rhs}");
    std::vector<Point> rows;
    for (const auto& r : j.at("A"))
        rows.push_back(point_from_json(r));
    std::vector<Scalar> rhs;
    for (const auto& b : j.at("b"))
        rhs.push_back(scalar_from_json(b));
    return ConvexBody(dim, std::move(rows), std::move(rhs));
}

Json to_json(const Family& family)
{
    Json bodies = Json::array();
    for (const auto& b : family.bodies)
        bodies.push_back(to_json(b));
    return Json{{"dim", family.dim}, {"bodies", bodies}};
}

Family family_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("dim") || !j.contains("bodies"))
        throw ArgumentError("json: a family is {\"dim\": d, \"bodies\": [...]}");
    Family f;
    f.dim = j.at("dim").get<std::size_t>();
    for (const auto& b : j.at("bodies"))
        f.bodies.push_back(body_from_json(b, f.dim));
    f.validate();
    return f;
}

Json to_json(const CapCover& cover)
{
    Json dirs = Json::array();
    for (const auto& d : cover.directions)
        dirs.push_back(to_json(d.coords()));
    return Json{{"dim", cover.params.dim},
                {"delta", to_json(cover.params.delta)},
                {"directions", dirs},
                {"verified", cover.status == CoverStatus::Verified}};
}

std::string digest(const Json& j)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : j.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace hellydiam
