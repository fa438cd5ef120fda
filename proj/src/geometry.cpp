#include "hellydiam/geometry.hpp"

#include "hellydiam/errors.hpp"
#include "hellydiam/polytope.hpp"

namespace hellydiam {

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b)
{
    if (a.size() != b.size())
        throw ArgumentError("dot: dimension mismatch");
    Scalar s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero())
            s += a[i] * b[i];
    return s;
}

Point operator-(const Point& a, const Point& b)
{
    if (a.size() != b.size())
        throw ArgumentError("difference: dimension mismatch");
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

Point operator+(const Point& a, const Point& b)
{
    if (a.size() != b.size())
        throw ArgumentError("sum: dimension mismatch");
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

Point operator*(const Scalar& s, const Point& p)
{
    Point r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        r[i] = s * p[i];
    return r;
}

Scalar squared_distance(const Point& a, const Point& b)
{
    Point d = a - b;
    return dot(d, d);
}

Point midpoint(const Point& a, const Point& b)
{
    return Scalar(1, 2) * (a + b);
}

Point unit_vector(std::size_t dim, std::size_t axis)
{
    if (axis >= dim)
        throw ArgumentError("unit_vector: axis out of range");
    Point e(dim, Scalar(0));
    e[axis] = 1;
    return e;
}

Direction::Direction(Point coords) : coords_(std::move(coords))
{
    if (coords_.empty())
        throw ArgumentError("direction must have positive dimension");
    bool nonzero = false;
    for (const auto& c : coords_)
        nonzero = nonzero || !c.is_zero();
    if (!nonzero)
        throw ArgumentError("direction must be nonzero");
}

Direction Direction::operator-() const
{
    return Direction(Scalar(-1) * coords_);
}

bool Direction::parallel_to(const Direction& other) const
{
    if (dim() != other.dim())
        return false;
    // a ~ b iff all 2x2 minors vanish.
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = i + 1; j < dim(); ++j)
            if (coords_[i] * other.coords_[j] != coords_[j] * other.coords_[i])
                return false;
    return true;
}

ConvexBody::ConvexBody(std::size_t dim, std::vector<Point> rows, std::vector<Scalar> rhs)
    : dim_(dim), rows_(std::move(rows)), rhs_(std::move(rhs)), cache_(std::make_shared<VertexCache>())
{
    if (dim_ == 0)
        throw ArgumentError("convex body must have positive dimension");
    if (rows_.size() != rhs_.size())
        throw ArgumentError("row count differs from right-hand side length");
    for (const auto& r : rows_)
        if (r.size() != dim_)
            throw ArgumentError("constraint row has wrong dimension");
}

ConvexBody ConvexBody::box(const Point& lo, const Point& hi)
{
    if (lo.size() != hi.size() || lo.empty())
        throw ArgumentError("box: bad corner dimensions");
    std::vector<Point> rows;
    std::vector<Scalar> rhs;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        rows.push_back(unit_vector(lo.size(), i));
        rhs.push_back(hi[i]);
        rows.push_back(Scalar(-1) * unit_vector(lo.size(), i));
        rhs.push_back(-lo[i]);
    }
    return ConvexBody(lo.size(), std::move(rows), std::move(rhs));
}

ConvexBody ConvexBody::halfspace(const Point& normal, const Scalar& offset)
{
    return ConvexBody(normal.size(), {normal}, {offset});
}

ConvexBody ConvexBody::from_vertices(std::vector<Point> points)
{
    if (points.empty())
        throw ArgumentError("from_vertices: no points");
    std::size_t dim = points.front().size();
    HullDescription h = describe_hull(dim, std::move(points));
    ConvexBody body(dim, std::move(h.rows), std::move(h.rhs));
    std::call_once(body.cache_->once, [&] {
        body.cache_->vertices = std::move(h.extreme);
        body.cache_->ready = true;
    });
    return body;
}

ConvexBody ConvexBody::segment(const Segment& s)
{
    return from_vertices({s.a, s.b});
}

bool ConvexBody::contains(const Point& x) const
{
    if (x.size() != dim_)
        throw ArgumentError("contains: dimension mismatch");
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (dot(rows_[i], x) > rhs_[i])
            return false;
    return true;
}

const std::vector<Point>& ConvexBody::vertices() const
{
    std::call_once(cache_->once, [this] {
        cache_->vertices = enumerate_vertices(*this);
        cache_->ready = true;
    });
    return cache_->vertices;
}

bool ConvexBody::has_cached_vertices() const
{
    return cache_->ready;
}

void Family::validate() const
{
    if (dim == 0)
        throw ArgumentError("family dimension must be positive");
    for (const auto& b : bodies)
        if (b.dim() != dim)
            throw ArgumentError("family member has wrong dimension");
}

Family Family::subfamily(std::span<const std::size_t> indices) const
{
    Family f;
    f.dim = dim;
    f.bodies.reserve(indices.size());
    for (std::size_t i : indices) {
        if (i >= bodies.size())
            throw ArgumentError("subfamily index out of range");
        f.bodies.push_back(bodies[i]);
    }
    return f;
}

} // namespace hellydiam
