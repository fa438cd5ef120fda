#pragma once

#include "hellydiam/rational.hpp"

#include <atomic>
#include <cstddef>
#include <exception>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace hellydiam {

using Point = std::vector<Scalar>;

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b);
Point operator-(const Point& a, const Point& b);
Point operator+(const Point& a, const Point& b);
Point operator*(const Scalar& s, const Point& p);
Scalar squared_distance(const Point& a, const Point& b);
Point midpoint(const Point& a, const Point& b);
Point unit_vector(std::size_t dim, std::size_t axis);

/// Nonzero vector read projectively up to positive scaling: v and 2v name the
/// same direction, v and -v do not. Norms never enter predicates directly;
/// callers compare squares against ⟨v,v⟩.
class Direction
{
public:
    explicit Direction(Point coords);

    const Point& coords() const { return coords_; }
    std::size_t dim() const { return coords_.size(); }
    const Scalar& operator[](std::size_t i) const { return coords_[i]; }
    Scalar norm_sq() const { return dot(coords_, coords_); }
    Direction operator-() const;

    /// Same line through the origin (v ~ cv for any c != 0).
    bool parallel_to(const Direction& other) const;

    friend bool operator==(const Direction&, const Direction&) = default;

private:
    Point coords_;
};

struct Segment
{
    Point a;
    Point b;

    Scalar squared_length() const { return squared_distance(a, b); }
    std::size_t dim() const { return a.size(); }
    friend bool operator==(const Segment&, const Segment&) = default;
    friend auto operator<=>(const Segment&, const Segment&) = default;
};

/// Rational H-polytope {x : A x <= b}. Immutable after construction; the vertex
/// list is computed on first use and shared between copies.
class ConvexBody
{
public:
    ConvexBody(std::size_t dim, std::vector<Point> rows, std::vector<Scalar> rhs);

    static ConvexBody box(const Point& lo, const Point& hi);
    static ConvexBody halfspace(const Point& normal, const Scalar& offset);
    /// H-representation of conv(points); the vertex cache is filled with the
    /// extreme points.
    static ConvexBody from_vertices(std::vector<Point> points);
    static ConvexBody segment(const Segment& s);

    std::size_t dim() const { return dim_; }
    std::size_t num_rows() const { return rows_.size(); }
    const std::vector<Point>& rows() const { return rows_; }
    const std::vector<Scalar>& rhs() const { return rhs_; }

    bool contains(const Point& x) const;
    bool contains(const Segment& s) const { return contains(s.a) && contains(s.b); }

    /// Exact vertex set in lexicographic order. Throws EmptyBody or Unbounded.
    const std::vector<Point>& vertices() const;
    bool has_cached_vertices() const;

    friend bool operator==(const ConvexBody& x, const ConvexBody& y)
    {
        return x.dim_ == y.dim_ && x.rows_ == y.rows_ && x.rhs_ == y.rhs_;
    }

private:
    struct VertexCache
    {
        std::once_flag once;
        std::vector<Point> vertices;
        std::atomic<bool> ready{false};
    };

    std::size_t dim_;
    std::vector<Point> rows_;
    std::vector<Scalar> rhs_;
    std::shared_ptr<VertexCache> cache_;
};

struct Family
{
    std::size_t dim = 0;
    std::vector<ConvexBody> bodies;

    std::size_t size() const { return bodies.size(); }
    const ConvexBody& operator[](std::size_t i) const { return bodies[i]; }
    /// Throws ArgumentError unless every body has dimension `dim`.
    void validate() const;
    Family subfamily(std::span<const std::size_t> indices) const;
};

} // namespace hellydiam
