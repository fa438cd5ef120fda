#pragma once

#include "hellydiam/geometry.hpp"

#include <optional>
#include <span>
#include <vector>

namespace hellydiam {

/// Convex coefficients λ >= 0, Σλ = 1, Σλ p = target, or nullopt when the
/// target lies outside conv(points). Solved as an exact LP.
std::optional<std::vector<Scalar>> hull_membership(std::span<const Point> points, const Point& target);

bool segment_in_hull(std::span<const Point> points, const Segment& s);

/// Repeated membership queries against one point cloud. Planar and linear
/// clouds are converted to an H-representation once; higher dimensions fall
/// back to the LP.
class PointCloudHull
{
public:
    PointCloudHull(std::size_t dim, std::vector<Point> points);

    bool contains(const Point& x) const;
    bool contains(const Segment& s) const { return contains(s.a) && contains(s.b); }
    const std::vector<Point>& points() const { return points_; }

private:
    std::size_t dim_;
    std::vector<Point> points_;
    std::optional<ConvexBody> body_;
};

struct RadonPartition
{
    std::vector<std::size_t> first;  ///< nonnegative coefficients (zeros included)
    std::vector<std::size_t> second; ///< negative coefficients
    Point point;
};

/// Radon partition of d + 2 points in R^d from the first kernel basis vector of
/// the affine dependence system, sign-normalized so its first nonzero entry is
/// positive.
RadonPartition radon_partition(std::span<const Point> points);

/// One index per class such that {x, y} ⊂ conv(selected points). Classes that
/// are all the same point set use an exact chord construction; otherwise the
/// selection space is searched exhaustively.
std::vector<std::size_t> colorful_caratheodory_pair(std::span<const std::vector<Point>> classes,
                                                    const Point& x,
                                                    const Point& y);

/// Affinely independent indices (so at most dim + 1) whose convex hull
/// contains `target`, by Carathéodory reduction of an LP certificate. Points
/// of the support lie in the smallest face of conv(points) containing the
/// target. nullopt when target is outside.
std::optional<std::vector<std::size_t>> caratheodory_support(std::span<const Point> points, const Point& target);

/// Affine hull dimension of a point set (-1 for an empty set).
int affine_dimension(std::span<const Point> points);

} // namespace hellydiam
