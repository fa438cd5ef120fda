#pragma once

#include "hellydiam/geometry.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace hellydiam {

enum class Extremum { Min, Max };

/// Row concatenation; vertex caches are not carried over.
ConvexBody intersect(std::span<const ConvexBody> bodies);
ConvexBody intersect(const ConvexBody& a, const ConvexBody& b);

/// Same set as intersect(a, b) but re-expressed from its vertex list, so the
/// row count stays proportional to the vertex count. Throws EmptyBody.
ConvexBody intersect_compact(const ConvexBody& a, const ConvexBody& b);

const std::vector<Point>& vertices(const ConvexBody& body);

/// Computes the vertex list from scratch. d = 1 scans rows, d = 2 clips a
/// polygon, d >= 3 enumerates d-subsets of (deduplicated) rows.
std::vector<Point> enumerate_vertices(const ConvexBody& body);

bool is_empty(const ConvexBody& body);

/// H-representation of conv(points) plus its extreme points (lex order).
/// Lower-dimensional hulls get equality row pairs for their affine span.
struct HullDescription
{
    std::vector<Point> rows;
    std::vector<Scalar> rhs;
    std::vector<Point> extreme;
};

HullDescription describe_hull(std::size_t dim, std::vector<Point> points);

/// Lexicographically smallest optimizer of ⟨v, x⟩; this is the exact limit of
/// perturbing v by (ε, ε², ..., ε^d) and is unique on every polytope.
Point directional_extremum(const ConvexBody& body, const Direction& v, Extremum which);

/// v-width as the exact pair (raw_gap, ⟨v,v⟩): width = raw_gap / sqrt(⟨v,v⟩).
struct Width
{
    Scalar raw_gap;
    Scalar norm_sq;
    Segment segment; ///< v-minimum to v-maximum

    /// width >= t, decided as raw_gap >= 0 and raw_gap² >= t²⟨v,v⟩.
    bool at_least(const Scalar& t) const;
};

bool width_at_least(const Scalar& raw_gap, const Scalar& norm_sq, const Scalar& t);

Width v_width(const ConvexBody& body, const Direction& v);

struct Diameter
{
    Scalar squared;
    Segment segment;
};

/// Squared diameter and the lexicographically first farthest vertex pair.
Diameter diameter(const ConvexBody& body);

/// Lexicographic minimum point of the body.
Point lex_min_point(const ConvexBody& body);

/// Memoized intersections of subfamilies. Bodies that compare equal share an
/// id, so subsets differing only in duplicate members share one entry. Each
/// entry is built from its prefix with intersect_compact. Not thread-safe.
class IntersectionCache
{
public:
    explicit IntersectionCache(const Family& family);

    /// Intersection of the given members, or nullptr when it is empty.
    const ConvexBody* get(std::span<const std::size_t> indices);

    const Family& family() const { return *family_; }

private:
    const Family* family_;
    std::vector<std::size_t> id_;
    std::map<std::vector<std::size_t>, std::optional<ConvexBody>> memo_;

    const std::optional<ConvexBody>& lookup(const std::vector<std::size_t>& ids);
};

} // namespace hellydiam
