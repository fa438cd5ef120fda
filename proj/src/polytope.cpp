#include "hellydiam/polytope.hpp"

#include "hellydiam/combinatorics.hpp"
#include "hellydiam/errors.hpp"
#include "hellydiam/lp.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <optional>

namespace hellydiam {

using detail::Matrix;

ConvexBody intersect(std::span<const ConvexBody> bodies)
{
    if (bodies.empty())
        throw ArgumentError("intersect: empty list");
    const std::size_t d = bodies.front().dim();
    std::vector<Point> rows;
    std::vector<Scalar> rhs;
    for (const auto& b : bodies) {
        if (b.dim() != d)
            throw ArgumentError("intersect: dimension mismatch");
        rows.insert(rows.end(), b.rows().begin(), b.rows().end());
        rhs.insert(rhs.end(), b.rhs().begin(), b.rhs().end());
    }
    return ConvexBody(d, std::move(rows), std::move(rhs));
}

ConvexBody intersect(const ConvexBody& a, const ConvexBody& b)
{
    const ConvexBody pair[] = {a, b};
    return intersect(std::span<const ConvexBody>(pair));
}

namespace {
std::vector<Point> clip_polygon(std::vector<Point> poly,
                                const std::vector<Point>& rows,
                                const std::vector<Scalar>& rhs,
                                std::span<const std::size_t> live);
}

ConvexBody intersect_compact(const ConvexBody& a, const ConvexBody& b)
{
    if (a.dim() == 2 && b.dim() == 2 && (a.has_cached_vertices() || b.has_cached_vertices())) {
        const ConvexBody& known = a.has_cached_vertices() ? a : b;
        const ConvexBody& other = a.has_cached_vertices() ? b : a;
        std::vector<std::size_t> live(other.num_rows());
        for (std::size_t i = 0; i < live.size(); ++i)
            live[i] = i;
        return ConvexBody::from_vertices(
            clip_polygon(detail::planar_hull(known.vertices()), other.rows(), other.rhs(), live));
    }
    ConvexBody joined = intersect(a, b);
    return ConvexBody::from_vertices(joined.vertices());
}

const std::vector<Point>& vertices(const ConvexBody& body)
{
    return body.vertices();
}

namespace {

bool lp_empty(const ConvexBody& body)
{
    Point zero(body.dim(), Scalar(0));
    return solve_lp(zero, body, Sense::Max).status == LpStatus::Infeasible;
}

[[noreturn]] void throw_empty_or_unbounded(const ConvexBody& body)
{
    if (lp_empty(body))
        throw EmptyBody();
    throw Unbounded();
}

} // namespace

bool is_empty(const ConvexBody& body)
{
    if (body.has_cached_vertices())
        return false;
    if (body.dim() > 2)
        return lp_empty(body);
    // Clipping is far cheaper than the simplex on long row lists.
    try {
        body.vertices();
        return false;
    } catch (const EmptyBody&) {
        return true;
    } catch (const Unbounded&) {
        return false;
    }
}

namespace {

std::vector<Point> vertices_1d(const ConvexBody& body)
{
    std::optional<Scalar> lo, hi;
    bool empty = false;
    for (std::size_t i = 0; i < body.num_rows(); ++i) {
        const Scalar& a = body.rows()[i][0];
        const Scalar& b = body.rhs()[i];
        if (a.is_zero()) {
            empty = empty || b < 0;
            continue;
        }
        Scalar bound = b / a;
        if (a > 0) {
            if (!hi || bound < *hi)
                hi = bound;
        } else if (!lo || bound > *lo) {
            lo = bound;
        }
    }
    if (empty || (lo && hi && *lo > *hi))
        throw EmptyBody();
    if (!lo || !hi)
        throw Unbounded();
    if (*lo == *hi)
        return {Point{*lo}};
    return {Point{*lo}, Point{*hi}};
}

// Half-plane index: 0 for angles in [0, π), 1 for [π, 2π).
int half(const Point& u)
{
    return (u[1] > 0 || (u[1].is_zero() && u[0] > 0)) ? 0 : 1;
}

Scalar cross2(const Point& u, const Point& w)
{
    return u[0] * w[1] - u[1] * w[0];
}

bool angle_less(const Point& u, const Point& w)
{
    int hu = half(u), hw = half(w);
    if (hu != hw)
        return hu < hw;
    return cross2(u, w) > 0;
}

bool same_angle(const Point& u, const Point& w)
{
    return cross2(u, w).is_zero() && u[0] * w[0] + u[1] * w[1] > 0;
}

std::optional<Point> line_intersection(const Point& a1, const Scalar& b1, const Point& a2, const Scalar& b2)
{
    Scalar det = cross2(a1, a2);
    if (det.is_zero())
        return std::nullopt;
    return Point{(b1 * a2[1] - b2 * a1[1]) / det, (a1[0] * b2 - a2[0] * b1) / det};
}

// Sutherland–Hodgman: clips a convex polygon (counterclockwise, possibly
// degenerate) by the given rows; lexicographically sorted vertices out.
std::vector<Point> clip_polygon(std::vector<Point> poly,
                                const std::vector<Point>& rows,
                                const std::vector<Scalar>& rhs,
                                std::span<const std::size_t> live)
{
    std::vector<Scalar> val;
    std::vector<Point> next;
    for (std::size_t i : live) {
        const Point& a = rows[i];
        const Scalar& b = rhs[i];
        val.resize(poly.size());
        bool all_in = true, all_out = true;
        for (std::size_t k = 0; k < poly.size(); ++k) {
            val[k] = a[0] * poly[k][0] + a[1] * poly[k][1] - b;
            all_in = all_in && val[k] <= 0;
            all_out = all_out && val[k] > 0;
        }
        if (all_in)
            continue;
        if (all_out)
            throw EmptyBody();
        next.clear();
        for (std::size_t k = 0; k < poly.size(); ++k) {
            std::size_t l = (k + 1) % poly.size();
            if (val[k] <= 0)
                next.push_back(poly[k]);
            if ((val[k] < 0 && val[l] > 0) || (val[k] > 0 && val[l] < 0)) {
                Scalar t = val[k] / (val[k] - val[l]);
                next.push_back(poly[k] + t * (poly[l] - poly[k]));
            }
        }
        // Consecutive duplicates only arise on degenerate polygons.
        next.erase(std::unique(next.begin(), next.end()), next.end());
        while (next.size() > 1 && next.front() == next.back())
            next.pop_back();
        std::swap(poly, next);
    }
    poly = detail::planar_hull(std::move(poly));
    std::sort(poly.begin(), poly.end());
    return poly;
}

std::vector<Point> vertices_2d(const ConvexBody& body)
{
    const auto& rows = body.rows();
    const auto& rhs = body.rhs();
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][0].is_zero() && rows[i][1].is_zero()) {
            if (rhs[i] < 0)
                throw EmptyBody();
            continue;
        }
        live.push_back(i);
    }

    // Bounded iff the normals positively span the plane: every angular gap
    // between consecutive distinct normals is below π.
    std::vector<std::size_t> order = live;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return angle_less(rows[x], rows[y]); });
    std::vector<std::size_t> distinct;
    for (std::size_t i : order)
        if (distinct.empty() || !same_angle(rows[distinct.back()], rows[i]))
            distinct.push_back(i);
    if (distinct.size() >= 2 && same_angle(rows[distinct.front()], rows[distinct.back()]))
        distinct.pop_back();
    bool spanning = distinct.size() >= 3;
    for (std::size_t k = 0; spanning && k < distinct.size(); ++k) {
        const Point& u = rows[distinct[k]];
        const Point& w = rows[distinct[(k + 1) % distinct.size()]];
        spanning = cross2(u, w) > 0;
    }
    if (!spanning)
        throw_empty_or_unbounded(body);

    // A positively spanning subset of at most four normals: u, plus the
    // neighbours of -u in angular order (or both sides of the line if -u
    // itself occurs).
    const Point& u = rows[distinct[0]];
    Point neg_u{-u[0], -u[1]};
    std::vector<std::size_t> basis{distinct[0]};
    std::size_t pos = 0;
    while (pos < distinct.size() && angle_less(rows[distinct[pos]], neg_u))
        ++pos;
    if (pos < distinct.size() && same_angle(rows[distinct[pos]], neg_u)) {
        basis.push_back(distinct[pos]);
        basis.push_back(distinct[pos - 1]);
        basis.push_back(distinct[(pos + 1) % distinct.size()]);
    } else {
        basis.push_back(distinct[pos - 1]);
        basis.push_back(distinct[pos % distinct.size()]);
    }

    std::vector<Point> poly;
    for (std::size_t x = 0; x < basis.size(); ++x)
        for (std::size_t y = x + 1; y < basis.size(); ++y) {
            auto p = line_intersection(rows[basis[x]], rhs[basis[x]], rows[basis[y]], rhs[basis[y]]);
            if (!p)
                continue;
            bool ok = true;
            for (std::size_t z : basis)
                ok = ok && rows[z][0] * (*p)[0] + rows[z][1] * (*p)[1] <= rhs[z];
            if (ok)
                poly.push_back(std::move(*p));
        }
    poly = detail::planar_hull(std::move(poly));
    if (poly.empty())
        throw EmptyBody();

    return clip_polygon(std::move(poly), rows, rhs, live);
}

// Rows scaled so the first nonzero entry has absolute value 1; duplicates
// (same normalized row, keep tightest rhs) are merged.
void normalized_rows(const ConvexBody& body, std::vector<Point>& rows, std::vector<Scalar>& rhs)
{
    std::vector<std::pair<Point, Scalar>> all;
    for (std::size_t i = 0; i < body.num_rows(); ++i) {
        const Point& r = body.rows()[i];
        auto it = std::find_if(r.begin(), r.end(), [](const Scalar& x) { return !x.is_zero(); });
        if (it == r.end()) {
            if (body.rhs()[i] < 0)
                throw EmptyBody();
            continue;
        }
        Scalar s = abs(*it);
        all.emplace_back((1 / s) * r, body.rhs()[i] / s);
    }
    std::sort(all.begin(), all.end());
    rows.clear();
    rhs.clear();
    for (auto& [r, b] : all) {
        if (!rows.empty() && rows.back() == r)
            continue; // sorted ascending: first occurrence has the smallest rhs
        rows.push_back(std::move(r));
        rhs.push_back(std::move(b));
    }
}

std::vector<Point> vertices_nd(const ConvexBody& body)
{
    const std::size_t d = body.dim();
    std::vector<Point> rows;
    std::vector<Scalar> rhs;
    normalized_rows(body, rows, rhs);
    ConvexBody reduced(d, rows, rhs);

    std::vector<Point> found;
    for_each_combination(rows.size(), d, [&](std::span<const std::size_t> idx) {
        Matrix a;
        Point b;
        for (std::size_t i : idx) {
            a.push_back(rows[i]);
            b.push_back(rhs[i]);
        }
        if (auto x = detail::solve_square(std::move(a), std::move(b)))
            if (reduced.contains(*x))
                found.push_back(std::move(*x));
        return true;
    });
    if (found.empty())
        throw_empty_or_unbounded(body);
    for (std::size_t i = 0; i < d; ++i) {
        Point e = unit_vector(d, i);
        if (solve_lp(e, reduced, Sense::Max).status != LpStatus::Optimal ||
            solve_lp(e, reduced, Sense::Min).status != LpStatus::Optimal)
            throw Unbounded();
    }
    detail::sort_unique(found);
    return found;
}

} // namespace

std::vector<Point> enumerate_vertices(const ConvexBody& body)
{
    switch (body.dim()) {
    case 1:
        return vertices_1d(body);
    case 2:
        return vertices_2d(body);
    default:
        return vertices_nd(body);
    }
}

HullDescription describe_hull(std::size_t dim, std::vector<Point> points)
{
    if (points.empty())
        throw ArgumentError("describe_hull: no points");
    for (const auto& p : points)
        if (p.size() != dim)
            throw ArgumentError("describe_hull: dimension mismatch");
    detail::sort_unique(points);

    HullDescription out;
    const Point& base = points.front();
    Matrix diffs;
    for (std::size_t i = 1; i < points.size(); ++i)
        diffs.push_back(points[i] - base);
    Matrix reduced = diffs;
    std::vector<std::size_t> pivots = detail::rref(reduced, dim);
    const std::size_t rank = pivots.size();

    if (rank < dim) {
        for (const Point& n : detail::null_space(reduced, dim)) {
            Scalar off = dot(n, base);
            out.rows.push_back(n);
            out.rhs.push_back(off);
            out.rows.push_back(Scalar(-1) * n);
            out.rhs.push_back(-off);
        }
        if (rank == 0) {
            out.extreme = {base};
            return out;
        }
        // The affine hull projects bijectively onto the pivot coordinates.
        std::vector<Point> projected;
        for (const auto& p : points) {
            Point q;
            for (std::size_t c : pivots)
                q.push_back(p[c]);
            projected.push_back(std::move(q));
        }
        HullDescription sub = describe_hull(rank, projected);
        for (std::size_t i = 0; i < sub.rows.size(); ++i) {
            Point row(dim, Scalar(0));
            for (std::size_t k = 0; k < rank; ++k)
                row[pivots[k]] = sub.rows[i][k];
            out.rows.push_back(std::move(row));
            out.rhs.push_back(sub.rhs[i]);
        }
        for (const auto& e : sub.extreme)
            for (std::size_t i = 0; i < points.size(); ++i)
                if (projected[i] == e) {
                    out.extreme.push_back(points[i]);
                    break;
                }
        std::sort(out.extreme.begin(), out.extreme.end());
        return out;
    }

    if (dim == 1) {
        out.rows = {Point{Scalar(1)}, Point{Scalar(-1)}};
        out.rhs = {points.back()[0], -points.front()[0]};
        out.extreme = {points.front(), points.back()};
        return out;
    }
    if (dim == 2) {
        std::vector<Point> hull = detail::planar_hull(points);
        for (std::size_t k = 0; k < hull.size(); ++k) {
            const Point& p = hull[k];
            const Point& q = hull[(k + 1) % hull.size()];
            Point n{q[1] - p[1], p[0] - q[0]};
            out.rhs.push_back(dot(n, p));
            out.rows.push_back(std::move(n));
        }
        std::sort(hull.begin(), hull.end());
        out.extreme = std::move(hull);
        return out;
    }

    // Facets from affinely independent d-subsets with all points on one side.
    std::vector<std::pair<Point, Scalar>> facets;
    for_each_combination(points.size(), dim, [&](std::span<const std::size_t> idx) {
        Matrix m;
        for (std::size_t k = 1; k < idx.size(); ++k)
            m.push_back(points[idx[k]] - points[idx[0]]);
        std::vector<Point> ns = detail::null_space(m, dim);
        if (ns.size() != 1)
            return true;
        Point n = ns.front();
        Scalar off = dot(n, points[idx[0]]);
        bool le = true, ge = true;
        for (const auto& p : points) {
            Scalar v = dot(n, p);
            le = le && v <= off;
            ge = ge && v >= off;
        }
        if (!le && !ge)
            return true;
        if (!le) {
            n = Scalar(-1) * n;
            off = -off;
        }
        auto it = std::find_if(n.begin(), n.end(), [](const Scalar& x) { return !x.is_zero(); });
        Scalar s = abs(*it);
        facets.emplace_back((1 / s) * n, off / s);
        return true;
    });
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    for (auto& [n, off] : facets) {
        out.rows.push_back(std::move(n));
        out.rhs.push_back(std::move(off));
    }
    // Extreme points: those not in the hull of the others, i.e. lying on at
    // least dim linearly independent facets.
    for (const auto& p : points) {
        Matrix tight;
        for (std::size_t i = 0; i < out.rows.size(); ++i)
            if (dot(out.rows[i], p) == out.rhs[i])
                tight.push_back(out.rows[i]);
        if (detail::rref(tight, dim).size() == dim)
            out.extreme.push_back(p);
    }
    return out;
}

Point directional_extremum(const ConvexBody& body, const Direction& v, Extremum which)
{
    if (v.dim() != body.dim())
        throw ArgumentError("directional_extremum: dimension mismatch");
    const auto& verts = body.vertices();
    const Point* best = nullptr;
    Scalar best_val;
    for (const auto& x : verts) {
        Scalar val = dot(v.coords(), x);
        bool better = which == Extremum::Min ? val < best_val : val > best_val;
        if (!best || better) {
            best = &x;
            best_val = std::move(val);
        }
    }
    return *best;
}

bool width_at_least(const Scalar& raw_gap, const Scalar& norm_sq, const Scalar& t)
{
    if (raw_gap < 0)
        return false;
    if (t <= 0)
        return true;
    return raw_gap * raw_gap >= t * t * norm_sq;
}

bool Width::at_least(const Scalar& t) const
{
    return width_at_least(raw_gap, norm_sq, t);
}

Width v_width(const ConvexBody& body, const Direction& v)
{
    Point lo = directional_extremum(body, v, Extremum::Min);
    Point hi = directional_extremum(body, v, Extremum::Max);
    Scalar gap = dot(v.coords(), hi) - dot(v.coords(), lo);
    return {std::move(gap), v.norm_sq(), Segment{std::move(lo), std::move(hi)}};
}

Diameter diameter(const ConvexBody& body)
{
    const auto& verts = body.vertices();
    Diameter out{Scalar(0), Segment{verts.front(), verts.front()}};
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            Scalar s = squared_distance(verts[i], verts[j]);
            if (s > out.squared) {
                out.squared = std::move(s);
                out.segment = Segment{verts[i], verts[j]};
            }
        }
    return out;
}

Point lex_min_point(const ConvexBody& body)
{
    return body.vertices().front();
}

} // namespace hellydiam

namespace hellydiam {

IntersectionCache::IntersectionCache(const Family& family) : family_(&family), id_(family.size())
{
    for (std::size_t i = 0; i < family.size(); ++i) {
        id_[i] = i;
        for (std::size_t j = 0; j < i; ++j)
            if (family[j] == family[i]) {
                id_[i] = id_[j];
                break;
            }
    }
}

const ConvexBody* IntersectionCache::get(std::span<const std::size_t> indices)
{
    if (indices.empty())
        throw ArgumentError("IntersectionCache: empty subfamily");
    std::vector<std::size_t> ids;
    for (std::size_t i : indices) {
        if (i >= family_->size())
            throw ArgumentError("IntersectionCache: index out of range");
        ids.push_back(id_[i]);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    const auto& entry = lookup(ids);
    return entry ? &*entry : nullptr;
}

const std::optional<ConvexBody>& IntersectionCache::lookup(const std::vector<std::size_t>& ids)
{
    if (auto it = memo_.find(ids); it != memo_.end())
        return it->second;
    std::optional<ConvexBody> value;
    if (ids.size() == 1) {
        const ConvexBody& body = (*family_)[ids[0]];
        if (!is_empty(body)) {
            body.vertices();
            value = body;
        }
    } else {
        std::vector<std::size_t> prefix(ids.begin(), ids.end() - 1);
        const auto& head = lookup(prefix);
        if (head) {
            try {
                value = intersect_compact(*head, (*family_)[ids.back()]);
            } catch (const EmptyBody&) {
            }
        }
    }
    return memo_.emplace(ids, std::move(value)).first->second;
}

} // namespace hellydiam
