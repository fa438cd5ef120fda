#include "hellydiam/tverberg_nets.hpp"

#include "hellydiam/combinatorics.hpp"
#include "hellydiam/errors.hpp"
#include "hellydiam/hull.hpp"
#include "hellydiam/polytope.hpp"
#include "hellydiam/sphere_caps.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace hellydiam {

std::vector<Point> union_vertices(const Family& family, std::span<const std::size_t> members)
{
    std::vector<Point> pts;
    for (std::size_t i : members)
        for (const Point& p : family[i].vertices())
            pts.push_back(p);
    detail::sort_unique(pts);
    return pts;
}

namespace {

Direction oriented(Point diff)
{
    auto it = std::find_if(diff.begin(), diff.end(), [](const Scalar& x) { return !x.is_zero(); });
    if (*it < 0)
        diff = Scalar(-1) * diff;
    return Direction(std::move(diff));
}

// Scale so the first nonzero coordinate is ±1; used to deduplicate normals.
Point projective_key(Point u)
{
    auto it = std::find_if(u.begin(), u.end(), [](const Scalar& x) { return !x.is_zero(); });
    Scalar s = abs(*it);
    for (auto& x : u)
        x /= s;
    return u;
}

struct Mode
{
    std::optional<Direction> fixed;
    Scalar delta;

    void check_members(const Family& family) const
    {
        for (std::size_t i = 0; i < family.size(); ++i) {
            bool wide = fixed ? v_width(family[i], *fixed).at_least(1) : diameter(family[i]).squared >= 1;
            if (!wide)
                throw PreconditionFailed("body " + std::to_string(i) + " is not wide", i);
        }
    }

    // Length floor (squared) every witness must meet.
    bool witness_ok(const Segment& s) const
    {
        if (fixed)
            return width_at_least(dot(fixed->coords(), s.b - s.a), fixed->norm_sq(), Scalar(1));
        Scalar floor = 1 - delta;
        return s.squared_length() >= floor * floor;
    }
};

struct Pigeonholed
{
    Direction axis;
    Scalar threshold;
    std::vector<std::size_t> hits;
    bool meets_bound = true;
};

Pigeonholed pigeonhole_members(const Family& family, const Mode& mode)
{
    std::vector<std::size_t> all(family.size());
    std::iota(all.begin(), all.end(), 0);
    if (mode.fixed)
        return {*mode.fixed, Scalar(1), all, true};
    std::vector<Direction> dirs;
    for (std::size_t i = 0; i < family.size(); ++i) {
        Segment s = diameter(family[i]).segment;
        dirs.push_back(oriented(s.b - s.a));
    }
    PigeonholeResult ph = pigeonhole_direction(dirs, CapParams{family.dim, mode.delta});
    bool parallel = true;
    for (std::size_t h : ph.hits)
        parallel = parallel && dirs[h].parallel_to(ph.axis);
    return {ph.axis, parallel ? Scalar(1) : Scalar(1 - mode.delta), ph.hits, ph.meets_bound};
}

// Region of points z such that every closed halfspace containing z meets at
// least k of the given members: {z : ⟨u,z⟩ <= k-th largest support value}
// over normals u that include every facet normal of every hull of a union
// of members.
class DepthRegion
{
public:
    DepthRegion(const Family& family, std::span<const std::size_t> members) : dim_(family.dim)
    {
        std::vector<Point> pts = union_vertices(family, members);
        std::set<Point> keys;
        auto add = [&](const Point& u) {
            if (std::all_of(u.begin(), u.end(), [](const Scalar& x) { return x.is_zero(); }))
                return;
            keys.insert(projective_key(u));
        };
        for (std::size_t i = 0; i < dim_; ++i)
            add(unit_vector(dim_, i));
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                Point diff = pts[j] - pts[i];
                add(diff);
                if (dim_ == 2)
                    add(Point{-diff[1], diff[0]});
            }
        if (dim_ >= 3) {
            if (binomial(pts.size(), dim_) > 200000)
                throw ResolutionError("depth region: too many vertex subsets for facet normals");
            for_each_combination(pts.size(), dim_, [&](std::span<const std::size_t> idx) {
                detail::Matrix m;
                for (std::size_t r = 1; r < idx.size(); ++r)
                    m.push_back(pts[idx[r]] - pts[idx[0]]);
                auto ns = detail::null_space(m, dim_);
                if (ns.size() == 1)
                    add(ns.front());
                return true;
            });
        }
        for (const Point& key : keys)
            for (const Point& u : {key, Scalar(-1) * key}) {
                std::vector<Scalar> support;
                for (std::size_t i : members) {
                    const auto& vs = family[i].vertices();
                    Scalar best = dot(u, vs.front());
                    for (const Point& p : vs)
                        best = std::max(best, dot(u, p));
                    support.push_back(std::move(best));
                }
                std::sort(support.begin(), support.end(), std::greater<>());
                normals_.push_back(u);
                support_.push_back(std::move(support));
            }
        members_ = members.size();
    }

    std::size_t members() const { return members_; }

    ConvexBody at(std::size_t k) const
    {
        std::vector<Scalar> rhs;
        for (const auto& s : support_)
            rhs.push_back(s[k - 1]);
        return ConvexBody(dim_, normals_, std::move(rhs));
    }

private:
    std::size_t dim_;
    std::size_t members_ = 0;
    std::vector<Point> normals_;
    std::vector<std::vector<Scalar>> support_;
};

std::optional<Segment> wide_segment(const ConvexBody& region, const Direction& axis, const Scalar& t)
{
    if (is_empty(region))
        return std::nullopt;
    Width w = v_width(region, axis);
    if (!w.at_least(t))
        return std::nullopt;
    return w.segment;
}

// Peels parts - 1 parts of 2d bodies off `pool`, each holding {x, y} in the
// hull of its vertex union; returns them followed by the remaining pool.
std::vector<std::vector<std::size_t>> peel(const Family& family,
                                           std::vector<std::size_t> pool,
                                           std::size_t parts,
                                           const Segment& witness)
{
    const std::size_t k = 2 * family.dim;
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t j = 0; j + 1 < parts; ++j) {
        std::vector<Point> pts;
        std::vector<std::size_t> source;
        std::set<Point> seen;
        for (std::size_t i : pool)
            for (const Point& p : family[i].vertices())
                if (seen.insert(p).second) {
                    pts.push_back(p);
                    source.push_back(i);
                }
        std::vector<std::vector<Point>> classes(k, pts);
        std::vector<std::size_t> pick = colorful_caratheodory_pair(classes, witness.a, witness.b);
        std::set<std::size_t> part;
        for (std::size_t s : pick)
            part.insert(source[s]);
        for (std::size_t i : pool) {
            if (part.size() >= k)
                break;
            part.insert(i);
        }
        std::erase_if(pool, [&](std::size_t i) { return part.count(i) > 0; });
        out.emplace_back(part.begin(), part.end());
    }
    out.push_back(std::move(pool));
    return out;
}

void verify_parts(const Family& family,
                  const std::vector<std::vector<std::size_t>>& parts,
                  std::span<const std::size_t> expected,
                  const Segment& witness,
                  const char* who)
{
    std::vector<std::size_t> seen;
    for (const auto& part : parts) {
        if (part.empty())
            throw InternalError(std::string(who) + ": empty part");
        seen.insert(seen.end(), part.begin(), part.end());
        if (!segment_in_hull(union_vertices(family, part), witness))
            throw InternalError(std::string(who) + ": witness escapes a part hull");
    }
    std::sort(seen.begin(), seen.end());
    std::vector<std::size_t> want(expected.begin(), expected.end());
    std::sort(want.begin(), want.end());
    if (seen != want)
        throw InternalError(std::string(who) + ": parts do not partition the members");
}

} // namespace

std::size_t tverberg_required_size(std::size_t dim, std::size_t m, const Scalar& delta, bool fixed_direction)
{
    if (m == 0)
        throw ArgumentError("tverberg: m must be positive");
    Scalar c = fixed_direction ? Scalar(1) : cap_fraction(CapParams{dim, delta});
    Scalar bound = Scalar(4 * dim * dim * (m - 1)) / c;
    Integer fl = numerator(bound) / denominator(bound);
    return static_cast<std::size_t>(fl) + 1;
}

TverbergResult tverberg_diameter(const Family& family, std::size_t m, const Scalar& delta, const NetOptions& opts)
{
    family.validate();
    CapParams{family.dim, delta}.validate();
    Mode mode{opts.direction, delta};
    const std::size_t d = family.dim;
    const std::size_t required = tverberg_required_size(d, m, delta, mode.fixed.has_value());
    if (family.size() < required)
        throw PreconditionFailed("tverberg: need at least " + std::to_string(required) + " bodies", required);
    mode.check_members(family);

    Pigeonholed ph = pigeonhole_members(family, mode);
    const std::size_t core_size = 4 * d * d * (m - 1) + 1;
    if (ph.hits.size() < core_size)
        throw ResolutionError("tverberg: pigeonhole captured too few bodies for the cap cover");
    std::vector<std::size_t> core(ph.hits.begin(), ph.hits.begin() + static_cast<std::ptrdiff_t>(core_size));
    std::sort(core.begin(), core.end());

    const std::size_t depth = 2 * d * (m - 1) + 1;
    DepthRegion region(family, core);
    std::optional<Segment> witness = wide_segment(region.at(depth), ph.axis, ph.threshold);
    if (!witness)
        throw InternalError("tverberg: depth region is thinner than the pigeonholed width");

    std::vector<std::vector<std::size_t>> parts = peel(family, core, m, *witness);
    std::set<std::size_t> in_core(core.begin(), core.end());
    for (std::size_t i = 0; i < family.size(); ++i)
        if (!in_core.count(i))
            parts.back().push_back(i);
    std::sort(parts.back().begin(), parts.back().end());

    std::vector<std::size_t> all(family.size());
    std::iota(all.begin(), all.end(), 0);
    verify_parts(family, parts, all, *witness, "tverberg");
    if (parts.size() != m || !mode.witness_ok(*witness))
        throw InternalError("tverberg: result failed verification");
    return {std::move(parts), *witness, ph.axis, ph.threshold, std::move(core), depth};
}

SelectionResult selection_diameter(const Family& family, const Scalar& delta, const NetOptions& opts, bool enumerate_cover)
{
    family.validate();
    CapParams{family.dim, delta}.validate();
    const std::size_t d = family.dim;
    const std::size_t k = 2 * d;
    if (family.size() < k)
        throw PreconditionFailed("selection: need at least 2d bodies", k);
    Mode mode{opts.direction, delta};
    mode.check_members(family);

    Pigeonholed ph = pigeonhole_members(family, mode);
    std::vector<std::size_t> core = ph.hits;
    std::sort(core.begin(), core.end());
    const std::size_t parts = (core.size() - 1) / (4 * d * d) + 1;

    DepthRegion region(family, core);
    std::size_t lo = 2 * d * (parts - 1) + 1, hi = core.size();
    std::optional<Segment> witness = wide_segment(region.at(lo), ph.axis, ph.threshold);
    if (!witness)
        throw InternalError("selection: depth region is thinner than the pigeonholed width");
    // Deepest wide level; regions shrink as the level grows.
    while (lo < hi) {
        std::size_t mid = (lo + hi + 1) / 2;
        if (auto w = wide_segment(region.at(mid), ph.axis, ph.threshold)) {
            lo = mid;
            witness = std::move(w);
        } else {
            hi = mid - 1;
        }
    }

    SelectionResult out;
    out.witness = *witness;
    out.core = core;
    out.parts = peel(family, core, parts, out.witness);
    verify_parts(family, out.parts, core, out.witness, "selection");
    if (!mode.witness_ok(out.witness))
        throw InternalError("selection: witness too short");

    if (enumerate_cover) {
        for_each_combination(family.size(), k, [&](std::span<const std::size_t> a) {
            PointCloudHull hull(d, union_vertices(family, a));
            if (hull.contains(out.witness))
                out.covered.emplace_back(a.begin(), a.end());
            return true;
        });
        if (out.covered.empty())
            throw InternalError("selection: no 2d-subset covers the witness");
        out.lambda_observed = Scalar(out.covered.size()) / Scalar(binomial(family.size(), k));
    }
    return out;
}

NetResult weak_net_diameter(const Family& family, const Scalar& epsilon, const Scalar& delta, const NetOptions& opts)
{
    family.validate();
    CapParams{family.dim, delta}.validate();
    if (family.size() == 0)
        throw ArgumentError("weak net: empty family");
    if (epsilon <= 0 || epsilon > 1)
        throw ArgumentError("weak net: epsilon must lie in (0, 1]");
    Mode mode{opts.direction, delta};
    mode.check_members(family);

    const std::size_t n = family.size();
    const std::size_t d = family.dim;
    Scalar need = epsilon * Scalar(n);
    Integer ceil_need = numerator(need) / denominator(need);
    if (Scalar(ceil_need) < need)
        ++ceil_need;
    const std::size_t s = std::max<std::size_t>(1, static_cast<std::size_t>(ceil_need));

    NetResult out;
    out.subset_size = s;
    std::vector<std::vector<std::size_t>> candidates;
    if (n <= opts.exhaustive_cap) {
        for_each_combination(n, s, [&](std::span<const std::size_t> idx) {
            candidates.emplace_back(idx.begin(), idx.end());
            return true;
        });
    } else {
        out.exhaustive = false;
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return family[a].vertices().front() < family[b].vertices().front();
        });
        for (std::size_t start = 0; start + s <= n; ++start) {
            std::vector<std::size_t> w(order.begin() + static_cast<std::ptrdiff_t>(start),
                                       order.begin() + static_cast<std::ptrdiff_t>(start + s));
            std::sort(w.begin(), w.end());
            candidates.push_back(std::move(w));
        }
        std::mt19937_64 rng(opts.seed);
        for (std::size_t r = 0; r < opts.random_subsets; ++r) {
            std::vector<std::size_t> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            for (std::size_t i = 0; i < s; ++i)
                std::swap(perm[i], perm[i + rng() % (n - i)]);
            perm.resize(s);
            std::sort(perm.begin(), perm.end());
            candidates.push_back(std::move(perm));
        }
    }

    auto covered = [&](const std::vector<std::size_t>& sub) {
        PointCloudHull hull(d, union_vertices(family, sub));
        return std::any_of(out.elements.begin(), out.elements.end(),
                           [&](const Segment& e) { return hull.contains(e); });
    };

    for (const auto& sub : candidates) {
        if (covered(sub))
            continue;
        Segment element;
        if (sub.size() >= 2 * d) {
            element = selection_diameter(family.subfamily(sub), delta, opts, false).witness;
        } else {
            const ConvexBody& body = family[sub.front()];
            element = mode.fixed ? v_width(body, *mode.fixed).segment : diameter(body).segment;
        }
        out.elements.push_back(std::move(element));
    }

    out.subfamilies_checked = candidates.size();
    for (const auto& e : out.elements)
        if (!mode.witness_ok(e))
            throw InternalError("weak net: element too short");
    for (const auto& sub : candidates)
        if (!covered(sub))
            throw InternalError("weak net: a checked subfamily has no net element");
    return out;
}

} // namespace hellydiam
