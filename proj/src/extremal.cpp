#include "hellydiam/extremal.hpp"

#include "hellydiam/combinatorics.hpp"
#include "hellydiam/errors.hpp"
#include "hellydiam/polytope.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <unordered_map>

namespace hellydiam {

namespace {

using Vec = std::vector<double>;

// Evenly spread directions on the upper half circle / hemisphere (last
// coordinate >= 0), one per antipodal pair.
std::vector<Vec> spread_directions(std::size_t d, std::size_t count)
{
    std::vector<Vec> out;
    if (d == 2) {
        for (std::size_t j = 0; j < count; ++j) {
            double theta = std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(count);
            out.push_back({std::cos(theta), std::sin(theta)});
        }
        return out;
    }
    // Farthest-point sampling from a fixed pseudo-random pool.
    std::mt19937_64 rng(0x5eedULL + d);
    auto uniform = [&] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
    std::vector<Vec> pool;
    for (std::size_t i = 0; i < 16 * count + 64; ++i) {
        Vec g(d);
        double norm = 0;
        for (auto& x : g) {
            x = std::sqrt(-2 * std::log(uniform())) * std::cos(2 * std::numbers::pi * uniform());
            norm += x * x;
        }
        norm = std::sqrt(norm);
        if (g.back() < 0)
            norm = -norm;
        for (auto& x : g)
            x /= norm;
        pool.push_back(std::move(g));
    }
    std::vector<double> closeness(pool.size(), -1); // max |cos| to a chosen direction
    std::size_t next = 0;
    for (std::size_t j = 0; j < count; ++j) {
        out.push_back(pool[next]);
        std::size_t best = 0;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            double c = 0;
            for (std::size_t t = 0; t < d; ++t)
                c += pool[i][t] * pool[next][t];
            closeness[i] = std::max(closeness[i], std::abs(c));
            if (closeness[i] < closeness[best])
                best = i;
        }
        next = best;
    }
    return out;
}

Point negate(const Point& p)
{
    return Scalar(-1) * p;
}

} // namespace

Point half_sphere_point(const Vec& x, long long denom)
{
    const std::size_t d = x.size();
    std::vector<Scalar> y(d - 1);
    Scalar s = 0;
    for (std::size_t i = 0; i + 1 < d; ++i) {
        y[i] = floor_to(x[i] / (1 + x.back()), denom);
        s += y[i] * y[i];
    }
    Point p(d);
    for (std::size_t i = 0; i + 1 < d; ++i)
        p[i] = y[i] / (1 + s);
    p[d - 1] = (1 - s) / (2 * (1 + s));
    return p;
}

ClaimFamily build_claim_family(std::size_t d, std::size_t k)
{
    if (d == 1)
        throw Unsupported("claim family: d = 1 degenerates");
    if (d == 0 || k == 0)
        throw ArgumentError("claim family: need d >= 2 and k >= 1");
    const std::size_t n = 2 * d * k + 1;
    const std::size_t count = binomial(n, 2 * d);
    if (count > 200000)
        throw ResolutionError("claim family: too many antipodal pairs");
    std::vector<Vec> dirs = spread_directions(d, count);

    ClaimFamily cf;
    cf.d = d;
    cf.k = k;
    cf.norm_defect = 0;
    std::vector<Point> points;
    for (long long denom = 1LL << 6;; denom <<= 2) {
        if (denom > (1LL << 40))
            throw ResolutionError("claim family: could not separate the antipodal pairs");
        points.clear();
        std::set<Point> seen;
        bool distinct = true;
        for (const Vec& x : dirs) {
            Point p = half_sphere_point(x, denom);
            distinct = distinct && seen.insert(p).second && seen.insert(negate(p)).second;
            points.push_back(std::move(p));
        }
        if (distinct)
            break;
    }

    std::vector<std::vector<Point>> verts(n);
    std::size_t j = 0;
    for_each_combination(n, 2 * d, [&](std::span<const std::size_t> a) {
        const Point& p = points[j++];
        Scalar defect = abs(dot(p, p) - Scalar(1, 4));
        if (defect > cf.norm_defect)
            cf.norm_defect = defect;
        cf.pairs.emplace(std::vector<std::size_t>(a.begin(), a.end()), p);
        for (std::size_t i : a) {
            verts[i].push_back(p);
            verts[i].push_back(negate(p));
        }
        return true;
    });
    cf.family.dim = d;
    for (auto& v : verts)
        cf.family.bodies.push_back(ConvexBody::from_vertices(std::move(v)));
    return cf;
}

ClaimReport verify_claim(const ClaimFamily& cf, std::size_t partition_cap)
{
    const Family& fam = cf.family;
    const std::size_t n = fam.size();
    if (n != 2 * cf.d * cf.k + 1 || n > 63)
        throw ArgumentError("verify_claim: malformed claim family");

    // Squared diameter of the intersection over a member bitmask; -1 if empty.
    std::unordered_map<std::uint64_t, std::optional<ConvexBody>> bodies;
    std::unordered_map<std::uint64_t, Scalar> diam_sq;
    std::function<const std::optional<ConvexBody>&(std::uint64_t)> meet = [&](std::uint64_t mask) -> const std::optional<ConvexBody>& {
        auto it = bodies.find(mask);
        if (it != bodies.end())
            return it->second;
        int top = 63 - std::countl_zero(mask);
        std::uint64_t rest = mask & ~(std::uint64_t{1} << top);
        std::optional<ConvexBody> out;
        if (rest == 0) {
            out = fam[static_cast<std::size_t>(top)];
        } else if (const auto& prev = meet(rest)) {
            try {
                out = intersect_compact(*prev, fam[static_cast<std::size_t>(top)]);
            } catch (const EmptyBody&) {
            }
        }
        return bodies.emplace(mask, std::move(out)).first->second;
    };
    auto dsq = [&](std::uint64_t mask) {
        auto it = diam_sq.find(mask);
        if (it != diam_sq.end())
            return it->second;
        const auto& body = meet(mask);
        Scalar v = body ? diameter(*body).squared : Scalar(-1);
        diam_sq.emplace(mask, v);
        return v;
    };

    ClaimReport rep;
    rep.all_2d_wide = true;
    bool first = true;
    Scalar floor = 1 - 4 * cf.norm_defect;
    for (const auto& [a, v] : cf.pairs) {
        std::uint64_t mask = 0;
        for (std::size_t i : a) {
            mask |= std::uint64_t{1} << i;
            if (!fam[i].contains(v) || !fam[i].contains(negate(v)))
                rep.all_2d_wide = false;
        }
        Scalar x = dsq(mask);
        if (first || x < rep.worst_2d_diam_sq)
            rep.worst_2d_diam_sq = x;
        first = false;
        rep.all_2d_wide = rep.all_2d_wide && x >= floor;
        ++rep.subsets_checked;
    }

    rep.all_partitions_thin = true;
    first = true;
    for_each_set_partition(n, cf.k, [&](std::span<const std::size_t> rgs) {
        if (rep.partitions_checked == partition_cap) {
            rep.partial = true;
            return false;
        }
        std::vector<std::uint64_t> parts;
        for (std::size_t i = 0; i < n; ++i) {
            if (rgs[i] >= parts.size())
                parts.resize(rgs[i] + 1, 0);
            parts[rgs[i]] |= std::uint64_t{1} << i;
        }
        Scalar thinnest = dsq(parts.front());
        for (std::uint64_t m : parts)
            thinnest = std::min(thinnest, dsq(m));
        if (first || thinnest > rep.worst_part_diam_sq)
            rep.worst_part_diam_sq = thinnest;
        first = false;
        rep.all_partitions_thin = rep.all_partitions_thin && thinnest < 1;
        ++rep.partitions_checked;
        return true;
    });
    return rep;
}

} // namespace hellydiam
