#include "hellydiam/helly_diameter.hpp"

#include "hellydiam/combinatorics.hpp"
#include "hellydiam/errors.hpp"
#include "hellydiam/polytope.hpp"
#include "hellydiam/sphere_caps.hpp"

#include <algorithm>
#include <set>

namespace hellydiam {

namespace {

// b - a scaled so its first nonzero coordinate is positive.
Direction oriented(const Segment& s)
{
    Point diff = s.b - s.a;
    auto it = std::find_if(diff.begin(), diff.end(), [](const Scalar& x) { return !x.is_zero(); });
    if (*it < 0)
        diff = Scalar(-1) * diff;
    return Direction(std::move(diff));
}

} // namespace

FractionalDiameterResult fractional_helly_diameter(const Family& family, const Scalar& delta)
{
    family.validate();
    CapParams params{family.dim, delta};
    params.validate();
    const std::size_t n = family.size();
    const std::size_t k = 2 * family.dim;
    IntersectionCache cache(family);

    std::vector<std::vector<std::size_t>> good;
    std::vector<Direction> dirs;
    for_each_combination(n, k, [&](std::span<const std::size_t> b) {
        const ConvexBody* meet = cache.get(b);
        if (!meet)
            return true;
        Diameter diam = diameter(*meet);
        if (diam.squared < 1)
            return true;
        good.emplace_back(b.begin(), b.end());
        dirs.push_back(oriented(diam.segment));
        return true;
    });
    if (good.empty())
        throw HypothesisFailed("no 2d-subset has an intersection of diameter at least one", {});

    PigeonholeResult ph = pigeonhole_direction(dirs, params);
    std::set<std::vector<std::size_t>> captured;
    bool all_parallel = true;
    for (std::size_t h : ph.hits) {
        captured.insert(good[h]);
        all_parallel = all_parallel && dirs[h].parallel_to(ph.axis);
    }
    Scalar t = all_parallel ? Scalar(1) : Scalar(1 - delta);

    FractionalWidthResult fw = fractional_helly_width_restricted(
        family, ph.axis, t, [&](std::span<const std::size_t> b) {
            return captured.count(std::vector<std::size_t>(b.begin(), b.end())) > 0;
        });

    FractionalDiameterResult out{DiameterWitness{fw.pair, fw.pair.squared_length()},
                                 fw.members,
                                 fw.beta_observed,
                                 ph.axis,
                                 t,
                                 good.size(),
                                 captured.size()};
    Scalar floor = 1 - delta;
    if (out.witness.squared_length < floor * floor)
        throw InternalError("fractional_helly_diameter: witness shorter than 1 - delta");
    return out;
}

std::size_t colorful_diameter_classes_required(std::size_t dim, const Scalar& delta)
{
    CapParams params{dim, delta};
    return 2 * dim * build_cover(params).axes.size();
}

ColorfulDiameterResult colorful_helly_diameter(std::span<const Family> classes, const Scalar& delta)
{
    if (classes.empty())
        throw ArgumentError("colorful_helly_diameter: no colour classes");
    const std::size_t d = classes.front().dim;
    for (const auto& c : classes) {
        c.validate();
        if (c.dim != d || c.size() == 0)
            throw ArgumentError("colorful_helly_diameter: classes must be nonempty and share a dimension");
    }
    CapParams params{d, delta};
    params.validate();
    CapCover cover = build_cover(params);
    const std::size_t required = 2 * d * cover.axes.size();
    if (classes.size() < required)
        throw PreconditionFailed("colorful_helly_diameter: need " + std::to_string(required) + " colour classes",
                                 required);

    Scalar floor = 1 - delta;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        ConvexBody whole = intersect(classes[i].bodies);
        if (is_empty(whole))
            continue;
        Diameter diam = diameter(whole);
        if (diam.squared >= floor * floor)
            return ClassWitness<DiameterWitness>{i, DiameterWitness{diam.segment, diam.squared}};
    }

    // No class reaches 1 - δ, so along each axis every class is thinner than
    // 1 - δ and a thin rainbow tuple exists among that axis's classes.
    std::vector<std::size_t> choice(classes.size(), 0);
    for (std::size_t j = 0; j < cover.axes.size(); ++j) {
        const Direction& axis = cover.axes[j];
        std::span<const Family> group = classes.subspan(2 * d * j, 2 * d);
        std::vector<std::size_t> sizes;
        for (const auto& c : group)
            sizes.push_back(c.size());
        bool found = !for_each_product(sizes, [&](std::span<const std::size_t> pick) {
            std::vector<ConvexBody> bodies;
            for (std::size_t c = 0; c < group.size(); ++c)
                bodies.push_back(group[c][pick[c]]);
            ConvexBody meet = intersect(bodies);
            if (!is_empty(meet) && v_width(meet, axis).at_least(floor))
                return true;
            std::copy(pick.begin(), pick.end(), choice.begin() + static_cast<std::ptrdiff_t>(2 * d * j));
            return false;
        });
        if (!found)
            throw InternalError("colorful_helly_diameter: no thin rainbow tuple along a cover axis");
    }

    std::vector<ConvexBody> bodies;
    for (std::size_t c = 0; c < classes.size(); ++c)
        bodies.push_back(classes[c][choice[c]]);
    ConvexBody meet = intersect(bodies);
    ColourfulCounterexample out{RainbowChoice{choice}, std::nullopt};
    if (!is_empty(meet)) {
        out.diameter_squared = diameter(meet).squared;
        if (*out.diameter_squared >= 1)
            throw InternalError("colorful_helly_diameter: rainbow union is not thin");
    }
    return out;
}

} // namespace hellydiam
