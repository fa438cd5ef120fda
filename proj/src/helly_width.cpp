#include "hellydiam/helly_width.hpp"

#include "hellydiam/combinatorics.hpp"
#include "hellydiam/errors.hpp"
#include "hellydiam/polytope.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace hellydiam {

namespace {

void check_family(const Family& family, const Direction& v)
{
    family.validate();
    if (family.size() == 0)
        throw ArgumentError("family is empty");
    if (v.dim() != family.dim)
        throw ArgumentError("direction dimension differs from family dimension");
}

// (⟨v,a⟩, a) < (⟨v,b⟩, b): order of the perturbed minimization.
bool min_key_less(const Point& a, const Point& b, const Direction& v)
{
    Scalar va = dot(v.coords(), a), vb = dot(v.coords(), b);
    if (va != vb)
        return va < vb;
    return a < b;
}

// (⟨v,a⟩, -a) < (⟨v,b⟩, -b): order of the perturbed maximization.
bool max_key_less(const Point& a, const Point& b, const Direction& v)
{
    Scalar va = dot(v.coords(), a), vb = dot(v.coords(), b);
    if (va != vb)
        return va < vb;
    return b < a;
}

bool thin(const ConvexBody* body, const Direction& v, const Scalar& t)
{
    return body == nullptr || !v_width(*body, v).at_least(t);
}

std::vector<std::size_t> find_thin_subset(IntersectionCache& cache, std::size_t n, std::size_t k, const Direction& v,
                                          const Scalar& t)
{
    std::vector<std::size_t> bad;
    for_each_combination(n, std::min(k, n), [&](std::span<const std::size_t> idx) {
        if (!thin(cache.get(idx), v, t))
            return true;
        bad.assign(idx.begin(), idx.end());
        return false;
    });
    return bad;
}

} // namespace

WidthWitness helly_width_witness(const Family& family, const Direction& v, const Scalar& t)
{
    check_family(family, v);
    const std::size_t n = family.size();
    const std::size_t d = family.dim;
    IntersectionCache cache(family);

    std::optional<Point> p, q;
    std::vector<std::size_t> empty_subset;
    for_each_combination(n, std::min(d, n), [&](std::span<const std::size_t> idx) {
        const ConvexBody* k = cache.get(idx);
        if (!k) {
            empty_subset.assign(idx.begin(), idx.end());
            return false;
        }
        Point lo = directional_extremum(*k, v, Extremum::Min);
        Point hi = directional_extremum(*k, v, Extremum::Max);
        if (!p || min_key_less(*p, lo, v))
            p = std::move(lo);
        if (!q || max_key_less(hi, *q, v))
            q = std::move(hi);
        return true;
    });
    if (!empty_subset.empty())
        throw HypothesisFailed("subfamily has empty intersection", empty_subset);

    Scalar gap = dot(v.coords(), *q) - dot(v.coords(), *p);
    bool ok = width_at_least(gap, v.norm_sq(), t);
    for (std::size_t i = 0; ok && i < n; ++i)
        ok = family[i].contains(*p) && family[i].contains(*q);
    if (ok)
        return {Segment{std::move(*p), std::move(*q)}, v, std::move(gap)};

    std::vector<std::size_t> bad = find_thin_subset(cache, n, 2 * d, v, t);
    if (!bad.empty())
        throw HypothesisFailed("subfamily intersection is empty or thinner than the threshold", bad);
    throw InternalError("helly_width_witness: witness failed verification although every 2d-subset is wide");
}

ColorfulWidthResult colorful_helly_width(std::span<const Family> classes, const Direction& v, const Scalar& t)
{
    const std::size_t d = v.dim();
    if (classes.size() != 2 * d)
        throw ArgumentError("colorful_helly_width: need exactly 2d colour classes");
    for (const auto& c : classes) {
        check_family(c, v);
    }

    for (std::size_t i = 0; i < classes.size(); ++i) {
        ConvexBody whole = intersect(classes[i].bodies);
        if (is_empty(whole))
            continue;
        Width w = v_width(whole, v);
        if (w.at_least(t))
            return ClassWitness<WidthWitness>{i, WidthWitness{w.segment, v, w.raw_gap}};
    }

    std::vector<std::size_t> sizes;
    for (const auto& c : classes)
        sizes.push_back(c.size());
    std::optional<RainbowChoice> found;
    for_each_product(sizes, [&](std::span<const std::size_t> choice) {
        std::vector<ConvexBody> picked;
        for (std::size_t c = 0; c < classes.size(); ++c)
            picked.push_back(classes[c][choice[c]]);
        ConvexBody meet = intersect(picked);
        if (!is_empty(meet) && v_width(meet, v).at_least(t))
            return true;
        found = RainbowChoice{{choice.begin(), choice.end()}};
        return false;
    });
    if (!found)
        throw InternalError("colorful_helly_width: no wide class and no thin rainbow choice");
    return *found;
}

namespace {

struct CutInfo
{
    Scalar level;  // L_A
    Point bottom;  // p_A
    Point top;     // q_A
};

// The top cut of ∩A at the lowest level keeping v-width t (as far as the
// rational upper bound on t‖v‖ allows).
CutInfo minimal_cut(const ConvexBody& body, const Direction& v, const Scalar& reach)
{
    Width w = v_width(body, v);
    Scalar low = dot(v.coords(), w.segment.a);
    Scalar level = low + std::min(reach, w.raw_gap);
    ConvexBody slice = intersect(body, ConvexBody(body.dim(), {v.coords(), Scalar(-1) * v.coords()}, {level, -level}));
    return {level, w.segment.a, slice.vertices().front()};
}

bool cut_higher(const CutInfo& a, const CutInfo& b)
{
    if (a.level != b.level)
        return a.level > b.level;
    return b.top < a.top;
}

} // namespace

FractionalWidthResult fractional_helly_width_restricted(const Family& family,
                                                        const Direction& v,
                                                        const Scalar& t,
                                                        const std::function<bool(std::span<const std::size_t>)>& admit)
{
    check_family(family, v);
    const std::size_t n = family.size();
    const std::size_t k = 2 * family.dim;
    IntersectionCache cache(family);
    const Scalar reach = t > 0 ? sqrt_upper(t * t * v.norm_sq()) : Scalar(0);

    std::map<std::vector<std::size_t>, CutInfo> cuts;
    std::map<std::vector<std::size_t>, std::size_t> charged;
    std::size_t good = 0;

    for_each_combination(n, k, [&](std::span<const std::size_t> b) {
        if (admit && !admit(b))
            return true;
        if (thin(cache.get(b), v, t))
            return true;
        ++good;
        const CutInfo* best = nullptr;
        std::vector<std::size_t> best_a;
        for (std::size_t drop = 0; drop < k; ++drop) {
            std::vector<std::size_t> a;
            for (std::size_t j = 0; j < k; ++j)
                if (j != drop)
                    a.push_back(b[j]);
            auto it = cuts.find(a);
            if (it == cuts.end())
                it = cuts.emplace(a, minimal_cut(*cache.get(a), v, reach)).first;
            // Later candidates have lexicographically smaller index vectors,
            // so ties go to them.
            if (!best || !cut_higher(*best, it->second)) {
                best = &it->second;
                best_a = std::move(a);
            }
        }
        ++charged[best_a];
        return true;
    });
    if (good == 0)
        throw HypothesisFailed("no 2d-subset has an intersection of the required width", {});

    const std::vector<std::size_t>* anchor = nullptr;
    std::size_t most = 0;
    for (const auto& [a, c] : charged)
        if (c > most) {
            most = c;
            anchor = &a;
        }

    const CutInfo& cut = cuts.at(*anchor);
    FractionalWidthResult out;
    out.pair = Segment{cut.bottom, cut.top};
    out.anchor = *anchor;
    out.good_subsets = good;
    for (std::size_t i = 0; i < n; ++i)
        if (family[i].contains(out.pair.a) && family[i].contains(out.pair.b))
            out.members.push_back(i);
    out.beta_observed = Scalar(out.members.size(), n);
    if (!width_at_least(dot(v.coords(), out.pair.b - out.pair.a), v.norm_sq(), t))
        throw InternalError("fractional_helly_width: pair is thinner than the threshold");
    return out;
}

FractionalWidthResult fractional_helly_width(const Family& family, const Direction& v, const Scalar& t)
{
    return fractional_helly_width_restricted(family, v, t, {});
}

} // namespace hellydiam
