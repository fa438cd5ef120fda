#include "hellydiam/pq.hpp"

#include "hellydiam/combinatorics.hpp"
#include "hellydiam/errors.hpp"
#include "hellydiam/helly_diameter.hpp"
#include "hellydiam/lp.hpp"
#include "hellydiam/polytope.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace hellydiam {

bool WideProperty::wide(const ConvexBody& body) const
{
    if (direction)
        return v_width(body, *direction).at_least(1);
    return diameter(body).squared >= 1;
}

Segment WideProperty::witness(const ConvexBody& body) const
{
    if (direction)
        return v_width(body, *direction).segment;
    return diameter(body).segment;
}

bool WideProperty::acceptable(const Segment& s, const Scalar& delta) const
{
    if (direction)
        return width_at_least(dot(direction->coords(), s.b - s.a), direction->norm_sq(), Scalar(1));
    Scalar floor = 1 - delta;
    return s.squared_length() >= floor * floor;
}

Segment shrink_segment(const Segment& s, const Scalar& target)
{
    Scalar len_sq = s.squared_length();
    if (len_sq <= target * target)
        return s;
    std::optional<Scalar> len = exact_sqrt(len_sq);
    Scalar factor = target / (len ? *len : sqrt_lower(len_sq));
    if (factor >= 1)
        return s;
    Point mid = midpoint(s.a, s.b);
    Point half = Scalar(factor / 2) * (s.b - s.a);
    Segment out{mid - half, mid + half};
    if (out.squared_length() < target * target)
        return s;
    return out;
}

namespace {

Segment canonical(Segment s)
{
    if (s.b < s.a)
        std::swap(s.a, s.b);
    return s;
}

void add_candidate(std::vector<Segment>& out, const Segment& s, const Scalar& delta, const WideProperty& property)
{
    out.push_back(canonical(property.direction ? s : shrink_segment(s, 1 - delta)));
}

void normalize(std::vector<Segment>& segs)
{
    std::sort(segs.begin(), segs.end());
    segs.erase(std::unique(segs.begin(), segs.end()), segs.end());
}

// cover[c][f]: body f contains candidate c.
std::vector<std::vector<bool>> containment(const Family& family, const GroundSet& gs)
{
    std::vector<std::vector<bool>> cover(gs.candidates.size(), std::vector<bool>(family.size()));
    for (std::size_t c = 0; c < gs.candidates.size(); ++c)
        for (std::size_t f = 0; f < family.size(); ++f)
            cover[c][f] = family[f].contains(gs.candidates[c]);
    return cover;
}

bool subset_of(const std::vector<bool>& a, const std::vector<bool>& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i])
            return false;
    return true;
}

// Candidates whose containment set is not dominated by another candidate's
// (ties keep the first). Dropping the others changes neither LP optimum.
std::vector<std::size_t> undominated(const std::vector<std::vector<bool>>& cover)
{
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < cover.size(); ++c) {
        if (std::none_of(cover[c].begin(), cover[c].end(), [](bool x) { return x; }))
            continue;
        bool dominated = false;
        for (std::size_t o = 0; o < cover.size() && !dominated; ++o) {
            if (o == c || !subset_of(cover[c], cover[o]))
                continue;
            dominated = cover[c] != cover[o] || o < c;
        }
        if (!dominated)
            keep.push_back(c);
    }
    return keep;
}

Integer lcm_of_denominators(std::span<const Scalar> xs)
{
    Integer m = 1;
    for (const auto& x : xs)
        m = boost::multiprecision::lcm(m, Integer(denominator(x)));
    return m;
}

Scalar ceil_of(const Scalar& x)
{
    Integer q = numerator(x) / denominator(x);
    if (Scalar(q) < x)
        ++q;
    return Scalar(q);
}

Family scaled_segments(std::size_t dim, const std::vector<Segment>& segs, const std::vector<std::size_t>& counts, const Scalar& scale)
{
    Family t{dim, {}};
    for (std::size_t c = 0; c < segs.size(); ++c) {
        if (counts[c] == 0)
            continue;
        ConvexBody body = ConvexBody::segment(Segment{scale * segs[c].a, scale * segs[c].b});
        for (std::size_t r = 0; r < counts[c]; ++r)
            t.bodies.push_back(body);
    }
    return t;
}

void require_wide(const Family& family, const WideProperty& property)
{
    for (std::size_t i = 0; i < family.size(); ++i)
        if (!property.wide(family[i]))
            throw PreconditionFailed("body " + std::to_string(i) + " is not wide", i);
}

} // namespace

GroundSet ground_set(const Family& family, const Scalar& delta, std::size_t q, const WideProperty& property)
{
    family.validate();
    const std::size_t k = 2 * family.dim;
    if (q < k)
        throw ArgumentError("ground_set: q must be at least 2d");
    if (delta < 0 || delta >= 1)
        throw ArgumentError("ground_set: delta must lie in [0, 1)");
    IntersectionCache cache(family);
    GroundSet gs{{}, delta};
    std::set<std::size_t> sizes{k, q};
    for (std::size_t size : sizes) {
        if (size > family.size())
            continue;
        for_each_combination(family.size(), size, [&](std::span<const std::size_t> idx) {
            const ConvexBody* meet = cache.get(idx);
            if (meet && property.wide(*meet))
                add_candidate(gs.candidates, property.witness(*meet), delta, property);
            return true;
        });
    }
    normalize(gs.candidates);
    return gs;
}

FractionalWeights fractional_transversal(const Family& family, const GroundSet& gs)
{
    auto cover = containment(family, gs);
    std::vector<std::size_t> uncovered;
    for (std::size_t f = 0; f < family.size(); ++f) {
        bool any = false;
        for (const auto& row : cover)
            any = any || row[f];
        if (!any)
            uncovered.push_back(f);
    }
    if (!uncovered.empty())
        throw GroundSetInsufficient(uncovered);

    std::vector<std::size_t> keep = undominated(cover);
    LinearProgram lp;
    lp.num_vars = keep.size();
    lp.sense = Sense::Min;
    lp.objective.assign(keep.size(), Scalar(1));
    for (std::size_t f = 0; f < family.size(); ++f) {
        std::vector<Scalar> row(keep.size());
        for (std::size_t j = 0; j < keep.size(); ++j)
            row[j] = cover[keep[j]][f] ? 1 : 0;
        lp.add(std::move(row), Relation::GreaterEq, Scalar(1));
    }
    LpSolution sol = solve(lp);
    if (sol.status != LpStatus::Optimal)
        throw InternalError("fractional_transversal: LP not optimal");
    FractionalWeights out{std::vector<Scalar>(gs.candidates.size()), sol.value};
    for (std::size_t j = 0; j < keep.size(); ++j)
        out.weights[keep[j]] = sol.x[j];
    return out;
}

FractionalWeights fractional_packing(const Family& family, const GroundSet& gs)
{
    auto cover = containment(family, gs);
    std::vector<std::size_t> keep = undominated(cover);
    const std::size_t n = family.size();
    LinearProgram lp;
    lp.num_vars = n;
    lp.sense = Sense::Max;
    lp.objective.assign(n, Scalar(1));
    std::vector<bool> bounded(n, false);
    for (std::size_t c : keep) {
        std::vector<Scalar> row(n);
        for (std::size_t f = 0; f < n; ++f)
            if (cover[c][f]) {
                row[f] = 1;
                bounded[f] = true;
            }
        lp.add(std::move(row), Relation::LessEq, Scalar(1));
    }
    for (std::size_t f = 0; f < n; ++f)
        if (!bounded[f]) {
            std::vector<Scalar> row(n);
            row[f] = 1;
            lp.add(std::move(row), Relation::LessEq, Scalar(1));
        }
    LpSolution sol = solve(lp);
    if (sol.status != LpStatus::Optimal)
        throw InternalError("fractional_packing: LP not optimal");
    return {sol.x, sol.value};
}

Transversal transversal_from_weights(const Family& family,
                                     const GroundSet& gs,
                                     const FractionalWeights& w,
                                     const Scalar& delta,
                                     const WideProperty& property,
                                     const RoundingOptions& opts)
{
    if (w.weights.size() != gs.candidates.size())
        throw ArgumentError("transversal_from_weights: weights do not match the ground set");
    const std::size_t d = family.dim;
    const std::size_t m = gs.candidates.size();

    // Integer copy counts: exact M·w when small enough, else ceil(D·w), which
    // keeps every body's share at least D.
    Integer big_m = lcm_of_denominators(w.weights);
    std::vector<std::size_t> counts(m);
    Scalar per_body;
    Scalar exact_total = Scalar(big_m) * w.total;
    if (exact_total <= Scalar(opts.multiset_cap)) {
        for (std::size_t c = 0; c < m; ++c)
            counts[c] = static_cast<std::size_t>(numerator(Scalar(big_m) * w.weights[c]));
        per_body = Scalar(big_m);
    } else {
        std::size_t support = std::count_if(w.weights.begin(), w.weights.end(), [](const Scalar& x) { return x > 0; });
        Scalar room = Scalar(opts.multiset_cap) / (w.total + Scalar(support));
        Integer dd = numerator(room) / denominator(room);
        if (dd < 1)
            dd = 1;
        for (std::size_t c = 0; c < m; ++c)
            counts[c] = static_cast<std::size_t>(numerator(ceil_of(Scalar(dd) * w.weights[c])));
        per_body = Scalar(dd);
    }
    std::size_t copies = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    if (copies == 0)
        throw GroundSetInsufficient({});
    Scalar epsilon = per_body / Scalar(copies);
    if (epsilon > 1)
        epsilon = 1;

    // Diameter mode works on the copies scaled up by 1/(1 - δ/2) so the net's
    // unit-length hypothesis holds; its loss δ/2 compounds to (1 - δ/2)².
    Scalar half = delta / 2;
    Scalar unit = property.direction ? Scalar(1) : Scalar(1 - half);
    Family t = scaled_segments(d, gs.candidates, counts, 1 / unit);
    std::vector<std::size_t> source;
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t r = 0; r < counts[c]; ++r)
            source.push_back(c);

    NetOptions net_opts = opts.net;
    net_opts.direction = property.direction;
    NetResult net = weak_net_diameter(t, epsilon, property.direction ? Scalar(1, 2) : half, net_opts);

    Transversal out;
    out.net_exhaustive = net.exhaustive;
    out.multiset_size = copies;
    for (const auto& e : net.elements)
        out.elements.push_back(Segment{unit * e.a, unit * e.b});

    for (std::size_t f = 0; f < family.size(); ++f) {
        if (std::any_of(out.elements.begin(), out.elements.end(), [&](const Segment& e) { return family[f].contains(e); }))
            continue;
        std::vector<std::size_t> inside;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (family[f].contains(gs.candidates[source[i]]))
                inside.push_back(i);
        if (inside.empty())
            throw GroundSetInsufficient({f});
        Segment element = gs.candidates[source[inside.front()]];
        if (inside.size() >= 2 * d) {
            Segment k = selection_diameter(t.subfamily(inside), property.direction ? Scalar(1, 2) : half, net_opts, false).witness;
            element = Segment{unit * k.a, unit * k.b};
        }
        out.elements.push_back(std::move(element));
        ++out.completed;
    }

    for (std::size_t f = 0; f < family.size(); ++f)
        if (std::none_of(out.elements.begin(), out.elements.end(), [&](const Segment& e) { return family[f].contains(e); }))
            throw InternalError("transversal: body " + std::to_string(f) + " contains no element");
    for (const auto& e : out.elements)
        if (!property.acceptable(e, delta))
            throw InternalError("transversal: element below the length floor");
    return out;
}

PqCondition check_pq(const Family& family, std::size_t p, std::size_t q, const WideProperty& property)
{
    family.validate();
    const std::size_t k = 2 * family.dim;
    if (!(family.size() >= p && p >= q && q >= k))
        throw ArgumentError("check_pq: need |family| >= p >= q >= 2d");
    IntersectionCache cache(family);
    std::map<std::vector<std::size_t>, bool> wide;
    auto is_wide = [&](const std::vector<std::size_t>& idx) {
        auto it = wide.find(idx);
        if (it != wide.end())
            return it->second;
        const ConvexBody* meet = cache.get(idx);
        bool w = meet && property.wide(*meet);
        wide.emplace(idx, w);
        return w;
    };
    PqCondition out{p, q, true, std::nullopt};
    for_each_combination(family.size(), p, [&](std::span<const std::size_t> ps) {
        bool found = !for_each_combination(p, q, [&](std::span<const std::size_t> qs) {
            std::vector<std::size_t> idx;
            for (std::size_t j : qs)
                idx.push_back(ps[j]);
            return !is_wide(idx);
        });
        if (found)
            return true;
        out.holds = false;
        out.violator = std::vector<std::size_t>(ps.begin(), ps.end());
        return false;
    });
    return out;
}

namespace {

struct Fractional
{
    Segment pair;
    Scalar beta;
};

std::optional<std::pair<Fractional, std::size_t>> packing_copies_pair(const Family& family,
                                                                      const FractionalWeights& packing,
                                                                      const Scalar& delta,
                                                                      const WideProperty& property,
                                                                      std::size_t cap)
{
    const std::size_t k = 2 * family.dim;
    Integer big_m = lcm_of_denominators(packing.weights);
    std::vector<Integer> counts;
    Integer smallest = 0;
    for (const auto& x : packing.weights) {
        counts.push_back(numerator(Scalar(big_m) * x));
        if (counts.back() > 0 && (smallest == 0 || counts.back() < smallest))
            smallest = counts.back();
    }
    if (smallest == 0)
        return std::nullopt;
    // Every weighted body gets at least 2d copies so some 2d-subset is wide.
    Integer factor = (Integer(k) + smallest - 1) / smallest;
    Integer total = 0;
    for (auto& c : counts) {
        c *= factor;
        total += c;
    }
    if (total > Integer(cap))
        return std::nullopt;
    Family copies{family.dim, {}};
    for (std::size_t f = 0; f < family.size(); ++f)
        for (Integer r = 0; r < counts[f]; ++r)
            copies.bodies.push_back(family[f]);
    Fractional out;
    if (property.direction) {
        FractionalWidthResult r = fractional_helly_width(copies, *property.direction, Scalar(1));
        out = {r.pair, r.beta_observed};
    } else {
        FractionalDiameterResult r = fractional_helly_diameter(copies, delta);
        out = {r.witness.segment, r.beta_observed};
    }
    return std::make_pair(out, copies.size());
}

} // namespace

PqReport pq_transversal(const Family& family,
                        std::size_t p,
                        std::size_t q,
                        const Scalar& delta,
                        const WideProperty& property,
                        const RoundingOptions& opts)
{
    if (delta <= 0 || delta >= 1)
        throw ArgumentError("pq_transversal: delta must lie in (0, 1)");
    PqCondition cond = check_pq(family, p, q, property);
    if (!cond.holds)
        throw PreconditionFailed("pq_transversal: the (p,q) condition fails", p);
    require_wide(family, property);

    const Scalar half = delta / 2;
    PqReport out;
    out.ground = ground_set(family, half, q, property);

    auto solve_both = [&] {
        while (true) {
            try {
                out.transversal_weights = fractional_transversal(family, out.ground);
                break;
            } catch (const GroundSetInsufficient& e) {
                for (std::size_t f : e.uncovered())
                    add_candidate(out.ground.candidates, property.witness(family[f]), half, property);
                normalize(out.ground.candidates);
                ++out.enrichments;
            }
        }
        out.packing_weights = fractional_packing(family, out.ground);
        if (out.packing_weights.total != out.transversal_weights.total)
            throw InternalError("pq_transversal: LP duality gap");
    };
    solve_both();

    for (std::size_t round = 0; round < 8; ++round) {
        auto found = packing_copies_pair(family, out.packing_weights, half, property, opts.packing_copies_cap);
        if (!found) {
            out.packing_bound.reset();
            break;
        }
        const auto& [frac, copies] = *found;
        PackingBoundCheck check{frac.beta, out.nu_star() * frac.beta <= 1, copies, round};
        out.packing_bound = check;
        if (check.holds)
            break;
        // The fractional witness was missing from the ground set; add it and
        // re-solve so its packing constraint is enforced.
        std::size_t before = out.ground.candidates.size();
        add_candidate(out.ground.candidates, frac.pair, half, property);
        normalize(out.ground.candidates);
        if (out.ground.candidates.size() == before)
            break;
        solve_both();
    }

    out.transversal = transversal_from_weights(family, out.ground, out.transversal_weights, delta, property, opts);
    return out;
}

PartitionReport partition_large_intersections(const Family& family,
                                              const Scalar& delta,
                                              const WideProperty& property,
                                              const RoundingOptions& opts)
{
    const std::size_t k = 2 * family.dim;
    if (family.size() < k) {
        // Fewer than 2d bodies: the whole family is one wide intersection.
        family.validate();
        ConvexBody whole = intersect(family.bodies);
        if (is_empty(whole) || !property.wide(whole))
            throw PreconditionFailed("partition: the family's intersection is not wide", k);
        PartitionReport out;
        std::vector<std::size_t> all(family.size());
        std::iota(all.begin(), all.end(), 0);
        out.parts.push_back(all);
        out.pq.transversal.elements.push_back(property.witness(whole));
        out.element_of_part.push_back(0);
        return out;
    }
    PqCondition cond = check_pq(family, k, k, property);
    if (!cond.holds)
        throw PreconditionFailed("partition: some 2d-subset intersection is not wide", k);

    PartitionReport out;
    out.pq = pq_transversal(family, k, k, delta, property, opts);
    const auto& elements = out.pq.transversal.elements;
    std::map<std::size_t, std::vector<std::size_t>> fibers;
    for (std::size_t f = 0; f < family.size(); ++f) {
        auto it = std::find_if(elements.begin(), elements.end(), [&](const Segment& e) { return family[f].contains(e); });
        fibers[static_cast<std::size_t>(it - elements.begin())].push_back(f);
    }
    for (auto& [e, members] : fibers) {
        ConvexBody meet = intersect(family.subfamily(members).bodies);
        if (!meet.contains(elements[e]))
            throw InternalError("partition: part intersection misses its element");
        bool ok = property.direction ? v_width(meet, *property.direction).at_least(1)
                                     : diameter(meet).squared >= (1 - delta) * (1 - delta);
        if (!ok)
            throw InternalError("partition: part intersection is too thin");
        out.parts.push_back(std::move(members));
        out.element_of_part.push_back(e);
    }
    return out;
}

} // namespace hellydiam
