#include "generators.hpp"

#include "hellydiam/errors.hpp"
#include "hellydiam/generate.hpp"
#include "hellydiam/pq.hpp"

#include <doctest.h>

using namespace hellydiam;

namespace {

ConvexBody hull_of(std::initializer_list<Segment> segs)
{
    std::vector<Point> pts;
    for (const auto& s : segs) {
        pts.push_back(s.a);
        pts.push_back(s.b);
    }
    return ConvexBody::from_vertices(pts);
}

// Three candidates at the corners of a large triangle, each body the hull of
// two of them: the triangle hypergraph with τ* = ν* = 3/2.
std::pair<Family, GroundSet> triangle_instance()
{
    Segment a{Point{0, 0}, Point{1, 0}}, b{Point{20, 0}, Point{21, 0}}, c{Point{10, 20}, Point{11, 20}};
    Family f{2, {hull_of({a, b}), hull_of({b, c}), hull_of({a, c})}};
    return {f, GroundSet{{a, b, c}, 0}};
}

// Random candidates; every body is the hull of a random nonempty subset.
std::pair<Family, GroundSet> random_instance(testgen::Gen& g)
{
    std::size_t m = 2 + g.below(6), n = 2 + g.below(7);
    GroundSet gs{{}, 0};
    for (std::size_t c = 0; c < m; ++c)
        gs.candidates.push_back(testgen::centred(g.point(2, -20, 20, 2), g.nonzero(2, 2)));
    Family f{2, {}};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Point> pts;
        for (std::size_t c = 0; c < m; ++c)
            if (g.coin() || (c + 1 == m && pts.empty())) {
                pts.push_back(gs.candidates[c].a);
                pts.push_back(gs.candidates[c].b);
            }
        f.bodies.push_back(ConvexBody::from_vertices(pts));
    }
    return {f, gs};
}

Family four_wise_family(std::uint64_t seed, std::size_t n)
{
    GeneratorSpec spec;
    spec.dim = 2;
    spec.count = n;
    spec.seed = seed;
    spec.params["cores"] = 5;
    spec.params["miss"] = 1;
    return generate(spec);
}

} // namespace

TEST_CASE("shrinking segments")
{
    Segment s{Point{0, 0}, Point{2, 0}};
    CHECK(shrink_segment(s, 1) == Segment{Point{Scalar(1, 2), 0}, Point{Scalar(3, 2), 0}});
    CHECK(shrink_segment(s, 3) == s);
    Segment diag{Point{0, 0}, Point{1, 1}};
    Segment t = shrink_segment(diag, 1);
    CHECK(t.squared_length() >= 1);
    CHECK(t.squared_length() < 1 + Scalar(1, 1000000));
    CHECK(midpoint(t.a, t.b) == midpoint(diag.a, diag.b));
}

TEST_CASE("triangle hypergraph has value three halves")
{
    auto [f, gs] = triangle_instance();
    FractionalWeights tau = fractional_transversal(f, gs);
    FractionalWeights nu = fractional_packing(f, gs);
    CHECK(tau.total == Scalar(3, 2));
    CHECK(nu.total == Scalar(3, 2));
    for (const auto& w : tau.weights)
        CHECK(w == Scalar(1, 2));
}

TEST_CASE("uncovered bodies are reported")
{
    auto [f, gs] = triangle_instance();
    f.bodies.push_back(ConvexBody::box(Point{50, 50}, Point{52, 52}));
    try {
        fractional_transversal(f, gs);
        FAIL("expected GroundSetInsufficient");
    } catch (const GroundSetInsufficient& e) {
        CHECK(e.uncovered() == std::vector<std::size_t>{3});
    }
}

TEST_CASE("property: transversal and packing are feasible with equal totals")
{
    testgen::Gen g(91);
    for (int trial = 0; trial < 150; ++trial) {
        auto [f, gs] = random_instance(g);
        FractionalWeights tau = fractional_transversal(f, gs);
        FractionalWeights nu = fractional_packing(f, gs);
        CHECK(tau.total == nu.total);
        Scalar sum = 0;
        for (const auto& w : tau.weights) {
            CHECK(w >= 0);
            sum += w;
        }
        CHECK(sum == tau.total);
        for (std::size_t i = 0; i < f.size(); ++i) {
            Scalar cover = 0;
            for (std::size_t c = 0; c < gs.candidates.size(); ++c)
                if (f[i].contains(gs.candidates[c]))
                    cover += tau.weights[c];
            CHECK(cover >= 1);
        }
        for (std::size_t c = 0; c < gs.candidates.size(); ++c) {
            Scalar load = 0;
            for (std::size_t i = 0; i < f.size(); ++i)
                if (f[i].contains(gs.candidates[c]))
                    load += nu.weights[i];
            CHECK(load <= 1);
        }
    }
}

TEST_CASE("ground set candidates meet the length floor")
{
    Family f = four_wise_family(3, 7);
    Scalar delta(1, 8);
    GroundSet gs = ground_set(f, delta, 4);
    CHECK_FALSE(gs.candidates.empty());
    for (const auto& c : gs.candidates)
        CHECK(c.squared_length() >= (1 - delta) * (1 - delta));
    CHECK_THROWS_AS(ground_set(f, delta, 3), ArgumentError);
    CHECK_THROWS_AS(ground_set(f, Scalar(1), 4), ArgumentError);
}

TEST_CASE("(p,q) condition checks")
{
    Family f = four_wise_family(4, 6);
    CHECK(check_pq(f, 4, 4).holds);
    CHECK(check_pq(f, 6, 4).holds);
    Family g = f;
    g.bodies.push_back(ConvexBody::box(Point{100, 100}, Point{102, 102}));
    PqCondition c = check_pq(g, 4, 4);
    CHECK_FALSE(c.holds);
    REQUIRE(c.violator);
    CHECK(std::find(c.violator->begin(), c.violator->end(), 6) != c.violator->end());
    CHECK_THROWS_AS(check_pq(f, 3, 4), ArgumentError);
    CHECK_THROWS_AS(pq_transversal(g, 4, 4, Scalar(1, 4)), PreconditionFailed);
}

TEST_CASE("property: transversals are verified for planted families")
{
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Family f = four_wise_family(seed, 5 + seed % 5);
        Scalar delta(1, 4);
        PqReport r = pq_transversal(f, 4, 4, delta);
        CHECK(r.tau_star() == r.nu_star());
        CHECK(r.tau_star() >= 1);
        for (std::size_t i = 0; i < f.size(); ++i) {
            bool hit = false;
            for (const auto& e : r.transversal.elements)
                hit = hit || (f[i].contains(e) && e.squared_length() >= Scalar(9, 16));
            CHECK(hit);
        }
        if (r.packing_bound)
            CHECK(r.packing_bound->holds == (r.nu_star() * r.packing_bound->beta_observed <= 1));
    }
}

TEST_CASE("width mode keeps full width")
{
    testgen::Gen g(92);
    Direction v(Point{1, 0});
    WideProperty prop{v};
    Family f = testgen::planted_width_family(g, v, 6);
    PqReport r = pq_transversal(f, 4, 4, Scalar(1, 4), prop);
    for (const auto& e : r.transversal.elements)
        CHECK(width_at_least(dot(v.coords(), e.b - e.a), v.norm_sq(), 1));
    for (const auto& body : f.bodies)
        CHECK(std::any_of(r.transversal.elements.begin(), r.transversal.elements.end(),
                          [&](const Segment& e) { return body.contains(e); }));
}

TEST_CASE("partition into parts with wide intersections")
{
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        Family f = four_wise_family(seed + 20, 6);
        Scalar delta(1, 4);
        PartitionReport r = partition_large_intersections(f, delta);
        std::vector<int> seen(f.size(), 0);
        REQUIRE(r.parts.size() == r.element_of_part.size());
        for (std::size_t p = 0; p < r.parts.size(); ++p) {
            ConvexBody meet = intersect(f.subfamily(r.parts[p]).bodies);
            const Segment& e = r.pq.transversal.elements[r.element_of_part[p]];
            CHECK(meet.contains(e));
            CHECK(e.squared_length() >= Scalar(9, 16));
            for (std::size_t i : r.parts[p])
                ++seen[i];
        }
        CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
    }
    Family small{2, {ConvexBody::box(Point{0, 0}, Point{1, 1})}};
    CHECK(partition_large_intersections(small, Scalar(1, 4)).parts.size() == 1);
}
