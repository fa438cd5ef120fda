#include "generators.hpp"

#include "hellydiam/combinatorics.hpp"
#include "hellydiam/errors.hpp"
#include "hellydiam/polytope.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace hellydiam;

namespace {

ConvexBody unit_square()
{
    return ConvexBody::box(Point{0, 0}, Point{1, 1});
}

ConvexBody triangle()
{
    return ConvexBody::from_vertices({Point{0, 0}, Point{2, 0}, Point{1, 1}});
}

// Feasible solutions of every 2x2 row subsystem, sorted and unique.
std::vector<Point> cramer_vertices(const ConvexBody& body)
{
    std::set<Point> out;
    const auto& a = body.rows();
    const auto& b = body.rhs();
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            Scalar det = a[i][0] * a[j][1] - a[i][1] * a[j][0];
            if (det == 0)
                continue;
            Point x{(b[i] * a[j][1] - a[i][1] * b[j]) / det, (a[i][0] * b[j] - b[i] * a[j][0]) / det};
            if (body.contains(x))
                out.insert(x);
        }
    return {out.begin(), out.end()};
}

Scalar brute_diameter(const std::vector<Point>& vs)
{
    Scalar best = 0;
    for (const auto& p : vs)
        for (const auto& q : vs)
            best = std::max(best, squared_distance(p, q));
    return best;
}

ConvexBody random_polygon(testgen::Gen& g)
{
    std::vector<Point> pts;
    std::size_t n = 3 + g.below(6);
    for (std::size_t i = 0; i < n; ++i)
        pts.push_back(g.point(2, -3, 3, 8));
    return ConvexBody::from_vertices(pts);
}

} // namespace

TEST_CASE("directional extremum breaks ties lexicographically")
{
    CHECK(directional_extremum(unit_square(), Direction(Point{1, 0}), Extremum::Min) == Point{0, 0});
    CHECK(directional_extremum(unit_square(), Direction(Point{1, 1}), Extremum::Max) == Point{1, 1});
    CHECK(directional_extremum(triangle(), Direction(Point{0, 1}), Extremum::Max) == Point{1, 1});
    CHECK(directional_extremum(unit_square(), Direction(Point{0, 1}), Extremum::Max) == Point{0, 1});

    ConvexBody none(1, {Point{1}, Point{-1}}, {0, -1});
    CHECK_THROWS_AS(directional_extremum(none, Direction(Point{1}), Extremum::Min), EmptyBody);
    ConvexBody ray(1, {Point{-1}}, {0});
    CHECK_THROWS_AS(directional_extremum(ray, Direction(Point{1}), Extremum::Max), Unbounded);
}

TEST_CASE("v-width as an exact pair")
{
    Width w = v_width(unit_square(), Direction(Point{1, 0}));
    CHECK(w.raw_gap == 1);
    CHECK(w.norm_sq == 1);
    w = v_width(unit_square(), Direction(Point{1, 1}));
    CHECK(w.raw_gap == 2);
    CHECK(w.norm_sq == 2);
    CHECK(w.segment == Segment{Point{0, 0}, Point{1, 1}});
    CHECK(w.at_least(1));
    CHECK_FALSE(w.at_least(Scalar(3, 2)));

    ConvexBody interval = ConvexBody::box(Point{0}, Point{3});
    w = v_width(interval, Direction(Point{2}));
    CHECK(w.raw_gap == 6);
    CHECK(w.norm_sq == 4);
    CHECK(w.at_least(3));
    CHECK_FALSE(w.at_least(Scalar(301, 100)));
}

TEST_CASE("intersection by row concatenation")
{
    ConvexBody sq = unit_square();
    std::vector<ConvexBody> one{sq};
    CHECK(vertices(intersect(one)) == vertices(sq));

    ConvexBody a = ConvexBody::halfspace(Point{1}, 1), b = ConvexBody::halfspace(Point{-1}, 0);
    CHECK(vertices(intersect(a, b)) == std::vector<Point>{Point{0}, Point{1}});

    ConvexBody shifted = ConvexBody::box(Point{Scalar(1, 2), 0}, Point{Scalar(3, 2), 1});
    std::vector<Point> expect{Point{Scalar(1, 2), 0}, Point{Scalar(1, 2), 1}, Point{1, 0}, Point{1, 1}};
    CHECK(vertices(intersect(sq, shifted)) == expect);
    CHECK(intersect(sq, shifted).num_rows() == 8);

    CHECK_THROWS_AS(intersect(std::vector<ConvexBody>{}), ArgumentError);
    CHECK_THROWS_AS(intersect(sq, a), ArgumentError);
}

TEST_CASE("vertex enumeration examples")
{
    std::vector<Point> sq{Point{0, 0}, Point{0, 1}, Point{1, 0}, Point{1, 1}};
    CHECK(vertices(unit_square()) == sq);
    ConvexBody redundant = intersect(unit_square(), ConvexBody::halfspace(Point{1, 0}, 2));
    CHECK(vertices(redundant) == sq);
    ConvexBody simplex(2, {Point{-1, 0}, Point{0, -1}, Point{1, 1}}, {0, 0, 1});
    CHECK(vertices(simplex) == std::vector<Point>{Point{0, 0}, Point{0, 1}, Point{1, 0}});

    ConvexBody empty = intersect(unit_square(), ConvexBody::halfspace(Point{1, 0}, -1));
    CHECK_THROWS_AS(vertices(empty), EmptyBody);
    CHECK(is_empty(empty));
    ConvexBody wedge(2, {Point{-1, 0}, Point{0, -1}}, {0, 0});
    CHECK_THROWS_AS(vertices(wedge), Unbounded);
    CHECK_FALSE(is_empty(wedge));

    ConvexBody cube = ConvexBody::box(Point{0, 0, 0}, Point{1, 1, 1});
    CHECK(vertices(cube).size() == 8);
    ConvexBody cut = intersect(cube, ConvexBody::halfspace(Point{1, 1, 1}, 1));
    CHECK(vertices(cut).size() == 4);
}

TEST_CASE("diameter examples")
{
    Diameter d = diameter(unit_square());
    CHECK(d.squared == 2);
    CHECK(d.segment == Segment{Point{0, 0}, Point{1, 1}});
    ConvexBody dot_body = ConvexBody::box(Point{1, 1}, Point{1, 1});
    CHECK(diameter(dot_body).squared == 0);
    CHECK(diameter(ConvexBody::box(Point{0, 0}, Point{3, 1})).squared == 10);
}

TEST_CASE("property: vertices agree with the Cramer oracle and diameter with brute force")
{
    testgen::Gen g(21);
    for (int trial = 0; trial < 300; ++trial) {
        ConvexBody p = random_polygon(g);
        ConvexBody q = random_polygon(g);
        ConvexBody meet = intersect(p, q);
        std::vector<Point> oracle = cramer_vertices(meet);
        if (oracle.empty()) {
            // Either empty or a single degenerate point caught by the oracle.
            CHECK(is_empty(meet));
            continue;
        }
        CHECK(enumerate_vertices(meet) == oracle);
        CHECK(diameter(meet).squared == brute_diameter(oracle));
        CHECK(vertices(intersect_compact(p, q)) == oracle);
    }
}

TEST_CASE("property: width predicate is invariant under positive scaling")
{
    testgen::Gen g(22);
    for (int trial = 0; trial < 300; ++trial) {
        ConvexBody p = random_polygon(g);
        Point v = g.nonzero(2, 4);
        Scalar c = g.rational(1, 5, 7);
        Scalar t = g.rational(0, 4, 5);
        Width a = v_width(p, Direction(v)), b = v_width(p, Direction(c * v));
        CHECK(a.at_least(t) == b.at_least(t));
        CHECK(a.segment == b.segment);
    }
}

TEST_CASE("property: intersection order does not matter")
{
    testgen::Gen g(23);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<ConvexBody> bodies;
        for (int i = 0; i < 4; ++i)
            bodies.push_back(ConvexBody::box(g.point(2, -2, 0, 4), g.point(2, 1, 3, 4)));
        std::vector<ConvexBody> reversed(bodies.rbegin(), bodies.rend());
        ConvexBody x = intersect(bodies), y = intersect(reversed);
        ConvexBody z = intersect(intersect(bodies[0], bodies[1]), intersect(bodies[2], bodies[3]));
        CHECK(vertices(x) == vertices(y));
        CHECK(vertices(x) == vertices(z));
    }
}

TEST_CASE("intersection cache matches direct intersection")
{
    testgen::Gen g(24);
    Family f{2, {}};
    for (int i = 0; i < 6; ++i)
        f.bodies.push_back(random_polygon(g));
    f.bodies.push_back(f.bodies[0]);
    IntersectionCache cache(f);
    for (std::size_t k = 1; k <= 3; ++k)
        for_each_combination(f.size(), k, [&](std::span<const std::size_t> idx) {
            ConvexBody meet = intersect(f.subfamily(idx).bodies);
            const ConvexBody* cached = cache.get(idx);
            if (is_empty(meet))
                CHECK(cached == nullptr);
            else {
                REQUIRE(cached != nullptr);
                CHECK(vertices(*cached) == enumerate_vertices(meet));
            }
            return true;
        });
}

TEST_CASE("hull description of degenerate point sets")
{
    HullDescription seg = describe_hull(2, {Point{0, 0}, Point{2, 2}, Point{1, 1}});
    CHECK(seg.extreme == std::vector<Point>{Point{0, 0}, Point{2, 2}});
    ConvexBody body(2, seg.rows, seg.rhs);
    CHECK(body.contains(Point{Scalar(1, 2), Scalar(1, 2)}));
    CHECK_FALSE(body.contains(Point{1, 0}));
    CHECK(lex_min_point(unit_square()) == Point{0, 0});
}
