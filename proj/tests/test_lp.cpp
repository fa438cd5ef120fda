#include "generators.hpp"

#include "hellydiam/errors.hpp"
#include "hellydiam/lp.hpp"

#include <doctest.h>

using namespace hellydiam;

namespace {

ConvexBody unit_square()
{
    return ConvexBody::box(Point{0, 0}, Point{1, 1});
}

// Best objective over all feasible pairwise row intersections (Cramer).
std::optional<Scalar> planar_oracle(const ConvexBody& body, const Point& c, Sense sense)
{
    std::optional<Scalar> best;
    const auto& a = body.rows();
    const auto& b = body.rhs();
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            Scalar det = a[i][0] * a[j][1] - a[i][1] * a[j][0];
            if (det == 0)
                continue;
            Point x{(b[i] * a[j][1] - a[i][1] * b[j]) / det, (a[i][0] * b[j] - b[i] * a[j][0]) / det};
            if (!body.contains(x))
                continue;
            Scalar v = dot(c, x);
            if (!best || (sense == Sense::Max ? v > *best : v < *best))
                best = v;
        }
    return best;
}

} // namespace

TEST_CASE("box bound and contradictory constraints")
{
    ConvexBody interval = ConvexBody::box(Point{0}, Point{1});
    Point c{1};
    LpOutcome r = solve_lp(c, interval, Sense::Max);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(*r.value == 1);
    CHECK(*r.point == Point{1});

    ConvexBody none(1, {Point{1}, Point{-1}}, {0, -1});
    CHECK(solve_lp(c, none, Sense::Max).status == LpStatus::Infeasible);
}

TEST_CASE("unit square maximum of x + y")
{
    Point c{1, 1};
    LpOutcome r = solve_lp(c, unit_square(), Sense::Max);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(*r.value == 2);
    CHECK(*r.point == Point{1, 1});
    CHECK(*solve_lp(c, unit_square(), Sense::Min).value == 0);
}

TEST_CASE("unbounded direction and dimension mismatch")
{
    ConvexBody half = ConvexBody::halfspace(Point{1, 0}, 0);
    Point up{0, 1};
    CHECK(solve_lp(up, half, Sense::Max).status == LpStatus::Unbounded);
    Point bad{1, 1, 1};
    CHECK_THROWS_AS(solve_lp(bad, unit_square(), Sense::Max), ArgumentError);
}

TEST_CASE("raw program with equalities and lower bounds")
{
    // max x + 2y s.t. x + y = 3, x >= 1, y <= 5, x, y >= 0
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = {1, 2};
    lp.add({1, 1}, Relation::Equal, 3);
    lp.add({1, 0}, Relation::GreaterEq, 1);
    lp.add({0, 1}, Relation::LessEq, 5);
    LpSolution s = solve(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == 5);
    CHECK(s.x == std::vector<Scalar>{1, 2});
}

TEST_CASE("degenerate vertex does not cycle")
{
    // Many rows through the optimum (1, 1).
    std::vector<Point> rows;
    std::vector<Scalar> rhs;
    for (int k = 1; k <= 8; ++k) {
        rows.push_back(Point{Scalar(k), Scalar(9 - k)});
        rhs.push_back(9);
    }
    rows.push_back(Point{-1, 0});
    rhs.push_back(0);
    rows.push_back(Point{0, -1});
    rhs.push_back(0);
    ConvexBody body(2, rows, rhs);
    Point c{1, 1};
    LpOutcome r = solve_lp(c, body, Sense::Max);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(*r.value == *planar_oracle(body, c, Sense::Max));
}

TEST_CASE("optimal outcomes are feasible and match the vertex oracle")
{
    testgen::Gen g(5);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Point> rows;
        std::vector<Scalar> rhs;
        ConvexBody box = ConvexBody::box(Point{-3, -3}, Point{3, 3});
        rows = box.rows();
        rhs = box.rhs();
        std::size_t extra = g.below(6);
        for (std::size_t i = 0; i < extra; ++i) {
            rows.push_back(g.nonzero(2, 5));
            rhs.push_back(g.rational(-2, 4, 3));
        }
        ConvexBody body(2, rows, rhs);
        Point c = g.nonzero(2, 4);
        Sense sense = g.coin() ? Sense::Max : Sense::Min;
        LpOutcome r = solve_lp(c, body, sense);
        std::optional<Scalar> oracle = planar_oracle(body, c, sense);
        if (!oracle) {
            CHECK(r.status == LpStatus::Infeasible);
            continue;
        }
        REQUIRE(r.status == LpStatus::Optimal);
        CHECK(*r.value == *oracle);
        CHECK(body.contains(*r.point));
        CHECK(dot(c, *r.point) == *r.value);
    }
}
