#include "generators.hpp"

#include "hellydiam/combinatorics.hpp"
#include "hellydiam/errors.hpp"
#include "hellydiam/helly_width.hpp"

#include <doctest.h>

using namespace hellydiam;

namespace {

ConvexBody interval(Scalar lo, Scalar hi)
{
    return ConvexBody::box(Point{lo}, Point{hi});
}

bool in_all(const Family& f, const Segment& s)
{
    for (const auto& b : f.bodies)
        if (!b.contains(s))
            return false;
    return true;
}

// Every subfamily of at most 2d members has a wide intersection.
bool wide_hypothesis(const Family& f, const Direction& v, const Scalar& t)
{
    bool ok = true;
    for (std::size_t k = 1; k <= 2 * f.dim && ok; ++k)
        for_each_combination(f.size(), k, [&](std::span<const std::size_t> idx) {
            ConvexBody meet = intersect(f.subfamily(idx).bodies);
            ok = !is_empty(meet) && v_width(meet, v).at_least(t);
            return ok;
        });
    return ok;
}

} // namespace

TEST_CASE("interval witness lies in the common part")
{
    Family f{1, {interval(0, 2), interval(1, 3), interval(Scalar(1, 2), Scalar(5, 2))}};
    WidthWitness w = helly_width_witness(f, Direction(Point{1}), 1);
    CHECK(w.segment.a == Point{1});
    CHECK(w.segment.b == Point{2});
    CHECK(w.raw_gap == 1);
    CHECK(in_all(f, w.segment));
}

TEST_CASE("single body gives its own width segment")
{
    ConvexBody tri = ConvexBody::from_vertices({Point{0, 0}, Point{3, 1}, Point{1, 2}});
    Family f{2, {tri}};
    Direction v(Point{1, 0});
    WidthWitness w = helly_width_witness(f, v, 1);
    CHECK(w.segment == v_width(tri, v).segment);
}

TEST_CASE("strips around a common unit segment")
{
    testgen::Gen g(61);
    Family f{2, {}};
    for (int i = 0; i < 6; ++i) {
        Scalar left = -g.rational(0, 1, 8), right = 1 + g.rational(0, 1, 8);
        Scalar low = -g.rational(0, 1, 8);
        f.bodies.push_back(ConvexBody::box(Point{left, low}, Point{right, low + 1}));
    }
    Direction v(Point{1, 0});
    WidthWitness w = helly_width_witness(f, v, 1);
    CHECK(width_at_least(w.raw_gap, v.norm_sq(), 1));
    CHECK(in_all(f, w.segment));
    CHECK(in_all(f, Segment{Point{0, 0}, Point{1, 0}}));
}

TEST_CASE("thin or empty subfamilies are reported")
{
    Family f{1, {interval(0, 2), interval(Scalar(3, 2), 4), interval(0, 4)}};
    try {
        helly_width_witness(f, Direction(Point{1}), 1);
        FAIL("expected HypothesisFailed");
    } catch (const HypothesisFailed& e) {
        Family sub = f.subfamily(e.subset());
        ConvexBody meet = intersect(sub.bodies);
        CHECK((is_empty(meet) || !v_width(meet, Direction(Point{1})).at_least(1)));
    }
    Family apart{1, {interval(0, 1), interval(2, 3)}};
    CHECK_THROWS_AS(helly_width_witness(apart, Direction(Point{1}), 1), HypothesisFailed);
    CHECK_THROWS_AS(helly_width_witness(Family{1, {}}, Direction(Point{1}), 1), ArgumentError);
    CHECK_THROWS_AS(helly_width_witness(apart, Direction(Point{1, 0}), 1), ArgumentError);
}

TEST_CASE("property: planted families give verified witnesses, invariant under scaling")
{
    testgen::Gen g(62);
    for (int trial = 0; trial < 120; ++trial) {
        Direction v(g.nonzero(2, 3));
        Family f = testgen::planted_width_family(g, v, 2 + g.below(5));
        WidthWitness w = helly_width_witness(f, v, 1);
        CHECK(width_at_least(w.raw_gap, v.norm_sq(), 1));
        CHECK(w.raw_gap == dot(v.coords(), w.segment.b - w.segment.a));
        CHECK(in_all(f, w.segment));
        Direction scaled(Scalar(3, 2) * v.coords());
        CHECK(helly_width_witness(f, scaled, 1).segment == w.segment);
    }
}

TEST_CASE("property: witness exists exactly when the hypothesis holds")
{
    testgen::Gen g(63);
    for (int trial = 0; trial < 150; ++trial) {
        Family f{1, {}};
        std::size_t n = 2 + g.below(4);
        for (std::size_t i = 0; i < n; ++i) {
            Scalar lo = g.rational(0, 2, 4);
            f.bodies.push_back(interval(lo, lo + g.rational(1, 3, 4)));
        }
        Direction v(Point{1});
        // Oracle: the common interval [max lo, min hi].
        Scalar lo = f[0].vertices().front()[0], hi = f[0].vertices().back()[0];
        for (const auto& b : f.bodies) {
            lo = std::max(lo, b.vertices().front()[0]);
            hi = std::min(hi, b.vertices().back()[0]);
        }
        bool expected = hi - lo >= 1;
        CHECK(wide_hypothesis(f, v, 1) == expected);
        if (expected) {
            WidthWitness w = helly_width_witness(f, v, 1);
            CHECK(w.segment == Segment{Point{lo}, Point{hi}});
        } else {
            CHECK_THROWS_AS(helly_width_witness(f, v, 1), HypothesisFailed);
        }
    }
}

TEST_CASE("colourful width examples")
{
    Direction e1(Point{1});
    Family wide{1, {interval(0, 1)}};
    std::vector<Family> same{wide, wide};
    auto r = colorful_helly_width(same, e1, 1);
    REQUIRE(std::holds_alternative<ClassWitness<WidthWitness>>(r));
    CHECK(std::get<ClassWitness<WidthWitness>>(r).index == 0);

    Family with_point{1, {interval(0, 1), interval(5, 5)}};
    std::vector<Family> mixed{with_point, with_point};
    r = colorful_helly_width(mixed, e1, 1);
    REQUIRE(std::holds_alternative<RainbowChoice>(r));
    std::vector<std::size_t> choice = std::get<RainbowChoice>(r).indices;
    ConvexBody meet = intersect(mixed[0][choice[0]], mixed[1][choice[1]]);
    CHECK((is_empty(meet) || !v_width(meet, e1).at_least(1)));

    CHECK_THROWS_AS(colorful_helly_width(std::vector<Family>{wide}, e1, 1), ArgumentError);
}

TEST_CASE("property: colourful outcomes carry valid certificates")
{
    testgen::Gen g(64);
    Direction v(Point{1, 0});
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Family> classes;
        for (int c = 0; c < 4; ++c) {
            Family f{2, {}};
            std::size_t n = 1 + g.below(2);
            for (std::size_t i = 0; i < n; ++i) {
                Point lo = g.point(2, -1, 0, 4);
                Point hi = lo + Point{g.rational(1, 2, 4), g.rational(1, 2, 4)};
                f.bodies.push_back(ConvexBody::box(lo, hi));
            }
            classes.push_back(f);
        }
        // Exhaustive rainbow oracle.
        std::vector<std::size_t> sizes;
        for (const auto& c : classes)
            sizes.push_back(c.size());
        bool all_wide = true;
        for_each_product(std::span<const std::size_t>(sizes), [&](std::span<const std::size_t> choice) {
            std::vector<ConvexBody> bodies;
            for (std::size_t c = 0; c < 4; ++c)
                bodies.push_back(classes[c][choice[c]]);
            ConvexBody meet = intersect(bodies);
            all_wide = !is_empty(meet) && v_width(meet, v).at_least(1);
            return all_wide;
        });
        auto r = colorful_helly_width(classes, v, 1);
        if (auto* cw = std::get_if<ClassWitness<WidthWitness>>(&r)) {
            CHECK(in_all(classes[cw->index], cw->witness.segment));
            CHECK(width_at_least(cw->witness.raw_gap, v.norm_sq(), 1));
        } else {
            CHECK_FALSE(all_wide);
            const auto& idx = std::get<RainbowChoice>(r).indices;
            std::vector<ConvexBody> bodies;
            for (std::size_t c = 0; c < 4; ++c)
                bodies.push_back(classes[c][idx[c]]);
            ConvexBody meet = intersect(bodies);
            CHECK((is_empty(meet) || !v_width(meet, v).at_least(1)));
        }
    }
}

TEST_CASE("fractional width on copies and far intervals")
{
    Direction e1(Point{1});
    Family copies{1, std::vector<ConvexBody>(5, interval(0, 1))};
    FractionalWidthResult all = fractional_helly_width(copies, e1, 1);
    CHECK(all.members.size() == 5);
    CHECK(all.beta_observed == 1);

    Family mixed = copies;
    for (int i = 0; i < 5; ++i)
        mixed.bodies.push_back(interval(10 * (i + 1), 10 * (i + 1) + 1));
    FractionalWidthResult r = fractional_helly_width(mixed, e1, 1);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(std::find(r.members.begin(), r.members.end(), i) != r.members.end());
    CHECK(r.pair == Segment{Point{0}, Point{1}});

    Family apart{1, {interval(0, 1), interval(3, 4)}};
    CHECK_THROWS_AS(fractional_helly_width(apart, e1, 1), HypothesisFailed);
}

TEST_CASE("property: fractional members hold the pair and beat the double-counting floor")
{
    testgen::Gen g(65);
    for (int trial = 0; trial < 60; ++trial) {
        Direction v(Point{1, 0});
        Segment planted;
        Family f = testgen::planted_width_family(g, v, 4 + g.below(3), &planted);
        std::size_t n_planted = f.size();
        std::size_t extra = g.below(3);
        for (std::size_t i = 0; i < extra; ++i) {
            Point c = g.point(2, 5, 9, 4);
            f.bodies.push_back(ConvexBody::box(c, c + Point{2, 1}));
        }
        FractionalWidthResult r = fractional_helly_width(f, v, 1);
        CHECK(width_at_least(dot(v.coords(), r.pair.b - r.pair.a), v.norm_sq(), 1));
        for (std::size_t m : r.members)
            CHECK(f[m].contains(r.pair));
        CHECK(r.members.size() >= n_planted);
        CHECK(r.beta_observed == Scalar(r.members.size(), f.size()));
        std::size_t n = f.size(), k = 2 * f.dim;
        if (n >= k) {
            Scalar floor = Scalar(r.good_subsets) / Scalar(binomial(n - 1, k - 1));
            CHECK(Scalar(r.members.size()) >= floor);
            // The anchor plus one new member per subset charged to it.
            Scalar charged = Scalar(r.good_subsets) / Scalar(binomial(n, k - 1));
            CHECK(Scalar(r.members.size()) >= Scalar(k - 1) + charged);
        }
    }
}
