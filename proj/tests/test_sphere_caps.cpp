#include "generators.hpp"

#include "hellydiam/errors.hpp"
#include "hellydiam/sphere_caps.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hellydiam;

namespace {

// Normalized cap measure on S^{d-1} by Simpson's rule on sin^{d-2}.
double cap_measure(std::size_t d, double delta)
{
    auto integral = [&](double upper) {
        const int steps = 20000;
        double h = upper / steps, s = 0;
        for (int i = 0; i <= steps; ++i) {
            double w = (i == 0 || i == steps) ? 1 : (i % 2 ? 4 : 2);
            s += w * std::pow(std::sin(i * h), static_cast<double>(d) - 2);
        }
        return s * h / 3;
    };
    return integral(std::acos(1 - delta)) / integral(std::numbers::pi);
}

} // namespace

TEST_CASE("cap fraction bounds in the plane")
{
    Scalar half = cap_fraction(CapParams{2, Scalar(1, 2)});
    CHECK(half > 0);
    CHECK(half <= Scalar(1, 3));
    CHECK(half == Scalar(33, 100));
    Scalar full = cap_fraction(CapParams{2, Scalar(1)});
    CHECK(full > 0);
    CHECK(full <= Scalar(1, 2));
    CHECK(cap_fraction(CapParams{2, Scalar(1, 1000000)}) < Scalar(1, 1000));
    CHECK(cap_fraction(CapParams{1, Scalar(1, 7)}) == Scalar(1, 2));
    CHECK(cap_fraction(CapParams{3, Scalar(1, 4)}) == Scalar(1, 8));
    CHECK_THROWS_AS(cap_fraction(CapParams{2, Scalar(0)}), ArgumentError);
    CHECK_THROWS_AS(cap_fraction(CapParams{2, Scalar(3, 2)}), ArgumentError);
    CHECK_THROWS_AS(cap_fraction(CapParams{0, Scalar(1, 2)}), ArgumentError);
}

TEST_CASE("property: cap fraction is a monotone lower bound")
{
    for (std::size_t d = 2; d <= 5; ++d) {
        Scalar prev = 0;
        for (int k = 1; k <= 64; ++k) {
            Scalar delta(k, 64);
            Scalar c = cap_fraction(CapParams{d, delta});
            CHECK(c >= prev);
            CHECK(to_double(c) <= cap_measure(d, to_double(delta)) + 1e-12);
            CHECK(to_double(c) >= 0.85 * cap_measure(d, to_double(delta)));
            prev = c;
        }
    }
}

TEST_CASE("cover examples")
{
    CapCover line = build_cover(CapParams{1, Scalar(1, 3)});
    REQUIRE(line.directions.size() == 2);
    CHECK(line.directions[0].coords() == Point{1});
    CHECK(line.directions[1].coords() == Point{-1});

    CapCover half = build_cover(CapParams{2, Scalar(1, 2)});
    CHECK(half.directions.size() >= 6);
    CHECK(half.status == CoverStatus::Verified);
    CHECK(half.directions.size() == 2 * half.axes.size());
}

TEST_CASE("property: covers hold every random probe")
{
    testgen::Gen g(51);
    for (Scalar delta : {Scalar(1, 50), Scalar(1, 2)}) {
        CapCover cover = build_cover(CapParams{2, delta});
        CHECK(cover.status == CoverStatus::Verified);
        std::size_t misses = 0;
        for (int i = 0; i < 100000; ++i)
            misses += testgen::covered(cover, testgen::probe(g, 2)) ? 0 : 1;
        CHECK(misses == 0);
    }
    CapCover space = build_cover(CapParams{3, Scalar(1, 2)});
    std::size_t misses = 0;
    for (int i = 0; i < 20000; ++i)
        misses += testgen::covered(space, testgen::probe(g, 3)) ? 0 : 1;
    CHECK(misses == 0);
}

TEST_CASE("pigeonhole examples")
{
    CapParams half{2, Scalar(1, 2)};
    std::vector<Direction> same(5, Direction(Point{1, 2}));
    PigeonholeResult r = pigeonhole_direction(same, half);
    CHECK(r.axis.parallel_to(Direction(Point{1, 2})));
    CHECK(r.hits.size() == 5);

    std::vector<Direction> semicircle;
    for (int j = 0; j < 12; ++j) {
        double a = std::numbers::pi * j / 12;
        semicircle.emplace_back(Point{floor_to(std::cos(a), 1 << 16), floor_to(std::sin(a), 1 << 16)});
    }
    r = pigeonhole_direction(semicircle, half);
    CHECK(r.hits.size() >= 4);

    std::vector<Direction> pair{Direction(Point{3, 1}), Direction(Point{-3, -1})};
    CHECK(pigeonhole_direction(pair, half).hits.size() == 2);
    CHECK_THROWS_AS(pigeonhole_direction(std::vector<Direction>{}, half), ArgumentError);
}

TEST_CASE("property: pigeonhole meets the cap bound and ignores signs")
{
    testgen::Gen g(52);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t d = 2 + g.below(2);
        CapParams params{d, Scalar(1 + static_cast<long long>(g.below(7)), 8)};
        std::vector<Direction> dirs, flipped;
        std::size_t n = 1 + g.below(20);
        for (std::size_t i = 0; i < n; ++i) {
            Point p = g.nonzero(d, 6);
            dirs.emplace_back(p);
            flipped.emplace_back(g.coin() ? Scalar(-1) * p : p);
        }
        PigeonholeResult r = pigeonhole_direction(dirs, params);
        for (std::size_t h : r.hits)
            CHECK(in_double_cap(dirs[h].coords(), r.axis, params.delta));
        if (d == 2)
            CHECK(Scalar(r.hits.size()) >= cap_fraction(params) * Scalar(n));
        CHECK(r.meets_bound == (Scalar(r.hits.size()) >= cap_fraction(params) * Scalar(n)));
        CHECK(pigeonhole_direction(flipped, params).hits.size() == r.hits.size());
    }
}

TEST_CASE("cap membership by squares")
{
    Direction e1(Point{1, 0});
    CHECK(in_cap(Point{1, 1}, e1, Scalar(1, 2)));
    CHECK_FALSE(in_cap(Point{1, 2}, e1, Scalar(1, 2)));
    CHECK_FALSE(in_cap(Point{-1, 0}, e1, Scalar(1, 2)));
    CHECK(in_double_cap(Point{-1, 0}, e1, Scalar(1, 2)));
    CHECK(in_cap(Point{0, 1}, e1, Scalar(1)));
}
