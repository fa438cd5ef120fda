#include "hellydiam/hull.hpp"

#include "hellydiam/errors.hpp"
#include "hellydiam/lp.hpp"
#include "hellydiam/polytope.hpp"
#include "hellydiam/combinatorics.hpp"
#include "linalg.hpp"

#include <algorithm>

namespace hellydiam {

using detail::Matrix;

namespace {

void check_cloud(std::span<const Point> points, std::size_t dim)
{
    if (points.empty())
        throw ArgumentError("empty point list");
    for (const auto& p : points)
        if (p.size() != dim)
            throw ArgumentError("point dimension mismatch");
}

// λ >= 0, Σλ = 1, Σλ p = target  (+ extra columns appended by the caller).
LinearProgram membership_lp(std::span<const Point> points, const Point& target)
{
    const std::size_t n = points.size();
    const std::size_t d = target.size();
    LinearProgram lp;
    lp.num_vars = n;
    lp.objective.assign(n, Scalar(0));
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<Scalar> row(n);
        for (std::size_t i = 0; i < n; ++i)
            row[i] = points[i][k];
        lp.add(std::move(row), Relation::Equal, target[k]);
    }
    lp.add(std::vector<Scalar>(n, Scalar(1)), Relation::Equal, Scalar(1));
    return lp;
}

bool certifies(std::span<const Point> points, const Point& target, const std::vector<Scalar>& lambda)
{
    Scalar total = 0;
    Point acc(target.size(), Scalar(0));
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (lambda[i] < 0)
            return false;
        if (lambda[i].is_zero())
            continue;
        total += lambda[i];
        for (std::size_t k = 0; k < target.size(); ++k)
            acc[k] += lambda[i] * points[i][k];
    }
    return total == 1 && acc == target;
}

// Shrinks the support of a convex combination until it is affinely
// independent.
std::vector<std::size_t> reduce_support(std::span<const Point> points, std::vector<Scalar> lambda)
{
    const std::size_t d = points.front().size();
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < lambda.size(); ++i)
        if (lambda[i] > 0)
            support.push_back(i);
    while (true) {
        Matrix m(d + 1, std::vector<Scalar>(support.size()));
        for (std::size_t j = 0; j < support.size(); ++j) {
            for (std::size_t k = 0; k < d; ++k)
                m[k][j] = points[support[j]][k];
            m[d][j] = 1;
        }
        std::vector<Point> kernel = detail::null_space(m, support.size());
        if (kernel.empty())
            return support;
        const Point& mu = kernel.front();
        std::optional<Scalar> step;
        for (std::size_t j = 0; j < support.size(); ++j)
            if (mu[j] > 0) {
                Scalar r = lambda[support[j]] / mu[j];
                if (!step || r < *step)
                    step = r;
            }
        if (!step) // Σμ = 0 and μ != 0, so a positive entry exists
            throw InternalError("affine dependence without a positive coefficient");
        std::vector<std::size_t> next;
        for (std::size_t j = 0; j < support.size(); ++j) {
            lambda[support[j]] -= *step * mu[j];
            if (lambda[support[j]] > 0)
                next.push_back(support[j]);
        }
        support = std::move(next);
    }
}

} // namespace

std::optional<std::vector<Scalar>> hull_membership(std::span<const Point> points, const Point& target)
{
    check_cloud(points, target.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i] == target) {
            std::vector<Scalar> lambda(points.size(), Scalar(0));
            lambda[i] = 1;
            return lambda;
        }
    LpSolution sol = solve(membership_lp(points, target));
    if (sol.status != LpStatus::Optimal)
        return std::nullopt;
    if (!certifies(points, target, sol.x))
        throw InternalError("hull_membership: certificate failed re-check");
    return sol.x;
}

bool segment_in_hull(std::span<const Point> points, const Segment& s)
{
    return hull_membership(points, s.a).has_value() && hull_membership(points, s.b).has_value();
}

PointCloudHull::PointCloudHull(std::size_t dim, std::vector<Point> points) : dim_(dim), points_(std::move(points))
{
    check_cloud(points_, dim_);
    if (dim_ <= 2)
        body_ = ConvexBody::from_vertices(points_);
}

bool PointCloudHull::contains(const Point& x) const
{
    if (x.size() != dim_)
        throw ArgumentError("PointCloudHull: dimension mismatch");
    if (body_)
        return body_->contains(x);
    return hull_membership(points_, x).has_value();
}

RadonPartition radon_partition(std::span<const Point> points)
{
    if (points.empty())
        throw ArgumentError("radon_partition: no points");
    const std::size_t d = points.front().size();
    if (points.size() != d + 2)
        throw ArgumentError("radon_partition: need exactly d + 2 points");
    check_cloud(points, d);

    Matrix m(d + 1, std::vector<Scalar>(d + 2));
    for (std::size_t j = 0; j < d + 2; ++j) {
        for (std::size_t k = 0; k < d; ++k)
            m[k][j] = points[j][k];
        m[d][j] = 1;
    }
    Point lambda = detail::null_space(std::move(m), d + 2).front();
    auto first = std::find_if(lambda.begin(), lambda.end(), [](const Scalar& x) { return !x.is_zero(); });
    if (*first < 0)
        for (auto& x : lambda)
            x = -x;

    RadonPartition out;
    Scalar total = 0;
    Point acc(d, Scalar(0));
    for (std::size_t j = 0; j < d + 2; ++j) {
        if (lambda[j] >= 0) {
            out.first.push_back(j);
            if (lambda[j] > 0) {
                total += lambda[j];
                acc = acc + lambda[j] * points[j];
            }
        } else {
            out.second.push_back(j);
        }
    }
    out.point = (1 / total) * acc;
    return out;
}

std::optional<std::vector<std::size_t>> caratheodory_support(std::span<const Point> points, const Point& target)
{
    auto lambda = hull_membership(points, target);
    if (!lambda)
        return std::nullopt;
    return reduce_support(points, std::move(*lambda));
}

int affine_dimension(std::span<const Point> points)
{
    if (points.empty())
        return -1;
    Matrix m;
    for (std::size_t i = 1; i < points.size(); ++i)
        m.push_back(points[i] - points[0]);
    return static_cast<int>(detail::rref(m, points[0].size()).size());
}

namespace {

bool selection_works(std::span<const std::vector<Point>> classes,
                     std::span<const std::size_t> pick,
                     const Point& x,
                     const Point& y)
{
    std::vector<Point> chosen;
    for (std::size_t c = 0; c < classes.size(); ++c)
        chosen.push_back(classes[c][pick[c]]);
    return hull_membership(chosen, x).has_value() && hull_membership(chosen, y).has_value();
}

// Support (affinely independent) of the boundary point x + s(x - y), s max.
std::vector<std::size_t> chord_end_support(const std::vector<Point>& cloud, const Point& x, const Point& y)
{
    const std::size_t n = cloud.size();
    const std::size_t d = x.size();
    LinearProgram lp = membership_lp(cloud, x);
    lp.num_vars = n + 1;
    Point u = x - y;
    for (std::size_t k = 0; k < d; ++k)
        lp.constraints[k].coeffs.push_back(-u[k]);
    lp.constraints[d].coeffs.push_back(Scalar(0));
    lp.objective.assign(n + 1, Scalar(0));
    lp.objective[n] = 1;
    lp.sense = Sense::Max;
    LpSolution sol = solve(lp);
    if (sol.status != LpStatus::Optimal)
        throw InternalError("chord extension LP failed");
    std::vector<Scalar> lambda(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n));
    return reduce_support(cloud, std::move(lambda));
}

} // namespace

std::vector<std::size_t> colorful_caratheodory_pair(std::span<const std::vector<Point>> classes,
                                                    const Point& x,
                                                    const Point& y)
{
    const std::size_t d = x.size();
    if (d == 0 || y.size() != d)
        throw ArgumentError("colorful_caratheodory_pair: bad target points");
    if (classes.size() != 2 * d)
        throw ArgumentError("colorful_caratheodory_pair: need exactly 2d classes");
    for (std::size_t c = 0; c < classes.size(); ++c) {
        check_cloud(classes[c], d);
        if (!hull_membership(classes[c], x) || !hull_membership(classes[c], y))
            throw PreconditionFailed("class " + std::to_string(c) + " does not contain both points");
    }

    std::vector<std::size_t> pick(classes.size(), 0);
    auto verified = [&]() -> std::vector<std::size_t> {
        if (!selection_works(classes, pick, x, y))
            throw InternalError("colorful_caratheodory_pair: selection failed re-check");
        return pick;
    };

    // x and y occur as elements of two different classes.
    for (std::size_t i = 0; i < classes.size(); ++i) {
        auto xi = std::find(classes[i].begin(), classes[i].end(), x);
        if (xi == classes[i].end())
            continue;
        for (std::size_t j = 0; j < classes.size(); ++j) {
            if (j == i)
                continue;
            auto yj = std::find(classes[j].begin(), classes[j].end(), y);
            if (yj == classes[j].end())
                continue;
            pick[i] = static_cast<std::size_t>(xi - classes[i].begin());
            pick[j] = static_cast<std::size_t>(yj - classes[j].begin());
            return verified();
        }
    }

    bool identical = std::all_of(classes.begin(), classes.end(), [&](const auto& c) { return c == classes[0]; });
    if (identical) {
        std::vector<std::size_t> support;
        if (x == y) {
            support = *caratheodory_support(classes[0], x);
        } else {
            support = chord_end_support(classes[0], x, y);
            for (std::size_t i : chord_end_support(classes[0], y, x))
                support.push_back(i);
        }
        if (support.size() > classes.size())
            throw InternalError("chord construction produced too many points");
        for (std::size_t c = 0; c < classes.size(); ++c)
            pick[c] = c < support.size() ? support[c] : support.front();
        return verified();
    }

    std::vector<std::size_t> sizes;
    for (const auto& c : classes)
        sizes.push_back(c.size());
    bool found = !for_each_product(sizes, [&](std::span<const std::size_t> choice) {
        if (!selection_works(classes, choice, x, y))
            return true;
        pick.assign(choice.begin(), choice.end());
        return false;
    });
    if (!found)
        throw InternalError("colorful_caratheodory_pair: no selection found");
    return pick;
}

} // namespace hellydiam
