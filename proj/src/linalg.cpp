#include "linalg.hpp"

#include <algorithm>

namespace hellydiam::detail {

std::vector<std::size_t> rref(Matrix& m, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && m[p][c].is_zero())
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[row]);
        Scalar inv = 1 / m[row][c];
        for (std::size_t k = c; k < cols; ++k)
            if (!m[row][k].is_zero())
                m[row][k] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][c].is_zero())
                continue;
            Scalar f = m[i][c];
            for (std::size_t k = c; k < cols; ++k)
                if (!m[row][k].is_zero())
                    m[i][k] -= f * m[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

std::vector<Point> null_space(Matrix m, std::size_t cols)
{
    std::vector<std::size_t> pivots = rref(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots)
        is_pivot[c] = true;
    std::vector<Point> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        Point v(cols, Scalar(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Point> solve_square(Matrix a, Point b)
{
    const std::size_t n = b.size();
    for (std::size_t i = 0; i < n; ++i)
        a[i].push_back(b[i]);
    std::vector<std::size_t> pivots = rref(a, n + 1);
    if (pivots.size() != n || (n > 0 && pivots.back() != n - 1))
        return std::nullopt;
    Point x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = a[i][n];
    return x;
}

namespace {

Scalar cross(const Point& o, const Point& a, const Point& b)
{
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

} // namespace

std::vector<Point> planar_hull(std::vector<Point> pts)
{
    sort_unique(pts);
    if (pts.size() <= 1)
        return pts;
    std::vector<Point> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0)
            --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0)
            --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

void sort_unique(std::vector<Point>& pts)
{
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

} // namespace hellydiam::detail
