#pragma once

#include "hellydiam/geometry.hpp"

#include <optional>
#include <vector>

namespace hellydiam::detail {

using Matrix = std::vector<std::vector<Scalar>>;

/// In-place reduced row echelon form; returns the pivot column of each
/// nonzero row. Zero rows are moved to the bottom.
std::vector<std::size_t> rref(Matrix& m, std::size_t cols);

/// Basis of {x : M x = 0}, one vector per free column in increasing order,
/// with a 1 at that free column.
std::vector<Point> null_space(Matrix m, std::size_t cols);

/// Unique solution of the square system A x = b, or nullopt when singular.
std::optional<Point> solve_square(Matrix a, Point b);

/// Strict convex hull of planar points in counterclockwise order starting at
/// the lexicographic minimum. Collinear boundary points are dropped.
std::vector<Point> planar_hull(std::vector<Point> pts);

/// Sorts lexicographically and removes duplicates.
void sort_unique(std::vector<Point>& pts);

} // namespace hellydiam::detail
