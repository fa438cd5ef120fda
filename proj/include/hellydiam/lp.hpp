#pragma once

#include "hellydiam/geometry.hpp"

#include <optional>
#include <span>
#include <vector>

namespace hellydiam {

enum class Sense { Max, Min };
enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class Relation { LessEq, GreaterEq, Equal };

/// Exact two-phase tableau simplex with Bland's rule over nonnegative
/// variables. Constraint rows are dense.
struct LinearProgram
{
    struct Constraint
    {
        std::vector<Scalar> coeffs;
        Relation relation = Relation::LessEq;
        Scalar rhs;
    };

    std::size_t num_vars = 0;
    std::vector<Constraint> constraints;
    std::vector<Scalar> objective;
    Sense sense = Sense::Max;

    void add(std::vector<Scalar> coeffs, Relation rel, Scalar rhs);
};

struct LpSolution
{
    LpStatus status = LpStatus::Infeasible;
    Scalar value;
    std::vector<Scalar> x;
};

LpSolution solve(const LinearProgram& lp);

struct LpOutcome
{
    LpStatus status = LpStatus::Infeasible;
    std::optional<Scalar> value;
    std::optional<Point> point;
};

/// Optimizes ⟨objective, x⟩ over {x : A x <= b} with x free.
LpOutcome solve_lp(std::span<const Scalar> objective, const ConvexBody& body, Sense sense);

} // namespace hellydiam
