#include "hellydiam/lp.hpp"

#include "hellydiam/errors.hpp"

#include <limits>

namespace hellydiam {

void LinearProgram::add(std::vector<Scalar> coeffs, Relation rel, Scalar rhs)
{
    if (coeffs.size() != num_vars)
        throw ArgumentError("constraint has wrong number of coefficients");
    constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
}

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Tableau
{
    std::size_t cols = 0; // structural + slack + artificial; rhs stored separately
    std::vector<std::vector<Scalar>> a;
    std::vector<Scalar> rhs;
    std::vector<std::size_t> basis;
    std::vector<Scalar> reduced; // c_j - c_B B^{-1} A_j
    Scalar value;                // c_B B^{-1} b

    void pivot(std::size_t r, std::size_t j)
    {
        std::vector<Scalar>& pr = a[r];
        Scalar p = pr[j];
        std::vector<std::size_t> nz;
        for (std::size_t k = 0; k < cols; ++k) {
            if (pr[k].is_zero())
                continue;
            if (k != j)
                pr[k] /= p;
            nz.push_back(k);
        }
        pr[j] = 1;
        rhs[r] /= p;

        auto eliminate = [&](std::vector<Scalar>& row, Scalar& b) {
            if (row[j].is_zero())
                return;
            Scalar f = row[j];
            for (std::size_t k : nz)
                row[k] -= f * pr[k];
            b -= f * rhs[r];
        };
        for (std::size_t i = 0; i < a.size(); ++i)
            if (i != r)
                eliminate(a[i], rhs[i]);
        // Objective row: value tracks c_B x_B, so it moves opposite to rhs.
        if (!reduced[j].is_zero()) {
            Scalar f = reduced[j];
            for (std::size_t k : nz)
                reduced[k] -= f * pr[k];
            value += f * rhs[r];
        }
        basis[r] = j;
    }

    void price(const std::vector<Scalar>& cost)
    {
        reduced = cost;
        value = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const Scalar& cb = cost[basis[i]];
            if (cb.is_zero())
                continue;
            for (std::size_t k = 0; k < cols; ++k)
                if (!a[i][k].is_zero())
                    reduced[k] -= cb * a[i][k];
            value += cb * rhs[i];
        }
    }

    /// Maximizes over allowed columns. Returns false if unbounded.
    bool optimize(const std::vector<bool>& allowed)
    {
        while (true) {
            std::size_t enter = npos;
            for (std::size_t k = 0; k < cols; ++k)
                if (allowed[k] && reduced[k] > 0) {
                    enter = k;
                    break;
                }
            if (enter == npos)
                return true;
            std::size_t leave = npos;
            Scalar best;
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i][enter] <= 0)
                    continue;
                Scalar ratio = rhs[i] / a[i][enter];
                if (leave == npos || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = std::move(ratio);
                }
            }
            if (leave == npos)
                return false;
            pivot(leave, enter);
        }
    }

    void drop_row(std::size_t r)
    {
        a.erase(a.begin() + static_cast<std::ptrdiff_t>(r));
        rhs.erase(rhs.begin() + static_cast<std::ptrdiff_t>(r));
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
    }
};

} // namespace

LpSolution solve(const LinearProgram& lp)
{
    const std::size_t n = lp.num_vars;
    if (lp.objective.size() != n)
        throw ArgumentError("objective has wrong number of coefficients");

    // Column layout: [structural | slack/surplus | artificial].
    const std::size_t m = lp.constraints.size();
    std::size_t num_slack = 0;
    std::size_t num_art = 0;
    std::vector<Relation> rel(m);
    std::vector<bool> negate(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        if (c.coeffs.size() != n)
            throw ArgumentError("constraint has wrong number of coefficients");
        rel[i] = c.relation;
        if (c.rhs < 0) {
            negate[i] = true;
            if (rel[i] == Relation::LessEq)
                rel[i] = Relation::GreaterEq;
            else if (rel[i] == Relation::GreaterEq)
                rel[i] = Relation::LessEq;
        }
        if (rel[i] != Relation::Equal)
            ++num_slack;
        if (rel[i] != Relation::LessEq)
            ++num_art;
    }

    Tableau t;
    t.cols = n + num_slack + num_art;
    t.a.assign(m, std::vector<Scalar>(t.cols));
    t.rhs.resize(m);
    t.basis.resize(m);
    std::size_t next_slack = n;
    std::size_t next_art = n + num_slack;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        for (std::size_t k = 0; k < n; ++k)
            t.a[i][k] = negate[i] ? Scalar(-c.coeffs[k]) : c.coeffs[k];
        t.rhs[i] = negate[i] ? Scalar(-c.rhs) : c.rhs;
        if (rel[i] == Relation::LessEq) {
            t.a[i][next_slack] = 1;
            t.basis[i] = next_slack++;
        } else {
            if (rel[i] == Relation::GreaterEq)
                t.a[i][next_slack++] = -1;
            t.a[i][next_art] = 1;
            t.basis[i] = next_art++;
        }
    }

    const std::size_t first_art = n + num_slack;
    std::vector<bool> allowed(t.cols, true);

    if (num_art > 0) {
        std::vector<Scalar> phase1(t.cols);
        for (std::size_t k = first_art; k < t.cols; ++k)
            phase1[k] = -1;
        t.price(phase1);
        t.optimize(allowed);
        if (t.value < 0)
            return {LpStatus::Infeasible, Scalar(0), {}};
        // Drive zero-level artificials out of the basis; rows where that is
        // impossible are linearly dependent and dropped.
        for (std::size_t i = t.a.size(); i-- > 0;) {
            if (t.basis[i] < first_art)
                continue;
            std::size_t j = npos;
            for (std::size_t k = 0; k < first_art; ++k)
                if (!t.a[i][k].is_zero()) {
                    j = k;
                    break;
                }
            if (j == npos)
                t.drop_row(i);
            else
                t.pivot(i, j);
        }
        for (std::size_t k = first_art; k < t.cols; ++k)
            allowed[k] = false;
    }

    std::vector<Scalar> cost(t.cols);
    for (std::size_t k = 0; k < n; ++k)
        cost[k] = lp.sense == Sense::Max ? lp.objective[k] : Scalar(-lp.objective[k]);
    t.price(cost);
    if (!t.optimize(allowed))
        return {LpStatus::Unbounded, Scalar(0), {}};

    LpSolution sol;
    sol.status = LpStatus::Optimal;
    sol.x.assign(n, Scalar(0));
    for (std::size_t i = 0; i < t.a.size(); ++i)
        if (t.basis[i] < n)
            sol.x[t.basis[i]] = t.rhs[i];
    sol.value = 0;
    for (std::size_t k = 0; k < n; ++k)
        sol.value += lp.objective[k] * sol.x[k];
    return sol;
}

LpOutcome solve_lp(std::span<const Scalar> objective, const ConvexBody& body, Sense sense)
{
    const std::size_t d = body.dim();
    if (objective.size() != d)
        throw ArgumentError("solve_lp: objective dimension mismatch");

    LinearProgram lp;
    lp.num_vars = 2 * d;
    lp.sense = sense;
    lp.objective.resize(2 * d);
    for (std::size_t k = 0; k < d; ++k) {
        lp.objective[k] = objective[k];
        lp.objective[d + k] = -objective[k];
    }
    for (std::size_t i = 0; i < body.num_rows(); ++i) {
        std::vector<Scalar> row(2 * d);
        for (std::size_t k = 0; k < d; ++k) {
            row[k] = body.rows()[i][k];
            row[d + k] = -body.rows()[i][k];
        }
        lp.add(std::move(row), Relation::LessEq, body.rhs()[i]);
    }

    LpSolution sol = solve(lp);
    LpOutcome out;
    out.status = sol.status;
    if (sol.status != LpStatus::Optimal)
        return out;
    Point x(d);
    for (std::size_t k = 0; k < d; ++k)
        x[k] = sol.x[k] - sol.x[d + k];
    if (!body.contains(x))
        throw InternalError("solve_lp: optimizer violates a constraint");
    out.value = dot(objective, x);
    out.point = std::move(x);
    return out;
}

} // namespace hellydiam
