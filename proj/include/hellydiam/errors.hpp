#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hellydiam {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed call: dimension mismatch, empty input, parameter out of range.
class ArgumentError : public Error
{
public:
    using Error::Error;
};

class EmptyBody : public Error
{
public:
    EmptyBody() : Error("convex body is empty") {}
};

class Unbounded : public Error
{
public:
    Unbounded() : Error("convex body is unbounded") {}
};

/// A stated precondition of an operation does not hold. `required` carries a
/// size the caller must meet when the failure is quantitative (0 otherwise).
class PreconditionFailed : public Error
{
public:
    explicit PreconditionFailed(const std::string& what, std::size_t required = 0)
        : Error(what), required_(required)
    {
    }
    std::size_t required() const { return required_; }

private:
    std::size_t required_;
};

/// The theorem hypothesis is violated by the input; `subset` is the offending
/// index set when one was located.
class HypothesisFailed : public Error
{
public:
    HypothesisFailed(const std::string& what, std::vector<std::size_t> subset)
        : Error(what), subset_(std::move(subset))
    {
    }
    const std::vector<std::size_t>& subset() const { return subset_; }

private:
    std::vector<std::size_t> subset_;
};

/// The finite witness ground set does not cover every body.
class GroundSetInsufficient : public Error
{
public:
    explicit GroundSetInsufficient(std::vector<std::size_t> uncovered)
        : Error("ground set leaves bodies uncovered"), uncovered_(std::move(uncovered))
    {
    }
    const std::vector<std::size_t>& uncovered() const { return uncovered_; }

private:
    std::vector<std::size_t> uncovered_;
};

/// A certificate failed re-verification or a search the theory guarantees to
/// succeed came back empty. Always a bug or a silently broken precondition.
class InternalError : public Error
{
public:
    using Error::Error;
};

class Unsupported : public Error
{
public:
    using Error::Error;
};

/// Finite resolution (grid size, enumeration cap) was exhausted.
class ResolutionError : public Error
{
public:
    using Error::Error;
};

} // namespace hellydiam
