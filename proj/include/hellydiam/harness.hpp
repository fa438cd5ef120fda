#pragma once

#include "hellydiam/generate.hpp"
#include "hellydiam/serialize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hellydiam {

struct RunParams
{
    Scalar delta{1, 4};
    Scalar epsilon{1, 2};
    std::size_t p = 0; ///< 0: 2d
    std::size_t q = 0; ///< 0: 2d
    std::size_t m = 2;
    std::size_t exhaustive_cap = 14;
    std::uint64_t seed = 0;
    std::optional<Direction> direction; ///< width commands; default e1
    Scalar t{1};
    std::size_t d = 2;  ///< extremal, scaling
    std::size_t k = 2;  ///< extremal
    std::vector<Scalar> deltas{Scalar(1, 2), Scalar(1, 4), Scalar(1, 8), Scalar(1, 16)};
    std::size_t trials = 4;
    bool timings = false;
    std::optional<GeneratorSpec> generator;
};

/// Family for single-family commands, or colour classes for colorful-*.
struct RunInput
{
    std::optional<Family> family;
    std::vector<Family> classes;
};

/// Accepts {"dim", "bodies"} or {"classes": [family, ...]}.
RunInput input_from_json(const Json& j);
Json to_json(const RunInput& input);

struct RunReport
{
    std::string command;
    std::string input_digest;
    std::string outcome = "ok"; ///< "ok" or the error kind
    Json certificates = Json::object();
    std::optional<double> millis;
    bool verified = false;

    Json to_json() const;
};

/// Runs one command, re-verifies its certificates independently and never
/// throws for module errors (they become the outcome).
RunReport run(const std::string& command, const RunInput& input, const RunParams& params);

const std::vector<std::string>& command_names();

struct ScalingRow
{
    Scalar delta;
    std::size_t n_observed = 0;
    std::size_t trials = 0;
};

/// Cap-style planar families: N antipodal pairs ±w_j on the radius-1/2
/// circle (angles jittered per trial and N, independent of δ) and
/// K_i = conv{±w_j : j != i}. Every N - 1 members share the unit segment
/// [-w_i, w_i]; n_observed(δ) is the largest N (over all trials) whose full
/// intersection still has squared diameter below (1 - δ)².
std::vector<ScalingRow> scaling_experiment(std::size_t d,
                                           const std::vector<Scalar>& deltas,
                                           std::size_t trials,
                                           std::uint64_t seed,
                                           std::size_t max_pairs = 32);

/// Header "delta,n_observed,trials"; δ as a decimal.
std::string scaling_csv(const std::vector<ScalingRow>& rows);

/// HELLYDIAM_THREADS when set to a positive integer, else 1.
std::size_t thread_cap();

} // namespace hellydiam
