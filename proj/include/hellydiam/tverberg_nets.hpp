#pragma once

#include "hellydiam/geometry.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hellydiam {

/// Shared knobs. With `direction` set, "wide" means v-width >= 1 along it
/// and witnesses keep v-width >= 1 (no δ loss); otherwise wide means
/// diameter >= 1 and witnesses have length >= 1 - δ.
struct NetOptions
{
    std::optional<Direction> direction;
    std::size_t exhaustive_cap = 14;
    std::size_t random_subsets = 256;
    std::uint64_t seed = 0;
};

struct TverbergResult
{
    std::vector<std::vector<std::size_t>> parts;
    Segment witness;
    Direction axis;
    Scalar threshold;              ///< axis-width the witness is guaranteed to have
    std::vector<std::size_t> core; ///< pigeonholed members used for the depth region
    std::size_t depth = 0;         ///< every halfspace holding the witness meets this many core members
};

/// Bodies needed for m parts: ⌊4d²(m-1)/c⌋ + 1 with c = cap_fraction(d, δ)
/// (c = 1 in direction mode).
std::size_t tverberg_required_size(std::size_t dim, std::size_t m, const Scalar& delta, bool fixed_direction);

/// Partition into exactly m parts whose hulls (of the parts' vertex unions)
/// all contain one witness segment. Throws PreconditionFailed (with the
/// required size) for small families or bodies that are not wide.
TverbergResult tverberg_diameter(const Family& family, std::size_t m, const Scalar& delta, const NetOptions& opts = {});

struct SelectionResult
{
    Segment witness;
    std::vector<std::vector<std::size_t>> covered; ///< 2d-subsets A with witness ⊂ conv(∪A)
    Scalar lambda_observed;                        ///< |covered| / C(n, 2d)
    std::vector<std::vector<std::size_t>> parts;   ///< Tverberg partition of the pigeonholed subfamily
    std::vector<std::size_t> core;
};

/// Selection lemma. The witness is taken from the deepest depth region that
/// stays wide (never shallower than the partition needs). With
/// `enumerate_cover` false the covered list is left empty.
SelectionResult selection_diameter(const Family& family,
                                   const Scalar& delta,
                                   const NetOptions& opts = {},
                                   bool enumerate_cover = true);

struct NetResult
{
    std::vector<Segment> elements;
    bool exhaustive = true;           ///< false: heuristic violator search (NetHeuristic)
    std::size_t subfamilies_checked = 0;
    std::size_t subset_size = 0;      ///< ⌈ε n⌉
};

/// Weak ε-net of segments: every subfamily of at least ε n members has a
/// net element inside the hull of its union. Violators are searched over
/// all ⌈εn⌉-subsets when n <= exhaustive_cap, otherwise over sort-order
/// windows plus seeded random subsets.
NetResult weak_net_diameter(const Family& family, const Scalar& epsilon, const Scalar& delta, const NetOptions& opts = {});

/// Points of the union of the given members' vertex lists.
std::vector<Point> union_vertices(const Family& family, std::span<const std::size_t> members);

} // namespace hellydiam
