#pragma once

#include "hellydiam/geometry.hpp"

#include <span>
#include <vector>

namespace hellydiam {

/// Caps C_δ(x) = {y on S^{d-1} : ⟨x,y⟩ >= 1 - δ}; dim is the ambient d.
struct CapParams
{
    std::size_t dim = 2;
    Scalar delta;

    /// Throws ArgumentError unless dim >= 1 and 0 < delta <= 1.
    void validate() const;
};

/// Rational lower bound on the normalized measure of C_δ. Exact δ/2 in d = 3
/// and 1/2 in d = 1; otherwise the closed form (d = 2) or the regularized
/// incomplete beta integral (d >= 4), shrunk by a relative 1e-9 margin and
/// truncated to two significant digits.
Scalar cap_fraction(const CapParams& params);

/// Normalized ⟨x,v⟩ >= 1 - δ, decided exactly by squaring.
bool in_cap(const Point& x, const Direction& v, const Scalar& delta);

/// x or -x lies in C_δ(v).
bool in_double_cap(const Point& x, const Direction& v, const Scalar& delta);

enum class CoverStatus { Verified, CoverageUnverified };

struct CapCover
{
    CapParams params;
    /// Cover directions: each packing centre followed by its negation.
    std::vector<Direction> directions;
    /// Packing centres only (one per antipodal pair).
    std::vector<Direction> axes;
    CoverStatus status = CoverStatus::Verified;
    /// ⌊1 / cap_fraction(δ/4)⌋, the packing-size bound; reported, not enforced.
    std::size_t packing_bound = 0;
    /// Grid half-width used by the greedy packing (0 for d = 1).
    long long grid_radius = 0;
};

/// Greedy maximal packing of antipodal pairs of C_{δ/4} caps over an integer
/// grid on the cube surface; the centres and their negations cover the
/// sphere by C_δ caps. Coverage is certified exactly in d = 2 and by an
/// angular spacing bound in d >= 3.
CapCover build_cover(const CapParams& params);

struct PigeonholeResult
{
    Direction axis;
    std::vector<std::size_t> hits;
    /// hits.size() >= cap_fraction(params) * dirs.size(); always true for
    /// d <= 2.
    bool meets_bound = true;
};

/// Axis capturing the most directions (read as antipodal pairs) in its
/// double cap. Candidates: the input directions in order, then the cover
/// axes; first best wins.
PigeonholeResult pigeonhole_direction(std::span<const Direction> dirs, const CapParams& params);

} // namespace hellydiam
