#include "hellydiam/generate.hpp"

#include "hellydiam/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace hellydiam {

namespace {

constexpr long long kGrid = 64;

class Source
{
public:
    explicit Source(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t below(std::uint64_t n) { return rng_() % n; }

    // Multiple of 1/kGrid in [-half, half].
    Scalar symmetric(const Scalar& half)
    {
        Scalar steps = half * kGrid;
        Integer n = numerator(steps) / denominator(steps);
        if (n <= 0)
            return 0;
        std::uint64_t span = static_cast<std::uint64_t>(2 * n + 1);
        return Scalar(Integer(below(span)) - n, kGrid);
    }

private:
    std::mt19937_64 rng_;
};

Scalar param(const GeneratorSpec& spec, const std::string& key, const Scalar& fallback)
{
    auto it = spec.params.find(key);
    return it == spec.params.end() ? fallback : it->second;
}

std::size_t count_param(const GeneratorSpec& spec, const std::string& key, std::size_t fallback)
{
    Scalar v = param(spec, key, Scalar(fallback));
    if (v < 0 || denominator(v) != 1)
        throw ArgumentError("generate: parameter " + key + " must be a nonnegative integer");
    return static_cast<std::size_t>(numerator(v));
}

Family boxes(const GeneratorSpec& spec, Source& src)
{
    Scalar size = param(spec, "size", 1), jitter = param(spec, "jitter", Scalar(1, 2));
    if (size <= 0 || jitter < 0)
        throw ArgumentError("generate: boxes need size > 0 and jitter >= 0");
    Family f{spec.dim, {}};
    for (std::size_t i = 0; i < spec.count; ++i) {
        Point lo(spec.dim), hi(spec.dim);
        for (std::size_t c = 0; c < spec.dim; ++c) {
            Scalar centre = src.symmetric(jitter);
            lo[c] = centre - size / 2;
            hi[c] = centre + size / 2;
        }
        f.bodies.push_back(ConvexBody::box(lo, hi));
    }
    return f;
}

Family random_halfspaces(const GeneratorSpec& spec, Source& src)
{
    const std::size_t d = spec.dim;
    Scalar radius = param(spec, "radius", 1), extent = param(spec, "extent", 2), jitter = param(spec, "jitter", 1);
    std::size_t rows = count_param(spec, "rows", 2 * d + 2);
    if (radius <= 0 || extent < radius || jitter < 0)
        throw ArgumentError("generate: random-halfspaces need 0 < radius <= extent and jitter >= 0");
    Family f{d, {}};
    for (std::size_t i = 0; i < spec.count; ++i) {
        Point centre(d);
        for (auto& x : centre)
            x = src.symmetric(jitter);
        Point lo(d), hi(d);
        for (std::size_t c = 0; c < d; ++c) {
            lo[c] = centre[c] - extent;
            hi[c] = centre[c] + extent;
        }
        ConvexBody box = ConvexBody::box(lo, hi);
        std::vector<Point> a = box.rows();
        std::vector<Scalar> b = box.rhs();
        // ⟨n, x - c⟩ <= radius·|n|_∞ keeps the cube of half-width radius/d.
        for (std::size_t r = 0; r < rows; ++r) {
            Point n(d);
            Scalar big = 0;
            while (big == 0) {
                for (auto& x : n) {
                    x = Scalar(static_cast<long long>(src.below(9)) - 4);
                    big = std::max(big, Scalar(abs(x)));
                }
            }
            b.push_back(dot(n, centre) + radius * big);
            a.push_back(std::move(n));
        }
        f.bodies.emplace_back(d, std::move(a), std::move(b));
    }
    return f;
}

Family shifted_core(const GeneratorSpec& spec, Source& src)
{
    const std::size_t d = spec.dim;
    std::size_t cores = count_param(spec, "cores", 1), miss = count_param(spec, "miss", 0);
    std::size_t extra = count_param(spec, "extra", 2);
    Scalar spread = param(spec, "spread", Scalar(1, 2));
    if (cores == 0 || miss >= cores)
        throw ArgumentError("generate: shifted-core needs cores >= 1 and miss < cores");
    if (d == 1 && cores > 1)
        throw ArgumentError("generate: several cores need d >= 2");
    if (spread < 0 || spread > Scalar(1, 2))
        throw ArgumentError("generate: spread must lie in [0, 1/2]");

    std::vector<Point> centres;
    for (std::size_t j = 0; j < cores; ++j) {
        Point c(d);
        if (cores > 1) {
            double angle = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(cores);
            double r = 5.0 * static_cast<double>(cores);
            c[0] = floor_to(r * std::cos(angle), kGrid);
            c[1] = floor_to(r * std::sin(angle), kGrid);
        }
        centres.push_back(std::move(c));
    }
    Point half_e1 = Scalar(1, 2) * unit_vector(d, 0);

    Family f{d, {}};
    for (std::size_t i = 0; i < spec.count; ++i) {
        std::vector<std::size_t> order(cores);
        for (std::size_t j = 0; j < cores; ++j)
            order[j] = j;
        for (std::size_t j = 0; j < miss; ++j)
            std::swap(order[j], order[j + src.below(cores - j)]);
        std::set<std::size_t> missing(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(miss));
        std::vector<Point> pts;
        for (std::size_t j = 0; j < cores; ++j) {
            if (missing.count(j))
                continue;
            pts.push_back(centres[j] - half_e1);
            pts.push_back(centres[j] + half_e1);
            for (std::size_t e = 0; e < extra; ++e) {
                Point p = centres[j];
                for (auto& x : p)
                    x += src.symmetric(spread);
                pts.push_back(std::move(p));
            }
        }
        f.bodies.push_back(ConvexBody::from_vertices(std::move(pts)));
    }
    return f;
}

} // namespace

Shape parse_shape(const std::string& name)
{
    if (name == "boxes")
        return Shape::Boxes;
    if (name == "random-halfspaces")
        return Shape::RandomHalfspaces;
    if (name == "shifted-core")
        return Shape::ShiftedCore;
    throw ArgumentError("unknown shape: " + name);
}

std::string shape_name(Shape shape)
{
    switch (shape) {
    case Shape::Boxes:
        return "boxes";
    case Shape::RandomHalfspaces:
        return "random-halfspaces";
    case Shape::ShiftedCore:
        break;
    }
    return "shifted-core";
}

Family generate(const GeneratorSpec& spec)
{
    if (spec.dim == 0)
        throw ArgumentError("generate: dim must be positive");
    Source src(spec.seed);
    switch (spec.shape) {
    case Shape::Boxes:
        return boxes(spec, src);
    case Shape::RandomHalfspaces:
        return random_halfspaces(spec, src);
    case Shape::ShiftedCore:
        break;
    }
    return shifted_core(spec, src);
}

Json to_json(const GeneratorSpec& spec)
{
    Json params = Json::object();
    for (const auto& [k, v] : spec.params)
        params[k] = to_json(v);
    return Json{{"dim", spec.dim},
                {"count", spec.count},
                {"shape", shape_name(spec.shape)},
                {"seed", spec.seed},
                {"params", params}};
}

} // namespace hellydiam
