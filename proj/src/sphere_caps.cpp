#include "hellydiam/sphere_caps.hpp"

#include "hellydiam/errors.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace hellydiam {

void CapParams::validate() const
{
    if (dim == 0)
        throw ArgumentError("cap dimension must be positive");
    if (delta <= 0 || delta > 1)
        throw ArgumentError("cap delta must lie in (0, 1]");
}

namespace {

// Largest two-significant-digit decimal not above x (x > 0).
Scalar two_digit_floor(double x)
{
    if (!(x > 0))
        return Scalar(0);
    int k = static_cast<int>(std::floor(std::log10(x)));
    Integer scale = 1;
    for (int i = 0; i < std::abs(1 - k); ++i)
        scale *= 10;
    double mant = x * std::pow(10.0, 1 - k);
    long long digits = static_cast<long long>(std::floor(mant));
    digits = std::clamp(digits, 1LL, 99LL);
    if (1 - k >= 0)
        return Scalar(Integer(digits), scale);
    return Scalar(Integer(digits * scale));
}

} // namespace

Scalar cap_fraction(const CapParams& params)
{
    params.validate();
    const std::size_t d = params.dim;
    if (d == 1)
        return Scalar(1, 2);
    if (d == 3)
        return params.delta / 2;
    const double delta = to_double(params.delta);
    double c = 0;
    if (d == 2) {
        c = std::acos(1 - delta) / M_PI;
    } else {
        double x = std::min(1.0, 2 * delta - delta * delta);
        c = 0.5 * boost::math::ibeta((static_cast<double>(d) - 1) / 2, 0.5, x);
    }
    return two_digit_floor(c * (1 - 1e-9));
}

bool in_cap(const Point& x, const Direction& v, const Scalar& delta)
{
    Scalar ip = dot(x, v.coords());
    Scalar cosine = 1 - delta;
    Scalar rhs = cosine * cosine * dot(x, x) * v.norm_sq();
    if (cosine >= 0)
        return ip >= 0 && ip * ip >= rhs;
    return ip >= 0 || ip * ip <= rhs;
}

bool in_double_cap(const Point& x, const Direction& v, const Scalar& delta)
{
    return in_cap(x, v, delta) || in_cap(Scalar(-1) * x, v, delta);
}

namespace {

using IntVec = std::vector<long long>;

Point to_point(const IntVec& v)
{
    Point p;
    for (long long c : v)
        p.emplace_back(c);
    return p;
}

double norm(const IntVec& v)
{
    double s = 0;
    for (long long c : v)
        s += static_cast<double>(c) * static_cast<double>(c);
    return std::sqrt(s);
}

// |⟨x,y⟩| <= κ|x||y| with κ >= 0: interiors of the C_{δ/4} caps around
// ±x and ±y are disjoint.
bool caps_disjoint(const IntVec& x, const IntVec& y, const Scalar& kappa, double kappa_d)
{
    long double ip = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        ip += static_cast<long double>(x[i]) * static_cast<long double>(y[i]);
    double c = static_cast<double>(std::fabs(static_cast<double>(ip)) / (norm(x) * norm(y)));
    if (c < kappa_d - 1e-9)
        return true;
    if (c > kappa_d + 1e-9)
        return false;
    Point px = to_point(x), py = to_point(y);
    Scalar e = dot(px, py);
    return e * e <= kappa * kappa * dot(px, px) * dot(py, py);
}

// Boundary points of [-R,R]^d with first nonzero coordinate positive.
std::vector<IntVec> projective_grid(std::size_t d, long long r)
{
    std::vector<IntVec> out;
    IntVec v(d, -r);
    while (true) {
        bool on_surface = false;
        for (long long c : v)
            on_surface = on_surface || c == r || c == -r;
        auto first = std::find_if(v.begin(), v.end(), [](long long c) { return c != 0; });
        if (on_surface && first != v.end() && *first > 0)
            out.push_back(v);
        std::size_t i = d;
        while (i > 0) {
            --i;
            if (++v[i] <= r)
                break;
            v[i] = -r;
            if (i == 0)
                return out;
        }
    }
}

std::size_t projective_grid_size(std::size_t d, long long r)
{
    double full = std::pow(2.0 * r + 1, static_cast<double>(d)) - std::pow(2.0 * r - 1, static_cast<double>(d));
    return static_cast<std::size_t>(full / 2);
}

int half_plane(const Point& u)
{
    return (u[1] > 0 || (u[1].is_zero() && u[0] > 0)) ? 0 : 1;
}

// Exact check that arcs of half-angle acos(1-δ) around `dirs` cover S^1.
bool covers_circle(std::vector<Point> dirs, const Scalar& delta)
{
    std::sort(dirs.begin(), dirs.end(), [](const Point& a, const Point& b) {
        int ha = half_plane(a), hb = half_plane(b);
        if (ha != hb)
            return ha < hb;
        return a[0] * b[1] - a[1] * b[0] > 0;
    });
    Scalar c = 1 - delta;
    Scalar cos2 = 2 * c * c - 1; // cosine of the largest admissible gap
    for (std::size_t k = 0; k < dirs.size(); ++k) {
        const Point& u = dirs[k];
        const Point& w = dirs[(k + 1) % dirs.size()];
        Scalar cr = u[0] * w[1] - u[1] * w[0];
        Scalar ip = dot(u, w);
        Scalar rhs = cos2 * cos2 * dot(u, u) * dot(w, w);
        if (cr < 0)
            return false;
        if (cr.is_zero()) {
            if (ip < 0 && cos2 > -1)
                return false;
            continue;
        }
        bool ok = cos2 >= 0 ? (ip >= 0 && ip * ip >= rhs) : (ip >= 0 || ip * ip <= rhs);
        if (!ok)
            return false;
    }
    return dirs.size() >= 2;
}

CapCover compute_cover(const CapParams& params)
{
    CapCover cover;
    cover.params = params;
    Scalar quarter = params.delta / 4;
    cover.packing_bound = static_cast<std::size_t>(
        boost::multiprecision::numerator(Scalar(1 / cap_fraction({params.dim, quarter}))) /
        boost::multiprecision::denominator(Scalar(1 / cap_fraction({params.dim, quarter}))));

    const std::size_t d = params.dim;
    if (d == 1) {
        cover.axes = {Direction(Point{Scalar(1)})};
        cover.directions = {Direction(Point{Scalar(1)}), Direction(Point{Scalar(-1)})};
        return cover;
    }

    const double delta = to_double(params.delta);
    const double phi = std::acos(1 - delta);
    const double theta = std::acos(1 - delta / 4);
    const double slack = phi - 2 * theta;
    const Scalar q = 1 - quarter;
    const Scalar kappa = 2 * q * q - 1;
    const double kappa_d = to_double(kappa);

    const double reach = std::sqrt(static_cast<double>(d - 1)) / 2;
    long long r = static_cast<long long>(std::ceil(1.05 * reach / std::sin(slack))) + 1;
    const std::size_t cap = d == 2 ? 200000 : 20000;
    bool capped = false;
    while (projective_grid_size(d, r) > cap && r > 1) {
        r = std::max<long long>(1, r * 9 / 10);
        capped = true;
    }
    cover.grid_radius = r;

    std::vector<IntVec> chosen;
    for (const IntVec& g : projective_grid(d, r)) {
        bool free = std::all_of(chosen.begin(), chosen.end(),
                                [&](const IntVec& c) { return caps_disjoint(g, c, kappa, kappa_d); });
        if (free)
            chosen.push_back(g);
    }
    for (const IntVec& c : chosen) {
        Point p = to_point(c);
        cover.axes.emplace_back(p);
        cover.directions.emplace_back(p);
        cover.directions.emplace_back(Scalar(-1) * p);
    }

    if (d == 2) {
        std::vector<Point> all;
        for (const auto& v : cover.directions)
            all.push_back(v.coords());
        cover.status = covers_circle(std::move(all), params.delta) ? CoverStatus::Verified
                                                                    : CoverStatus::CoverageUnverified;
    } else {
        bool spacing_ok = !capped && std::asin(std::min(1.0, reach / static_cast<double>(r))) <= slack;
        cover.status = spacing_ok ? CoverStatus::Verified : CoverStatus::CoverageUnverified;
    }
    return cover;
}

} // namespace

CapCover build_cover(const CapParams& params)
{
    params.validate();
    static std::mutex mu;
    static std::map<std::pair<std::size_t, std::string>, CapCover> memo;
    auto key = std::make_pair(params.dim, to_string(params.delta));
    {
        std::lock_guard lock(mu);
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
    }
    CapCover cover = compute_cover(params);
    std::lock_guard lock(mu);
    return memo.emplace(key, std::move(cover)).first->second;
}

namespace {

// Projective canonical form: scaled so the first nonzero coordinate is 1.
Point canonical(const Point& v)
{
    auto it = std::find_if(v.begin(), v.end(), [](const Scalar& x) { return !x.is_zero(); });
    Scalar s = *it;
    return (1 / s) * v;
}

std::vector<double> unit_double(const Point& v)
{
    std::vector<double> u;
    double n = 0;
    for (const auto& c : v) {
        u.push_back(to_double(c));
        n += u.back() * u.back();
    }
    n = std::sqrt(n);
    for (auto& c : u)
        c /= n;
    return u;
}

} // namespace

PigeonholeResult pigeonhole_direction(std::span<const Direction> dirs, const CapParams& params)
{
    params.validate();
    if (dirs.empty())
        throw ArgumentError("pigeonhole_direction: no directions");
    for (const auto& v : dirs)
        if (v.dim() != params.dim)
            throw ArgumentError("pigeonhole_direction: dimension mismatch");

    std::vector<Point> uniq;
    std::vector<std::size_t> count;
    std::map<Point, std::size_t> slot;
    std::vector<std::size_t> slot_of(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        Point c = canonical(dirs[i].coords());
        auto [it, inserted] = slot.emplace(c, uniq.size());
        if (inserted) {
            uniq.push_back(std::move(c));
            count.push_back(0);
        }
        ++count[it->second];
        slot_of[i] = it->second;
    }

    std::vector<Direction> candidates;
    for (const auto& u : uniq)
        candidates.emplace_back(u);
    for (const auto& a : build_cover(params).axes)
        candidates.push_back(a);

    std::vector<std::vector<double>> unit;
    for (const auto& u : uniq)
        unit.push_back(unit_double(u));
    const double threshold = std::pow(1 - to_double(params.delta), 2);

    auto captured = [&](const Direction& axis) {
        std::vector<bool> hit(uniq.size(), false);
        std::vector<double> a = unit_double(axis.coords());
        for (std::size_t k = 0; k < uniq.size(); ++k) {
            double ip = 0;
            for (std::size_t i = 0; i < a.size(); ++i)
                ip += a[i] * unit[k][i];
            double c2 = ip * ip;
            if (c2 > threshold + 1e-9)
                hit[k] = true;
            else if (c2 >= threshold - 1e-9)
                hit[k] = in_double_cap(uniq[k], axis, params.delta);
        }
        return hit;
    };

    std::size_t best = 0;
    std::size_t best_hits = 0;
    std::vector<bool> best_mask;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        std::vector<bool> mask = captured(candidates[c]);
        std::size_t h = 0;
        for (std::size_t k = 0; k < uniq.size(); ++k)
            if (mask[k])
                h += count[k];
        if (c == 0 || h > best_hits) {
            best = c;
            best_hits = h;
            best_mask = std::move(mask);
        }
    }

    PigeonholeResult out{candidates[best], {}, true};
    for (std::size_t i = 0; i < dirs.size(); ++i)
        if (best_mask[slot_of[i]])
            out.hits.push_back(i);
    out.meets_bound = Scalar(out.hits.size()) >= cap_fraction(params) * Scalar(dirs.size());
    if (!out.meets_bound && params.dim <= 2)
        throw InternalError("pigeonhole_direction: planar capture bound violated");
    return out;
}

} // namespace hellydiam
