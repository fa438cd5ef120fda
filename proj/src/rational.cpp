#include "hellydiam/rational.hpp"

#include "hellydiam/errors.hpp"

#include <cctype>
#include <cmath>

namespace hellydiam {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

Integer parse_integer(std::string_view s)
{
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s))
        throw ArgumentError("not an integer: '" + std::string(s) + "'");
    Integer v{std::string(s)};
    return neg ? Integer(-v) : v;
}

Integer pow10(unsigned k)
{
    Integer r = 1;
    for (unsigned i = 0; i < k; ++i)
        r *= 10;
    return r;
}

} // namespace

Scalar parse_scalar(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    if (text.empty())
        throw ArgumentError("empty rational");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Integer num = parse_integer(text.substr(0, slash));
        Integer den = parse_integer(text.substr(slash + 1));
        if (den == 0)
            throw ArgumentError("zero denominator");
        return Scalar(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        bool neg = !whole.empty() && whole[0] == '-';
        if (!whole.empty() && (whole[0] == '-' || whole[0] == '+'))
            whole.remove_prefix(1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac)))
            throw ArgumentError("not a decimal: '" + std::string(text) + "'");
        Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole));
        Integer f = frac.empty() ? Integer(0) : Integer(std::string(frac));
        Integer scale = pow10(static_cast<unsigned>(frac.size()));
        Scalar r(Integer(w * scale + f), scale);
        return neg ? Scalar(-r) : r;
    }
    return Scalar(parse_integer(text));
}

std::string to_string(const Scalar& x)
{
    return x.str();
}

std::string to_decimal(const Scalar& x, int digits)
{
    Integer num = boost::multiprecision::numerator(x);
    Integer den = boost::multiprecision::denominator(x);
    bool neg = num < 0;
    if (neg)
        num = -num;

    Integer d = den;
    while (d % 2 == 0)
        d /= 2;
    while (d % 5 == 0)
        d /= 5;
    bool terminating = d == 1;

    std::string frac;
    Integer whole = num / den;
    Integer rem = num % den;
    if (terminating) {
        while (rem != 0) {
            rem *= 10;
            frac.push_back(static_cast<char>('0' + static_cast<int>(rem / den)));
            rem %= den;
        }
    } else {
        // Round half up at `digits` places.
        Integer scale = pow10(static_cast<unsigned>(digits));
        Integer scaled = (num * scale * 2 + den) / (den * 2);
        whole = scaled / scale;
        Integer f = scaled % scale;
        frac = f.str();
        frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
        while (!frac.empty() && frac.back() == '0')
            frac.pop_back();
    }
    std::string out = whole.str();
    if (!frac.empty())
        out += "." + frac;
    if (neg && out != "0")
        out.insert(0, "-");
    return out;
}

double to_double(const Scalar& x)
{
    return x.convert_to<double>();
}

std::optional<Scalar> exact_sqrt(const Scalar& x)
{
    if (x < 0)
        return std::nullopt;
    Integer num = boost::multiprecision::numerator(x);
    Integer den = boost::multiprecision::denominator(x);
    Integer rn = boost::multiprecision::sqrt(num);
    Integer rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den)
        return std::nullopt;
    return Scalar(rn, rd);
}

namespace {

// floor(sqrt(x) * d * 2^bits) and the scale d * 2^bits.
std::pair<Integer, Integer> scaled_isqrt(const Scalar& x, unsigned bits)
{
    Integer num = boost::multiprecision::numerator(x);
    Integer den = boost::multiprecision::denominator(x);
    Integer shift = Integer(1) << bits;
    Integer s = boost::multiprecision::sqrt(Integer(num * den * shift * shift));
    return {s, Integer(den * shift)};
}

} // namespace

Scalar sqrt_upper(const Scalar& x, unsigned bits)
{
    if (x < 0)
        throw ArgumentError("square root of a negative number");
    if (auto r = exact_sqrt(x))
        return *r;
    auto [s, scale] = scaled_isqrt(x, bits);
    return Scalar(Integer(s + 1), scale);
}

Scalar sqrt_lower(const Scalar& x, unsigned bits)
{
    if (x < 0)
        throw ArgumentError("square root of a negative number");
    if (auto r = exact_sqrt(x))
        return *r;
    auto [s, scale] = scaled_isqrt(x, bits);
    return Scalar(s, scale);
}

Scalar floor_to(double value, long long den)
{
    if (!std::isfinite(value) || den <= 0)
        throw ArgumentError("floor_to: bad arguments");
    Scalar exact(value);
    Scalar scaled = exact * den;
    Integer n = boost::multiprecision::numerator(scaled);
    Integer d = boost::multiprecision::denominator(scaled);
    Integer q = n / d;
    if (n < 0 && q * d != n)
        q -= 1;
    return Scalar(q, Integer(den));
}

int sign(const Scalar& x)
{
    return x.sign();
}

} // namespace hellydiam
