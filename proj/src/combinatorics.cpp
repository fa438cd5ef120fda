#include "hellydiam/combinatorics.hpp"

#include <algorithm>

namespace hellydiam {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

std::uint64_t stirling2(std::size_t n, std::size_t k)
{
    if (n == 0 && k == 0)
        return 1;
    if (n == 0 || k == 0 || k > n)
        return 0;
    std::vector<std::uint64_t> row(k + 1, 0);
    row[0] = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = std::min(i, k); j >= 1; --j)
            row[j] = j * row[j] + row[j - 1];
        row[0] = 0;
    }
    return row[k];
}

} // namespace hellydiam
