#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hellydiam {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
/// Stops early when f returns false. Returns false iff stopped early.
template <typename F>
bool for_each_combination(std::size_t n, std::size_t k, F&& f)
{
    if (k > n)
        return true;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        if (!f(std::span<const std::size_t>(idx)))
            return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1))
            --i;
        if (i == 0)
            return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

/// Calls f(choice) for every element of the product range
/// [0,sizes[0]) x ... x [0,sizes[r-1]), last coordinate fastest.
template <typename F>
bool for_each_product(std::span<const std::size_t> sizes, F&& f)
{
    for (std::size_t s : sizes)
        if (s == 0)
            return true;
    std::vector<std::size_t> choice(sizes.size(), 0);
    while (true) {
        if (!f(std::span<const std::size_t>(choice)))
            return false;
        std::size_t i = sizes.size();
        while (i > 0) {
            --i;
            if (++choice[i] < sizes[i])
                break;
            choice[i] = 0;
            if (i == 0)
                return true;
        }
        if (sizes.empty())
            return true;
    }
}

/// Set partitions of {0..n-1} into at most max_blocks blocks, as restricted
/// growth strings (block label per element), in lexicographic order.
template <typename F>
bool for_each_set_partition(std::size_t n, std::size_t max_blocks, F&& f)
{
    if (n == 0 || max_blocks == 0)
        return true;
    std::vector<std::size_t> rgs(n, 0);
    std::vector<std::size_t> prefix_max(n, 0); // max label among rgs[0..i]
    while (true) {
        if (!f(std::span<const std::size_t>(rgs)))
            return false;
        std::size_t i = n;
        bool advanced = false;
        while (i > 1) {
            --i;
            std::size_t limit = prefix_max[i - 1] + 1;
            if (rgs[i] < limit && rgs[i] + 1 < max_blocks) {
                ++rgs[i];
                prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
                for (std::size_t j = i + 1; j < n; ++j) {
                    rgs[j] = 0;
                    prefix_max[j] = prefix_max[i];
                }
                advanced = true;
                break;
            }
        }
        if (!advanced)
            return true;
    }
}

/// Stirling number of the second kind S(n, k).
std::uint64_t stirling2(std::size_t n, std::size_t k);

} // namespace hellydiam
