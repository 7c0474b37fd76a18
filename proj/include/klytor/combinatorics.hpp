#pragma once

#include <cstddef>
#include <vector>

namespace klytor {

/// Calls f(indices) for every k-subset of {0..m-1} in lexicographic order.
/// Stops early when f returns false.
template <class F>
bool for_each_subset(std::size_t m, std::size_t k, F&& f) {
    if (k > m)
        return true;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        if (!f(static_cast<const std::vector<std::size_t>&>(idx)))
            return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == m - k + (i - 1))
            --i;
        if (i == 0)
            return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

/// Calls f(mask) for every bitmask over m elements (m <= 62).
template <class F>
void for_each_mask(std::size_t m, F&& f) {
    unsigned long end = 1ULL << m;
    for (unsigned long s = 0; s < end; ++s)
        f(s);
}

}  // namespace klytor
