#pragma once

#include <cstddef>
#include <vector>

namespace ergent {

// Odometer over the product basis: x and c are updated incrementally as the
// least-significant digit advances, so the walk is O(D) amortized.
template <class F>
void for_each_split(const Register& reg, const PartitionMask& x, F&& f) {
    const int m = reg.parties();
    std::vector<std::size_t> wx(static_cast<std::size_t>(m), 0), wc(static_cast<std::size_t>(m), 0);
    std::size_t sx = 1, sc = 1;
    for (int p = m - 1; p >= 0; --p) {
        const auto d = static_cast<std::size_t>(reg.dim(p));
        if (x.contains(p)) {
            wx[static_cast<std::size_t>(p)] = sx;
            sx *= d;
        } else {
            wc[static_cast<std::size_t>(p)] = sc;
            sc *= d;
        }
    }
    std::vector<int> digit(static_cast<std::size_t>(m), 0);
    std::size_t ix = 0, ic = 0;
    const std::size_t total = reg.size();
    for (std::size_t i = 0; i < total; ++i) {
        f(i, ix, ic);
        for (int p = m - 1; p >= 0; --p) {
            const auto up = static_cast<std::size_t>(p);
            if (++digit[up] < reg.dim(p)) {
                ix += wx[up];
                ic += wc[up];
                break;
            }
            const auto back = static_cast<std::size_t>(digit[up] - 1);
            digit[up] = 0;
            ix -= back * wx[up];
            ic -= back * wc[up];
        }
    }
}

}  // namespace ergent
