#pragma once

// Brute-force reference computations for the test suites. Nothing here calls
// the decision procedures it is used to check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "lfroe/supernatural.hpp"

namespace lfroe::oracle {

// k_n by multiplying unrolled ratios as machine integers.
inline std::vector<std::uint64_t> orders(const std::vector<std::uint64_t>& prefix,
                                         const std::vector<std::uint64_t>& tail, std::size_t levels)
{
    std::vector<std::uint64_t> k{1};
    for (std::size_t n = 0; n < levels; ++n) {
        std::uint64_t r = 1;
        if (n < prefix.size()) {
            r = prefix[n];
        } else if (!tail.empty()) {
            r = tail[(n - prefix.size()) % tail.size()];
        }
        k.push_back(k.back() * r);
    }
    return k;
}

inline std::uint64_t valuation(std::uint64_t value, std::uint64_t p)
{
    std::uint64_t v = 0;
    while (value % p == 0) {
        value /= p;
        ++v;
    }
    return v;
}

inline bool is_small_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Exponent of p in the supernatural number of the orders k_0..k_n: infinite
// when the valuation keeps growing over the last period window.
struct ExponentGuess {
    bool infinite = false;
    std::uint64_t value = 0;
};

inline ExponentGuess exponent_by_growth(const std::vector<std::uint64_t>& k, std::uint64_t p, std::size_t window)
{
    const std::uint64_t last = valuation(k.back(), p);
    const std::uint64_t earlier = valuation(k[k.size() - 1 - window], p);
    return last > earlier ? ExponentGuess{true, 0} : ExponentGuess{false, last};
}

// Block-space distance via mixed-radix digits: 1 + the highest digit index at
// which x and y differ (0 when equal).
inline std::uint64_t radix_distance(std::uint64_t x, std::uint64_t y, const std::vector<std::uint64_t>& ratios)
{
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        if (x % ratios[i] != y % ratios[i]) d = i + 1;
        x /= ratios[i];
        y /= ratios[i];
    }
    return d;
}

// Components of the relation dist(a, b) <= radius by breadth-first search,
// as a set of sorted point sets.
template <typename Dist>
std::set<std::vector<std::size_t>> bfs_components(std::size_t n, std::uint64_t radius, Dist dist)
{
    std::set<std::vector<std::size_t>> out;
    std::vector<bool> seen(n, false);
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> comp;
        std::queue<std::size_t> todo;
        todo.push(s);
        seen[s] = true;
        while (!todo.empty()) {
            const std::size_t x = todo.front();
            todo.pop();
            comp.push_back(x);
            for (std::size_t y = 0; y < n; ++y) {
                if (!seen[y] && dist(x, y) <= radius) {
                    seen[y] = true;
                    todo.push(y);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.insert(std::move(comp));
    }
    return out;
}

// k-components of a finite subset of Z>=0: split the sorted points at gaps
// larger than k.
inline std::vector<std::vector<std::uint64_t>> integer_components(std::vector<std::uint64_t> pts, std::uint64_t k)
{
    std::sort(pts.begin(), pts.end());
    std::vector<std::vector<std::uint64_t>> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i == 0 || pts[i] - pts[i - 1] > k) out.emplace_back();
        out.back().push_back(pts[i]);
    }
    return out;
}

// Aligned k-block sums of an explicitly materialized eventually periodic
// sequence, for blocks j = 0 .. count-1.
inline std::vector<std::int64_t> materialized_block_sums(const std::vector<std::int64_t>& prefix,
                                                        const std::vector<std::int64_t>& period, std::uint64_t k,
                                                        std::uint64_t count)
{
    std::vector<std::int64_t> sums(count, 0);
    for (std::uint64_t i = 0; i < count * k; ++i) {
        const std::int64_t v = i < prefix.size() ? prefix[i] : period[(i - prefix.size()) % period.size()];
        sums[i / k] += v;
    }
    return sums;
}

// Blocks needed to see every distinct block sum: those touching the prefix
// plus one full period of the tail (q blocks always suffice).
inline std::uint64_t brute_window(std::size_t prefix_len, std::size_t period_len, std::uint64_t k)
{
    return (prefix_len + k - 1) / k + period_len;
}

} // namespace lfroe::oracle
