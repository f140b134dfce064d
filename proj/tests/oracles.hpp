#pragma once

// Brute-force reference computations for the test suites. Each one works
// straight from the definition and shares no code path with the library
// routine it checks.

#include "achain/rational.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using achain::Rational;

/// y ∈ ∂^r F iff y ⊂ x for some x ∈ F with |x \ y| = r; scans all of 2^[n].
inline std::set<std::uint64_t> shadow(int n, const std::set<std::uint64_t>& family, int r) {
    std::set<std::uint64_t> out;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
        for (auto x : family)
            if ((y & ~x) == 0 && std::popcount(x) - std::popcount(y) == r) {
                out.insert(y);
                break;
            }
    return out;
}

inline std::set<std::uint64_t> upper_shadow(int n, const std::set<std::uint64_t>& family, int r) {
    std::set<std::uint64_t> out;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
        for (auto x : family)
            if ((x & ~y) == 0 && std::popcount(y) - std::popcount(x) == r) {
                out.insert(y);
                break;
            }
    return out;
}

/// Plain include/exclude enumeration of antichain distance-d codes, no bound
/// beyond "remaining candidates cannot beat the best". Practical to n = 6.
inline std::size_t max_antichain_code(int n, int d) {
    const std::size_t v = std::size_t{1} << n;
    auto ok = [&](std::uint64_t x, std::uint64_t y) {
        return (x & ~y) != 0 && (y & ~x) != 0 && std::popcount(x ^ y) >= d;
    };
    std::size_t best = 0;
    std::vector<std::uint64_t> chosen;
    auto rec = [&](auto&& self, std::uint64_t next) -> void {
        if (chosen.size() + (v - next) <= best) return;
        if (next == v) {
            best = std::max(best, chosen.size());
            return;
        }
        bool fits = true;
        for (auto c : chosen)
            if (!ok(c, next)) {
                fits = false;
                break;
            }
        if (fits) {
            chosen.push_back(next);
            self(self, next + 1);
            chosen.pop_back();
        }
        self(self, next + 1);
    };
    rec(rec, 0);
    return std::max<std::size_t>(best, 1);
}

/// Level-set sizes keyed by exact rational sum, enumerated over all 2^n subsets.
inline std::map<Rational, std::uint64_t> level_sizes(const std::vector<Rational>& a) {
    std::map<Rational, std::uint64_t> counts;
    const std::size_t n = a.size();
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        Rational s = 0;
        for (std::size_t i = 0; i < n; ++i)
            if ((x >> i) & 1) s += a[i];
        ++counts[s];
    }
    return counts;
}

/// (max count, smallest alpha attaining it)
inline std::pair<std::uint64_t, Rational> rho_count(const std::vector<Rational>& a) {
    std::uint64_t best = 0;
    Rational alpha = 0;
    for (const auto& [s, c] : level_sizes(a))
        if (c > best) {
            best = c;
            alpha = s;
        }
    return {best, alpha};
}

/// Some disjoint x, y with 1 <= |x| + |y| <= 2r and equal sums.
inline bool halasz_violated(const std::vector<Rational>& a, int r) {
    const std::size_t n = a.size();
    const std::uint64_t all = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < all; ++x)
        for (std::uint64_t y = 0; y < all; ++y) {
            if (x & y) continue;
            int t = std::popcount(x) + std::popcount(y);
            if (t < 1 || t > 2 * r) continue;
            Rational sx = 0, sy = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if ((x >> i) & 1) sx += a[i];
                if ((y >> i) & 1) sy += a[i];
            }
            if (sx == sy) return true;
        }
    return false;
}

}  // namespace oracle
