#pragma once

// Set families in 2^[n]: layers, shadows, antichain and distance checks,
// translation, and the local-LYM density comparison.

#include "achain/rational.hpp"
#include "achain/subset.hpp"

#include <bit>
#include <optional>
#include <utility>

namespace achain {

inline void require_layer_index(int n, int k) {
    if (k < 0 || k > n)
        throw std::invalid_argument("layer index " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
}

/// All k-subsets of [n].
inline SetFamily layer(int n, int k) {
    require_ground_set(n);
    require_layer_index(n, k);
    std::vector<std::uint64_t> masks;
    masks.reserve(binomial(n, k).convert_to<std::size_t>());
    for_each_k_subset(n, k, [&](std::uint64_t m) { masks.push_back(m); });
    return SetFamily::from_sorted_masks(n, std::move(masks));
}

/// Members of F with exactly k elements.
inline SetFamily restrict_to_layer(const SetFamily& family, int k) {
    require_layer_index(family.ground(), k);
    std::vector<std::uint64_t> out;
    for (auto m : family.masks())
        if (std::popcount(m) == k) out.push_back(m);
    return SetFamily::from_sorted_masks(family.ground(), std::move(out));
}

namespace detail {

inline SetFamily single_shadow_step(const SetFamily& family, bool upward) {
    const int n = family.ground();
    const std::uint64_t full = full_mask(n);
    std::vector<std::uint64_t> out;
    for (auto m : family.masks()) {
        std::uint64_t candidates = upward ? (~m & full) : m;
        for (std::uint64_t b = candidates; b; b &= b - 1) out.push_back(m ^ (b & (~b + 1)));
    }
    return SetFamily::from_masks(n, std::move(out));
}

}  // namespace detail

/// r-fold lower shadow. Members with fewer than r elements contribute nothing.
inline SetFamily shadow(const SetFamily& family, int r) {
    if (r < 0) throw std::invalid_argument("shadow order must be non-negative");
    SetFamily current = family;
    for (int i = 0; i < r && !current.empty(); ++i) current = detail::single_shadow_step(current, false);
    return current;
}

/// r-fold upper shadow. Members with more than n - r elements contribute nothing.
inline SetFamily upper_shadow(const SetFamily& family, int r) {
    if (r < 0) throw std::invalid_argument("upper shadow order must be non-negative");
    SetFamily current = family;
    for (int i = 0; i < r && !current.empty(); ++i) current = detail::single_shadow_step(current, true);
    return current;
}

struct AntichainReport {
    bool antichain = true;
    /// first comparable pair (smaller, larger) in scan order, when not an antichain
    std::optional<std::pair<Subset, Subset>> witness;
};

/// Scans larger members y in increasing mask order and, for each, smaller
/// members x in increasing order; the first x ⊂ y found is the witness.
inline AntichainReport is_antichain(const SetFamily& family) {
    const auto masks = family.masks();
    AntichainReport report;
    if (masks.size() < 2) return report;
    const int first = std::popcount(masks.front());
    bool single_layer = true;
    for (auto m : masks)
        if (std::popcount(m) != first) {
            single_layer = false;
            break;
        }
    if (single_layer) return report;

    // x ⊂ y forces x < y numerically, so only earlier members can be contained.
    for (std::size_t j = 1; j < masks.size(); ++j) {
        const std::uint64_t y = masks[j];
        for (std::size_t i = 0; i < j; ++i) {
            if ((masks[i] & ~y) == 0) {
                report.antichain = false;
                report.witness.emplace(Subset(family.ground(), masks[i]), Subset(family.ground(), y));
                return report;
            }
        }
    }
    return report;
}

struct DistanceReport {
    /// n + 1 encodes +inf (fewer than two members)
    int min_distance = 0;
    std::optional<std::pair<Subset, Subset>> witness;

    bool infinite(int n) const noexcept { return min_distance > n; }
};

/// Minimum pairwise Hamming distance; the witness is the first pair (i < j)
/// in member order attaining it.
inline DistanceReport min_distance(const SetFamily& family) {
    const int n = family.ground();
    const auto masks = family.masks();
    DistanceReport report{n + 1, std::nullopt};
    std::size_t best_i = 0, best_j = 0;
    for (std::size_t i = 0; i + 1 < masks.size() && report.min_distance > 1; ++i) {
        for (std::size_t j = i + 1; j < masks.size(); ++j) {
            int d = std::popcount(masks[i] ^ masks[j]);
            if (d < report.min_distance) {
                report.min_distance = d;
                best_i = i;
                best_j = j;
                if (d == 1) break;
            }
        }
    }
    if (report.min_distance <= n) report.witness.emplace(family[best_i], family[best_j]);
    return report;
}

inline bool is_code(const SetFamily& family, int d) { return min_distance(family).min_distance >= d; }

/// {a △ x : a ∈ F}.
inline SetFamily translate(const SetFamily& family, const Subset& x) {
    if (x.ground() != family.ground()) throw std::invalid_argument("translate by a subset over a different ground set");
    std::vector<std::uint64_t> out;
    out.reserve(family.size());
    for (auto m : family.masks()) out.push_back(m ^ x.bits());
    return SetFamily::from_masks(family.ground(), std::move(out));
}

struct LocalLymReport {
    Rational lhs;  ///< |∂S| / C(n, k-1)
    Rational rhs;  ///< |S| / C(n, k)
    bool holds = false;
};

inline LocalLymReport check_local_lym(const SetFamily& family, int k) {
    const int n = family.ground();
    if (k < 1 || k > n) throw std::invalid_argument("local-LYM needs 1 <= k <= n");
    for (auto m : family.masks())
        if (std::popcount(m) != k)
            throw std::invalid_argument("family member " + std::to_string(m) + " not in layer " + std::to_string(k));
    LocalLymReport report;
    report.lhs = Rational(BigInt(shadow(family, 1).size()), binomial(n, k - 1));
    report.rhs = Rational(BigInt(family.size()), binomial(n, k));
    report.holds = report.lhs >= report.rhs;
    return report;
}

}  // namespace achain
