#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace achain {

/// Largest ground set that fits one machine word.
inline constexpr int kMaxGroundSet = 63;

inline void require_ground_set(int n) {
    if (n < 0 || n > kMaxGroundSet)
        throw std::invalid_argument("ground-set size must lie in [0, 63], got " + std::to_string(n));
}

inline constexpr std::uint64_t full_mask(int n) noexcept {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

/// A subset of [n]; element i corresponds to bit i-1.
class Subset {
public:
    Subset() = default;

    Subset(int n, std::uint64_t bits) : bits_(bits), n_(static_cast<std::uint8_t>(n)) {
        require_ground_set(n);
        if (bits & ~full_mask(n))
            throw std::invalid_argument("mask has bits beyond ground set of size " + std::to_string(n));
        size_ = static_cast<std::uint8_t>(std::popcount(bits));
    }

    /// Builds from 1-based elements.
    static Subset of(int n, std::initializer_list<int> elements) {
        std::uint64_t bits = 0;
        for (int e : elements) {
            if (e < 1 || e > n) throw std::invalid_argument("element " + std::to_string(e) + " outside [1, n]");
            bits |= std::uint64_t{1} << (e - 1);
        }
        return Subset(n, bits);
    }

    std::uint64_t bits() const noexcept { return bits_; }
    int ground() const noexcept { return n_; }
    int size() const noexcept { return size_; }
    bool contains(int element) const noexcept { return element >= 1 && element <= n_ && (bits_ >> (element - 1)) & 1; }

    /// Non-strict containment.
    bool subset_of(const Subset& other) const noexcept { return (bits_ & ~other.bits_) == 0; }

    std::vector<int> elements() const {
        std::vector<int> out;
        for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
        return out;
    }

    friend bool operator==(const Subset& a, const Subset& b) noexcept { return a.bits_ == b.bits_ && a.n_ == b.n_; }
    friend std::strong_ordering operator<=>(const Subset& a, const Subset& b) noexcept {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.bits_ <=> b.bits_;
    }

private:
    std::uint64_t bits_ = 0;
    std::uint8_t n_ = 0;
    std::uint8_t size_ = 0;
};

inline void require_same_ground(const Subset& x, const Subset& y) {
    if (x.ground() != y.ground())
        throw std::invalid_argument("subsets over different ground sets (" + std::to_string(x.ground()) + " vs " +
                                    std::to_string(y.ground()) + ")");
}

/// |x △ y|.
inline int hamming_distance(const Subset& x, const Subset& y) {
    require_same_ground(x, y);
    return std::popcount(x.bits() ^ y.bits());
}

/// x △ y.
inline Subset symmetric_difference(const Subset& x, const Subset& y) {
    require_same_ground(x, y);
    return Subset(x.ground(), x.bits() ^ y.bits());
}

/// A duplicate-free family of subsets of [n], kept sorted by mask value.
class SetFamily {
public:
    SetFamily() = default;
    explicit SetFamily(int n) : n_(n) { require_ground_set(n); }

    /// Sorts and deduplicates; every mask must fit the ground set.
    static SetFamily from_masks(int n, std::vector<std::uint64_t> masks) {
        SetFamily f(n);
        const std::uint64_t full = full_mask(n);
        for (auto m : masks)
            if (m & ~full) throw std::invalid_argument("mask has bits beyond ground set of size " + std::to_string(n));
        std::sort(masks.begin(), masks.end());
        masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
        f.masks_ = std::move(masks);
        return f;
    }

    static SetFamily from_subsets(int n, std::span<const Subset> members) {
        std::vector<std::uint64_t> masks;
        masks.reserve(members.size());
        for (const auto& s : members) {
            if (s.ground() != n) throw std::invalid_argument("member over a different ground set");
            masks.push_back(s.bits());
        }
        return from_masks(n, std::move(masks));
    }

    static SetFamily of(int n, std::initializer_list<std::initializer_list<int>> members) {
        std::vector<std::uint64_t> masks;
        for (auto m : members) masks.push_back(Subset::of(n, m).bits());
        return from_masks(n, std::move(masks));
    }

    /// Adopts masks already strictly increasing and in range; checked.
    static SetFamily from_sorted_masks(int n, std::vector<std::uint64_t> masks) {
        SetFamily f(n);
        const std::uint64_t full = full_mask(n);
        for (std::size_t i = 0; i < masks.size(); ++i) {
            if (masks[i] & ~full) throw std::invalid_argument("mask has bits beyond ground set");
            if (i > 0 && masks[i - 1] >= masks[i]) throw std::invalid_argument("masks not strictly increasing");
        }
        f.masks_ = std::move(masks);
        return f;
    }

    int ground() const noexcept { return n_; }
    std::size_t size() const noexcept { return masks_.size(); }
    bool empty() const noexcept { return masks_.empty(); }
    std::span<const std::uint64_t> masks() const noexcept { return masks_; }
    Subset operator[](std::size_t i) const { return Subset(n_, masks_[i]); }

    bool contains(std::uint64_t mask) const noexcept { return std::binary_search(masks_.begin(), masks_.end(), mask); }
    bool contains(const Subset& s) const noexcept { return s.ground() == n_ && contains(s.bits()); }

    std::vector<Subset> members() const {
        std::vector<Subset> out;
        out.reserve(masks_.size());
        for (auto m : masks_) out.emplace_back(n_, m);
        return out;
    }

    friend bool operator==(const SetFamily&, const SetFamily&) = default;

private:
    int n_ = 0;
    std::vector<std::uint64_t> masks_;
};

inline SetFamily family_union(const SetFamily& a, const SetFamily& b) {
    if (a.ground() != b.ground()) throw std::invalid_argument("families over different ground sets");
    std::vector<std::uint64_t> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.masks().begin(), a.masks().end(), b.masks().begin(), b.masks().end(), std::back_inserter(out));
    return SetFamily::from_sorted_masks(a.ground(), std::move(out));
}

inline SetFamily family_intersection(const SetFamily& a, const SetFamily& b) {
    if (a.ground() != b.ground()) throw std::invalid_argument("families over different ground sets");
    std::vector<std::uint64_t> out;
    std::set_intersection(a.masks().begin(), a.masks().end(), b.masks().begin(), b.masks().end(),
                          std::back_inserter(out));
    return SetFamily::from_sorted_masks(a.ground(), std::move(out));
}

inline SetFamily family_difference(const SetFamily& a, const SetFamily& b) {
    if (a.ground() != b.ground()) throw std::invalid_argument("families over different ground sets");
    std::vector<std::uint64_t> out;
    std::set_difference(a.masks().begin(), a.masks().end(), b.masks().begin(), b.masks().end(),
                        std::back_inserter(out));
    return SetFamily::from_sorted_masks(a.ground(), std::move(out));
}

/// Next mask with the same popcount (Gosper's hack).
inline constexpr std::uint64_t next_same_popcount(std::uint64_t v) noexcept {
    std::uint64_t t = v | (v - 1);
    return (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
}

/// Calls fn(mask) for every k-subset of [n] in increasing numeric order.
template <typename Fn>
void for_each_k_subset(int n, int k, Fn&& fn) {
    if (k < 0 || k > n) return;
    if (k == 0) {
        fn(std::uint64_t{0});
        return;
    }
    const std::uint64_t last = full_mask(n) & ~full_mask(n - k);
    for (std::uint64_t m = full_mask(k);; m = next_same_popcount(m)) {
        fn(m);
        if (m == last) break;
    }
}

/// Calls fn(sub) for every sub-mask of `mask` with exactly k bits.
template <typename Fn>
void for_each_k_submask(std::uint64_t mask, int k, Fn&& fn) {
    const int width = std::popcount(mask);
    if (k < 0 || k > width) return;
    int positions[64];
    int w = 0;
    for (std::uint64_t b = mask; b; b &= b - 1) positions[w++] = std::countr_zero(b);
    // Enumerate k-subsets of positions via a compact index mask, then scatter.
    for_each_k_subset(width, k, [&](std::uint64_t idx) {
        std::uint64_t sub = 0;
        for (std::uint64_t b = idx; b; b &= b - 1) sub |= std::uint64_t{1} << positions[std::countr_zero(b)];
        fn(sub);
    });
}

}  // namespace achain
