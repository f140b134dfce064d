#pragma once

// Explicit antichains and codes: the middle layer, binary Hamming codes,
// lexicographic greedy codes, and the best translate of a code into the
// middle layer.

#include "achain/hypercube.hpp"
#include "achain/parallel.hpp"
#include "achain/random.hpp"

#include <bit>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace achain {

struct ConstructionResult {
    SetFamily family;
    std::string name;
    std::vector<std::pair<std::string, std::string>> parameters;
    /// the translate x chosen for centered constructions
    std::optional<Subset> translate_witness = std::nullopt;
    /// false when the translate was chosen from a sample rather than a full scan
    bool exact = true;
    /// size of the source family, for centered constructions
    std::size_t source_size = 0;
};

namespace detail {

inline void construction_check(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("construction self-check failed: " + what);
}

/// No two members within distance < d, by probing each member's ball.
inline bool has_min_distance_by_balls(const SetFamily& family, int d) {
    const int n = family.ground();
    for (auto c : family.masks()) {
        for (int flips = 1; flips < d && flips <= n; ++flips) {
            bool clash = false;
            for_each_k_subset(n, flips, [&](std::uint64_t delta) {
                if (!clash && family.contains(c ^ delta)) clash = true;
            });
            if (clash) return false;
        }
    }
    return true;
}

}  // namespace detail

inline int middle_index(int n) { return n / 2; }

/// The middle layer, an antichain of maximum size.
inline ConstructionResult middle_layer(int n) {
    if (n < 1 || n > kMaxGroundSet) throw std::invalid_argument("middle_layer needs 1 <= n <= 63");
    if (binomial(n, n / 2) > BigInt(1) << 32) throw std::invalid_argument("middle layer too large to materialize");
    ConstructionResult res{layer(n, middle_index(n)), "middle", {{"n", std::to_string(n)}}};
    detail::construction_check(BigInt(res.family.size()) == binomial(n, n / 2), "middle layer size");
    return res;
}

inline constexpr int kMinHammingOrder = 2;
inline constexpr int kMaxHammingOrder = 5;

/// Binary Hamming code of length 2^m - 1. Column i of the parity-check
/// matrix is the binary expansion of i, so a mask is a codeword iff the XOR
/// of the positions of its elements is zero.
inline ConstructionResult hamming_code(int m) {
    if (m < kMinHammingOrder || m > kMaxHammingOrder)
        throw std::invalid_argument("hamming_code needs 2 <= m <= 5, got " + std::to_string(m));
    const int n = (1 << m) - 1;
    std::vector<int> info_positions;  // 1-based, not powers of two
    for (int i = 1; i <= n; ++i)
        if (!std::has_single_bit(static_cast<unsigned>(i))) info_positions.push_back(i);
    const int k = static_cast<int>(info_positions.size());

    std::vector<std::uint64_t> words;
    words.reserve(std::size_t{1} << k);
    for (std::uint64_t info = 0; info < (std::uint64_t{1} << k); ++info) {
        std::uint64_t word = 0;
        unsigned syndrome = 0;
        for (std::uint64_t b = info; b; b &= b - 1) {
            int pos = info_positions[std::countr_zero(b)];
            word |= std::uint64_t{1} << (pos - 1);
            syndrome ^= static_cast<unsigned>(pos);
        }
        // parity positions are the powers of two; set those that cancel the syndrome
        for (unsigned s = syndrome; s; s &= s - 1) word |= std::uint64_t{1} << ((1u << std::countr_zero(s)) - 1);
        words.push_back(word);
    }
    ConstructionResult res{SetFamily::from_masks(n, std::move(words)), "hamming",
                           {{"m", std::to_string(m)}, {"n", std::to_string(n)}}};

    const auto& f = res.family;
    detail::construction_check(f.size() == (std::size_t{1} << (n - m)), "hamming code size");
    int min_weight = n + 1;
    for (auto w : f.masks()) {
        unsigned syndrome = 0;
        for (std::uint64_t b = w; b; b &= b - 1) syndrome ^= static_cast<unsigned>(std::countr_zero(b) + 1);
        detail::construction_check(syndrome == 0, "hamming syndrome");
        if (w != 0) min_weight = std::min(min_weight, std::popcount(w));
    }
    // linear code: minimum distance equals minimum nonzero weight
    detail::construction_check(min_weight == 3, "hamming minimum distance");
    if (f.size() <= 4096) detail::construction_check(min_distance(f).min_distance == 3, "hamming pairwise distance");
    return res;
}

inline constexpr int kMaxGreedyGround = 30;

/// Scans masks in increasing order, keeping each one at distance >= d from
/// everything kept so far.
inline ConstructionResult greedy_code(int n, int d) {
    if (n < 1 || n > kMaxGreedyGround) throw std::invalid_argument("greedy_code needs 1 <= n <= 30");
    if (d < 1 || d > n) throw std::invalid_argument("greedy_code needs 1 <= d <= n");
    const std::uint64_t universe = std::uint64_t{1} << n;
    std::vector<std::uint64_t> blocked((universe + 63) / 64, 0);
    auto is_blocked = [&](std::uint64_t m) { return (blocked[m >> 6] >> (m & 63)) & 1; };
    std::vector<std::uint64_t> kept;
    for (std::uint64_t c = 0; c < universe; ++c) {
        if (is_blocked(c)) continue;
        kept.push_back(c);
        for (int flips = 1; flips < d; ++flips)
            for_each_k_subset(n, flips, [&](std::uint64_t delta) {
                std::uint64_t v = c ^ delta;
                blocked[v >> 6] |= std::uint64_t{1} << (v & 63);
            });
    }
    ConstructionResult res{SetFamily::from_sorted_masks(n, std::move(kept)), "greedy",
                           {{"n", std::to_string(n)}, {"d", std::to_string(d)}}};
    detail::construction_check(detail::has_min_distance_by_balls(res.family, d), "greedy code distance");
    return res;
}

/// Averaging lower bound ⌈|A|·C(n,⌊n/2⌋)/2^n⌉ on the best translate count.
inline BigInt averaging_bound(std::size_t family_size, int n) {
    BigInt num = BigInt(family_size) * binomial(n, middle_index(n));
    BigInt universe = BigInt(1) << n;
    return (num + universe - 1) / universe;
}

struct TranslateOptions {
    int exact_limit = 28;
    std::uint64_t samples = std::uint64_t{1} << 20;
    std::uint64_t seed = 0;
};

/// Number of members a with |a △ x| = target.
inline std::uint64_t count_at_weight(std::span<const std::uint64_t> masks, std::uint64_t x, int target) {
    std::uint64_t count = 0;
    for (auto a : masks) count += std::popcount(a ^ x) == target;
    return count;
}

/// A translate whose middle-layer count is at least the average over all
/// translates, found by fixing bits one at a time so the conditional
/// expectation never drops. Ties keep the bit clear.
inline std::uint64_t averaging_translate(const SetFamily& family) {
    const int n = family.ground();
    const int target = middle_index(n);
    using Wide = unsigned __int128;
    std::vector<Wide> binom_row;
    std::uint64_t x = 0;
    std::vector<int> fixed_distance(family.size(), 0);
    for (int bit = 0; bit < n; ++bit) {
        const int free_after = n - bit - 1;
        binom_row.assign(static_cast<std::size_t>(free_after) + 1, 0);
        for (int j = 0; j <= free_after; ++j)
            binom_row[static_cast<std::size_t>(j)] = binomial(free_after, j).convert_to<std::uint64_t>();
        auto score = [&](int value) {
            Wide total = 0;
            const auto masks = family.masks();
            for (std::size_t i = 0; i < masks.size(); ++i) {
                int dist = fixed_distance[i] + ((static_cast<int>((masks[i] >> bit) & 1)) != value);
                int need = target - dist;
                if (need >= 0 && need <= free_after) total += binom_row[static_cast<std::size_t>(need)];
            }
            return total;
        };
        int choice = score(1) > score(0) ? 1 : 0;
        if (choice) x |= std::uint64_t{1} << bit;
        const auto masks = family.masks();
        for (std::size_t i = 0; i < masks.size(); ++i)
            fixed_distance[i] += (static_cast<int>((masks[i] >> bit) & 1)) != choice;
    }
    return x;
}

/// The translate x maximizing |(A △ x) ∩ layer(n, ⌊n/2⌋)|, ties to the
/// smallest x. Exhaustive up to `exact_limit`; above it the best of a seeded
/// sample and the averaging translate, flagged inexact.
inline ConstructionResult best_translate_to_middle(const SetFamily& family, const TranslateOptions& options = {}) {
    if (family.empty()) throw std::invalid_argument("best_translate_to_middle needs a nonempty family");
    const int n = family.ground();
    const int target = middle_index(n);
    const auto masks = family.masks();

    std::uint64_t best_x = 0;
    std::uint64_t best_count = 0;
    bool exact = n <= options.exact_limit;
    auto consider = [&](std::uint64_t x, std::uint64_t count) {
        if (count > best_count || (count == best_count && x < best_x)) {
            best_count = count;
            best_x = x;
        }
    };

    if (exact) {
        const std::uint64_t universe = std::uint64_t{1} << n;
        const unsigned workers = worker_count();
        std::vector<std::pair<std::uint64_t, std::uint64_t>> partial(workers, {0, 0});
        parallel_chunks(0, universe, workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
            std::uint64_t bx = lo, bc = 0;
            for (std::uint64_t x = lo; x < hi; ++x) {
                std::uint64_t c = count_at_weight(masks, x, target);
                if (c > bc) {
                    bc = c;
                    bx = x;
                }
            }
            partial[w] = {bx, bc};
        });
        best_x = partial[0].first;
        best_count = partial[0].second;
        for (std::size_t w = 1; w < partial.size(); ++w) consider(partial[w].first, partial[w].second);
    } else {
        std::uint64_t seeded = averaging_translate(family);
        best_x = seeded;
        best_count = count_at_weight(masks, seeded, target);
        Rng rng = substream(options.seed, 0);
        const std::uint64_t full = full_mask(n);
        for (std::uint64_t s = 0; s < options.samples; ++s) {
            std::uint64_t x = rng() & full;
            consider(x, count_at_weight(masks, x, target));
        }
    }

    std::vector<std::uint64_t> centered;
    centered.reserve(best_count);
    for (auto a : masks)
        if (std::popcount(a ^ best_x) == target) centered.push_back(a ^ best_x);

    ConstructionResult res{SetFamily::from_masks(n, std::move(centered)), "center", {{"n", std::to_string(n)}}};
    res.translate_witness = Subset(n, best_x);
    res.exact = exact;
    res.source_size = family.size();
    if (!exact) res.parameters.emplace_back("seed", std::to_string(options.seed));

    detail::construction_check(BigInt(res.family.size()) >= averaging_bound(family.size(), n), "averaging bound");
    detail::construction_check(res.family.size() == best_count, "centered family size");
    return res;
}

}  // namespace achain
