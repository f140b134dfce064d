#pragma once

// Largest antichain distance-d code in 2^[n] for small n.
//
// Vertices are all subsets of [n]; two are compatible when they are
// incomparable and at distance >= d. A maximum compatible set is a maximum
// clique of the compatibility graph, found by bitset branch and bound with a
// greedy coloring bound (each color class is pairwise incompatible, so a
// clique takes at most one vertex per color).

#include "achain/constructions.hpp"
#include "achain/hypercube.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace achain {

inline constexpr int kMaxSearchGround = 10;

struct SearchBudget {
    /// 0 means unlimited
    std::uint64_t max_nodes = 0;
};

struct SearchResult {
    int n = 0;
    int d = 0;
    std::size_t best_size = 0;
    SetFamily witness;
    bool certified = false;
    std::uint64_t nodes_explored = 0;
    std::uint64_t node_budget = 0;
};

class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

class Bitset {
public:
    explicit Bitset(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    bool none() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    void and_with(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    }
    void and_not(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    }
    /// Lowest set index at or after `from`, or npos.
    std::size_t next(std::size_t from) const {
        std::size_t w = from >> 6;
        if (w >= words_.size()) return npos;
        std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (cur) return (w << 6) + static_cast<std::size_t>(std::countr_zero(cur));
            if (++w >= words_.size()) return npos;
            cur = words_[w];
        }
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::vector<std::uint64_t> words_;
};

/// Max clique over a fixed vertex order; vertex index i stands for subset
/// masks[i]. The adjacency must be invariant under permutations of [n] and
/// under complementation. After a branch on u is closed, every candidate in
/// the orbit of u under the pointwise stabilizer of the current clique is
/// dropped too: any clique through such a candidate maps onto one through u.
/// Within the permutation group, orbits are fixed by the sizes of the
/// candidate's intersections with the atoms of the current clique; at the
/// root the complement map also merges layers k and n - k.
class CliqueSearch {
public:
    CliqueSearch(int n, std::vector<std::uint64_t> masks, std::vector<Bitset> adjacency, std::uint64_t node_budget)
        : n_(n), masks_(std::move(masks)), adjacency_(std::move(adjacency)), budget_(node_budget) {}

    void run(std::size_t initial_best) {
        const std::size_t v = adjacency_.size();
        best_size_ = initial_best;
        Bitset all(v);
        for (std::size_t i = 0; i < v; ++i) all.set(i);
        current_.clear();
        expand(all, {full_mask(n_)});
    }

    const std::vector<std::size_t>& best() const { return best_; }
    std::size_t best_size() const { return best_size_; }
    std::uint64_t nodes() const { return nodes_; }
    bool exhausted() const { return !aborted_; }

private:
    using Profile = std::vector<int>;

    Profile profile(std::uint64_t mask, const std::vector<std::uint64_t>& atoms) const {
        Profile p(atoms.size());
        for (std::size_t j = 0; j < atoms.size(); ++j) p[j] = std::popcount(mask & atoms[j]);
        if (current_.empty()) p[0] = std::min(p[0], n_ - p[0]);
        return p;
    }

    static std::vector<std::uint64_t> refine(const std::vector<std::uint64_t>& atoms, std::uint64_t mask) {
        std::vector<std::uint64_t> out;
        out.reserve(atoms.size() * 2);
        for (auto a : atoms) {
            if (a & mask) out.push_back(a & mask);
            if (a & ~mask) out.push_back(a & ~mask);
        }
        return out;
    }

    void expand(Bitset candidates, const std::vector<std::uint64_t>& atoms) {
        if (aborted_) return;
        ++nodes_;
        if (budget_ != 0 && nodes_ > budget_) {
            aborted_ = true;
            return;
        }
        std::vector<std::size_t> order;
        std::vector<std::size_t> colors;
        color(candidates, order, colors);
        for (std::size_t idx = order.size(); idx-- > 0;) {
            const std::size_t v = order[idx];
            if (!candidates.test(v)) continue;  // pruned as symmetric
            if (current_.size() + colors[idx] <= best_size_) return;
            current_.push_back(v);
            Bitset next = candidates;
            next.and_with(adjacency_[v]);
            if (next.none()) {
                if (current_.size() > best_size_) {
                    best_size_ = current_.size();
                    best_ = current_;
                }
            } else {
                expand(std::move(next), refine(atoms, masks_[v]));
            }
            current_.pop_back();
            if (aborted_) return;

            const Profile pv = profile(masks_[v], atoms);
            for (std::size_t u = candidates.next(0); u != Bitset::npos; u = candidates.next(u + 1))
                if (profile(masks_[u], atoms) == pv) candidates.reset(u);
        }
    }

    // Sequential greedy coloring in index order; vertices come out grouped by
    // nondecreasing color.
    void color(const Bitset& candidates, std::vector<std::size_t>& order, std::vector<std::size_t>& colors) const {
        Bitset uncolored = candidates;
        std::size_t k = 0;
        while (!uncolored.none()) {
            ++k;
            Bitset available = uncolored;
            for (std::size_t v = available.next(0); v != Bitset::npos; v = available.next(v + 1)) {
                uncolored.reset(v);
                available.and_not(adjacency_[v]);
                order.push_back(v);
                colors.push_back(k);
            }
        }
    }

    int n_;
    std::vector<std::uint64_t> masks_;
    std::vector<Bitset> adjacency_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
    std::size_t best_size_ = 0;
    std::vector<std::size_t> best_;
    std::vector<std::size_t> current_;
};

inline bool compatible(std::uint64_t x, std::uint64_t y, int d) {
    if (x == y) return false;
    if ((x & ~y) == 0 || (y & ~x) == 0) return false;
    return std::popcount(x ^ y) >= d;
}

}  // namespace detail

/// Maximum antichain distance-d code in 2^[n]. Certified when the search
/// tree is exhausted within the node budget; otherwise best found so far.
inline SearchResult max_antichain_code(int n, int d, SearchBudget budget = {}, bool require_certified = false) {
    if (n < 1 || n > kMaxSearchGround) throw std::invalid_argument("max_antichain_code needs 1 <= n <= 10");
    if (d < 1 || d > n) throw std::invalid_argument("max_antichain_code needs 1 <= d <= n");

    const std::size_t count = std::size_t{1} << n;
    std::vector<int> degree(count, 0);
    for (std::size_t x = 0; x < count; ++x)
        for (std::size_t y = 0; y < count; ++y) degree[x] += detail::compatible(x, y, d);

    // Highest compatibility degree first, ties by mask value.
    std::vector<std::uint64_t> order(count);
    std::iota(order.begin(), order.end(), std::uint64_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint64_t a, std::uint64_t b) { return degree[a] > degree[b]; });

    std::vector<detail::Bitset> adjacency(count, detail::Bitset(count));
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j)
            if (detail::compatible(order[i], order[j], d)) adjacency[i].set(j);

    detail::CliqueSearch search(n, order, std::move(adjacency), budget.max_nodes);
    search.run(0);

    SearchResult res;
    res.n = n;
    res.d = d;
    res.certified = search.exhausted();
    res.nodes_explored = search.nodes();
    res.node_budget = budget.max_nodes;

    std::vector<std::uint64_t> masks;
    for (auto i : search.best()) masks.push_back(order[i]);
    if (masks.empty()) masks.push_back(0);  // every singleton is an antichain code
    res.witness = SetFamily::from_masks(n, std::move(masks));
    res.best_size = res.witness.size();

    if (require_certified && !res.certified)
        throw BudgetExhausted("node budget of " + std::to_string(budget.max_nodes) +
                              " exhausted before the search was certified");
    return res;
}

/// Re-checks the witness: antichain, distance, size. Does not re-certify
/// optimality.
inline bool verify_result(const SearchResult& res) {
    if (res.witness.ground() != res.n) return false;
    if (res.witness.size() != res.best_size) return false;
    if (!is_antichain(res.witness).antichain) return false;
    return min_distance(res.witness).min_distance >= res.d;
}

enum class TableMode { certified, construction };

struct RatioRow {
    int n = 0;
    std::size_t size = 0;
    bool certified = false;
    std::string source;
    /// size * n^r / 2^n; the tabulated ratio is this times sqrt(n)
    Rational scaled;
    std::string ratio;
};

/// Best construction size for an antichain distance-d code in 2^[n].
inline ConstructionResult best_construction(int n, int d) {
    if (d == 1) return middle_layer(n);
    std::optional<ConstructionResult> best;
    auto offer = [&](ConstructionResult candidate) {
        if (!best || candidate.family.size() > best->family.size()) best = std::move(candidate);
    };
    if (d == 3 && std::has_single_bit(static_cast<unsigned>(n + 1)) && n >= 3 && n <= 31) {
        int m = std::countr_zero(static_cast<unsigned>(n + 1));
        auto centered = best_translate_to_middle(hamming_code(m).family);
        centered.name = "center(hamming)";
        offer(std::move(centered));
    }
    if (d <= n && n <= kMaxGreedyGround) {
        auto centered = best_translate_to_middle(greedy_code(n, d).family);
        centered.name = "center(greedy)";
        offer(std::move(centered));
    }
    if (!best) {
        ConstructionResult single{SetFamily::from_masks(n, {0}), "single", {{"n", std::to_string(n)}}};
        offer(std::move(single));
    }
    return std::move(*best);
}

/// Per-n extremal (certified) or best-known (construction) sizes for
/// antichain distance-(2r+1) codes with ratio size * n^(r+1/2) / 2^n.
inline std::vector<RatioRow> theorem1_ratio_table(int n_min, int n_max, int r, TableMode mode,
                                                  SearchBudget budget = {}) {
    if (r < 0) throw std::invalid_argument("r must be non-negative");
    if (n_min < 1 || n_max < n_min) throw std::invalid_argument("empty or invalid n range");
    const int d = 2 * r + 1;
    std::vector<RatioRow> rows;
    for (int n = n_min; n <= n_max; ++n) {
        RatioRow row;
        row.n = n;
        if (d > n) {
            row.size = 1;
            row.certified = true;
            row.source = "trivial";
        } else if (mode == TableMode::certified) {
            auto res = max_antichain_code(n, d, budget, true);
            row.size = res.best_size;
            row.certified = res.certified;
            row.source = "search";
        } else {
            auto c = best_construction(n, d);
            row.size = c.family.size();
            row.source = c.name;
        }
        BigInt num = BigInt(row.size) * boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(r));
        row.scaled = Rational(num, BigInt(1) << n);
        row.ratio = render_times_sqrt(row.scaled, static_cast<std::uint64_t>(n));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace achain
