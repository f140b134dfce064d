#pragma once

// Exact Littlewood-Offord concentration: rho(a) = max over alpha of the
// fraction of subsets x of [n] with sum_{i in x} a_i = alpha, together with
// the Halasz-type small-coincidence condition and the level-set reduction to
// antichain codes.

#include "achain/errors.hpp"
#include "achain/hypercube.hpp"
#include "achain/random.hpp"
#include "achain/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace achain {

class WeightVector {
public:
    WeightVector() = default;
    explicit WeightVector(std::vector<Rational> weights) : weights_(std::move(weights)) {
        if (weights_.empty()) throw std::invalid_argument("weight vector must be nonempty");
        if (weights_.size() > static_cast<std::size_t>(kMaxGroundSet))
            throw std::invalid_argument("weight vector longer than 63 entries");
    }

    template <typename Int>
    static WeightVector of_integers(const std::vector<Int>& values) {
        std::vector<Rational> w;
        w.reserve(values.size());
        for (auto v : values) w.emplace_back(BigInt(v));
        return WeightVector(std::move(w));
    }

    /// Comma-separated exact literals, e.g. "1, -2/3, 0.5".
    static WeightVector parse(std::string_view text) {
        std::vector<Rational> w;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t comma = text.find(',', start);
            if (comma == std::string_view::npos) comma = text.size();
            w.push_back(parse_rational(text.substr(start, comma - start)));
            start = comma + 1;
        }
        return WeightVector(std::move(w));
    }

    int size() const noexcept { return static_cast<int>(weights_.size()); }
    const Rational& operator[](std::size_t i) const { return weights_[i]; }
    const std::vector<Rational>& values() const noexcept { return weights_; }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < weights_.size(); ++i) {
            if (i) out += ',';
            out += to_string(weights_[i]);
        }
        return out;
    }

    friend bool operator==(const WeightVector&, const WeightVector&) = default;

private:
    std::vector<Rational> weights_;
};

namespace detail {

/// a_i = numerators[i] / scale with scale the lcm of the denominators.
struct ScaledWeights {
    std::vector<BigInt> numerators;
    BigInt scale = 1;
};

inline ScaledWeights scale_to_integers(const WeightVector& a) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    ScaledWeights s;
    for (const auto& w : a.values()) s.scale = boost::multiprecision::lcm(s.scale, BigInt(denominator(w)));
    for (const auto& w : a.values()) s.numerators.push_back(numerator(w) * (s.scale / denominator(w)));
    return s;
}

/// Calls fn(weights, scale) with int64 weights when every subset sum fits,
/// BigInt weights otherwise.
template <typename Fn>
decltype(auto) with_integer_weights(const WeightVector& a, Fn&& fn) {
    ScaledWeights s = scale_to_integers(a);
    BigInt total = 0;
    for (const auto& v : s.numerators) total += abs(v);
    if (total < (BigInt(1) << 62)) {
        std::vector<std::int64_t> small;
        small.reserve(s.numerators.size());
        for (const auto& v : s.numerators) small.push_back(v.convert_to<std::int64_t>());
        return fn(small, s.scale);
    }
    return fn(s.numerators, s.scale);
}

template <typename Int>
Rational unscale(const Int& value, const BigInt& scale) {
    return Rational(BigInt(value), scale);
}

/// alpha * scale when integral.
inline std::optional<BigInt> scaled_target(const Rational& alpha, const BigInt& scale) {
    Rational t = alpha * scale;
    if (boost::multiprecision::denominator(t) != 1) return std::nullopt;
    return BigInt(boost::multiprecision::numerator(t));
}

template <typename Int>
struct SumCount {
    Int sum;
    std::uint64_t count;
};

/// Subset-sum multiset of `weights` as a sorted list of distinct sums with
/// multiplicities, grown one weight at a time by a two-pointer merge of
/// L and L + w.
template <typename Int>
std::vector<SumCount<Int>> half_sums(std::span<const Int> weights) {
    std::vector<SumCount<Int>> list{{Int(0), 1}};
    std::vector<SumCount<Int>> merged;
    for (const auto& w : weights) {
        merged.clear();
        merged.reserve(list.size() * 2);
        std::size_t i = 0, j = 0;
        auto push = [&](const Int& sum, std::uint64_t count) {
            if (!merged.empty() && merged.back().sum == sum) merged.back().count += count;
            else merged.push_back({sum, count});
        };
        // merge list with list + w, both sorted
        while (i < list.size() || j < list.size()) {
            if (j == list.size()) {
                push(list[i].sum, list[i].count);
                ++i;
                continue;
            }
            Int shifted(list[j].sum + w);
            if (i < list.size() && !(shifted < list[i].sum)) {
                push(list[i].sum, list[i].count);
                ++i;
            } else {
                push(shifted, list[j].count);
                ++j;
            }
        }
        list.swap(merged);
    }
    return list;
}

}  // namespace detail

enum class RhoMethod { automatic, direct, meet_in_middle, dense };

inline const char* to_string(RhoMethod m) {
    switch (m) {
        case RhoMethod::direct: return "direct";
        case RhoMethod::meet_in_middle: return "meet-in-middle";
        case RhoMethod::dense: return "dense";
        default: return "auto";
    }
}

inline constexpr int kMaxDirectRho = 24;
inline constexpr int kMaxRho = 44;
/// Largest span of scaled subset sums counted in a dense table.
inline constexpr std::uint64_t kMaxDenseSpan = std::uint64_t{1} << 22;

struct RhoReport {
    int n = 0;
    Rational rho;
    /// smallest alpha attaining the maximum
    Rational witness_alpha;
    std::uint64_t level_count = 0;
    RhoMethod method = RhoMethod::automatic;
};

inline void require_nonzero(const WeightVector& a, const char* op) {
    for (int i = 0; i < a.size(); ++i)
        if (a[static_cast<std::size_t>(i)] == 0)
            throw std::invalid_argument(std::string(op) + ": entry " + std::to_string(i + 1) + " is zero");
}

namespace detail {

template <typename Int>
std::pair<Int, std::uint64_t> rho_direct(const std::vector<Int>& w) {
    const std::size_t n = w.size();
    std::vector<Int> sums(std::size_t{1} << n);
    sums[0] = Int(0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t half = std::size_t{1} << i;
        for (std::size_t m = 0; m < half; ++m) sums[half + m] = Int(sums[m] + w[i]);
    }
    std::sort(sums.begin(), sums.end());
    Int best_alpha = sums[0];
    std::uint64_t best = 0;
    for (std::size_t i = 0; i < sums.size();) {
        std::size_t j = i;
        while (j < sums.size() && sums[j] == sums[i]) ++j;
        if (j - i > best) {
            best = j - i;
            best_alpha = sums[i];
        }
        i = j;
    }
    return {best_alpha, best};
}

/// Splits at floor(n/2), then walks every pairwise sum of distinct half-sums
/// in increasing order with a heap over the |left| sorted sequences l + R.
template <typename Int>
std::pair<Int, std::uint64_t> rho_meet_in_middle(const std::vector<Int>& w) {
    const std::size_t split = w.size() / 2;
    auto left = half_sums<Int>(std::span<const Int>(w.data(), split));
    auto right = half_sums<Int>(std::span<const Int>(w.data() + split, w.size() - split));

    struct Cursor {
        Int sum;
        std::size_t li, ri;
    };
    auto greater = [](const Cursor& a, const Cursor& b) {
        if (a.sum != b.sum) return b.sum < a.sum;
        return a.li > b.li;
    };
    std::priority_queue<Cursor, std::vector<Cursor>, decltype(greater)> heap(greater);
    for (std::size_t li = 0; li < left.size(); ++li) heap.push({Int(left[li].sum + right[0].sum), li, 0});

    bool have = false;
    Int best_alpha{}, run_alpha{};
    std::uint64_t best = 0, run = 0;
    while (!heap.empty()) {
        Cursor c = heap.top();
        heap.pop();
        std::uint64_t mult = left[c.li].count * right[c.ri].count;
        if (have && c.sum == run_alpha) {
            run += mult;
        } else {
            if (have && run > best) {
                best = run;
                best_alpha = run_alpha;
            }
            run_alpha = c.sum;
            run = mult;
            have = true;
        }
        if (c.ri + 1 < right.size()) heap.push({Int(left[c.li].sum + right[c.ri + 1].sum), c.li, c.ri + 1});
    }
    if (run > best) {
        best = run;
        best_alpha = run_alpha;
    }
    return {best_alpha, best};
}

/// Span of scaled subset sums, max - min + 1, when it fits a dense table.
template <typename Int>
std::optional<std::uint64_t> dense_span(const std::vector<Int>& w) {
    if constexpr (!std::is_same_v<Int, std::int64_t>) {
        return std::nullopt;
    } else {
        std::uint64_t span = 1;
        for (auto v : w) span += static_cast<std::uint64_t>(v < 0 ? -v : v);
        if (span > kMaxDenseSpan) return std::nullopt;
        return span;
    }
}

/// Subset-sum counting over a table indexed by sum - min.
template <typename Int>
std::pair<Int, std::uint64_t> rho_dense(const std::vector<Int>& w, std::uint64_t span) {
    std::int64_t lowest = 0;
    for (auto v : w)
        if (v < 0) lowest += static_cast<std::int64_t>(v);
    std::vector<std::uint64_t> count(span, 0);
    count[static_cast<std::size_t>(-lowest)] = 1;
    std::size_t lo = static_cast<std::size_t>(-lowest), hi = lo + 1;
    for (auto v : w) {
        const auto step = static_cast<std::int64_t>(v);
        if (step > 0) {
            const auto d = static_cast<std::size_t>(step);
            for (std::size_t i = hi; i-- > lo;) count[i + d] += count[i];
            hi += d;
        } else {
            const auto d = static_cast<std::size_t>(-step);
            for (std::size_t i = lo; i < hi; ++i) count[i - d] += count[i];
            lo -= d;
        }
    }
    std::size_t best_i = lo;
    for (std::size_t i = lo; i < hi; ++i)
        if (count[i] > count[best_i]) best_i = i;
    return {Int(static_cast<std::int64_t>(best_i) + lowest), count[best_i]};
}

}  // namespace detail

/// Exact rho(a). Entries must be nonzero. Automatic mode enumerates directly
/// up to n = 24; above that it counts in a dense table when the scaled sums
/// span at most 2^22 values, and uses meet-in-the-middle otherwise (n <= 44).
inline RhoReport rho(const WeightVector& a, RhoMethod method = RhoMethod::automatic) {
    require_nonzero(a, "rho");
    const int n = a.size();
    if (n > kMaxRho) throw std::invalid_argument("rho supports at most 44 weights");
    if (method == RhoMethod::direct && n > kMaxDirectRho)
        throw std::invalid_argument("direct enumeration supports at most 24 weights");

    RhoReport report;
    report.n = n;
    detail::with_integer_weights(a, [&](const auto& w, const BigInt& scale) {
        auto span = detail::dense_span(w);
        if (method == RhoMethod::automatic)
            method = n <= kMaxDirectRho ? RhoMethod::direct : span ? RhoMethod::dense : RhoMethod::meet_in_middle;
        if (method == RhoMethod::dense && !span)
            throw std::invalid_argument("dense counting needs scaled sums spanning at most 2^22 values");
        report.method = method;
        auto [alpha, count] = method == RhoMethod::direct  ? detail::rho_direct(w)
                              : method == RhoMethod::dense ? detail::rho_dense(w, *span)
                                                           : detail::rho_meet_in_middle(w);
        report.witness_alpha = detail::unscale(alpha, scale);
        report.level_count = count;
        return 0;
    });
    report.rho = Rational(BigInt(report.level_count), BigInt(1) << n);
    return report;
}

/// Number of subsets with weight-sum alpha, by a two-pointer sweep over the
/// sorted half-sum lists (left ascending, right descending).
inline std::uint64_t level_count(const WeightVector& a, const Rational& alpha) {
    if (a.size() > kMaxRho) throw std::invalid_argument("level_count supports at most 44 weights");
    return detail::with_integer_weights(a, [&](const auto& w, const BigInt& scale) -> std::uint64_t {
        using Int = typename std::decay_t<decltype(w)>::value_type;
        auto target_big = detail::scaled_target(alpha, scale);
        if (!target_big) return 0;
        BigInt total = 0;
        for (const auto& v : w) total += abs(BigInt(v));
        if (abs(*target_big) > total) return 0;
        const Int target = static_cast<Int>(*target_big);
        const std::size_t split = w.size() / 2;
        auto left = detail::half_sums<Int>(std::span<const Int>(w.data(), split));
        auto right = detail::half_sums<Int>(std::span<const Int>(w.data() + split, w.size() - split));
        std::uint64_t count = 0;
        std::size_t i = 0, j = right.size();
        while (i < left.size() && j > 0) {
            Int s = Int(left[i].sum + right[j - 1].sum);
            if (s == target) {
                count += left[i].count * right[j - 1].count;
                ++i;
                --j;
            } else if (s < target) {
                ++i;
            } else {
                --j;
            }
        }
        return count;
    });
}

struct HalaszReport {
    int r = 0;
    bool holds = true;
    /// disjoint x, y with equal sums and |x| + |y| <= 2r
    std::optional<std::pair<Subset, Subset>> violation;
};

inline constexpr int kMaxHalaszSupport = 6;

/// Checks that no disjoint x, y with 1 <= |x| + |y| <= 2r have equal sums.
/// Order of search: support size, then support mask, then the split of the
/// support with x holding its lowest element; the first hit is reported.
inline HalaszReport check_halasz_condition(const WeightVector& a, int r) {
    if (r < 1) throw std::invalid_argument("Halasz condition needs r >= 1");
    if (2 * r > kMaxHalaszSupport) throw std::invalid_argument("Halasz condition capped at 2r <= 6");
    const int n = a.size();
    HalaszReport report;
    report.r = r;
    detail::with_integer_weights(a, [&](const auto& w, const BigInt&) {
        using Int = typename std::decay_t<decltype(w)>::value_type;
        for (int t = 1; t <= std::min(2 * r, n) && report.holds; ++t) {
            for_each_k_subset(n, t, [&](std::uint64_t support) {
                if (!report.holds) return;
                const std::uint64_t low = support & (~support + 1);
                const std::uint64_t rest = support ^ low;
                int positions[kMaxHalaszSupport];
                int width = 0;
                for (std::uint64_t b = rest; b; b &= b - 1) positions[width++] = std::countr_zero(b);
                for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << width) && report.holds; ++pick) {
                    std::uint64_t x = low;
                    for (int i = 0; i < width; ++i)
                        if ((pick >> i) & 1) x |= std::uint64_t{1} << positions[i];
                    const std::uint64_t y = support ^ x;
                    Int diff(0);
                    for (std::uint64_t b = x; b; b &= b - 1) diff = Int(diff + w[static_cast<std::size_t>(std::countr_zero(b))]);
                    for (std::uint64_t b = y; b; b &= b - 1) diff = Int(diff - w[static_cast<std::size_t>(std::countr_zero(b))]);
                    if (diff == Int(0)) {
                        report.holds = false;
                        report.violation.emplace(Subset(n, x), Subset(n, y));
                    }
                }
            });
        }
        return 0;
    });
    return report;
}

inline constexpr int kMaxLevelSetGround = 30;

/// All subsets of [n] with weight-sum exactly alpha, by Gray-code enumeration.
inline SetFamily level_set_family(const WeightVector& a, const Rational& alpha) {
    const int n = a.size();
    if (n > kMaxLevelSetGround) throw std::invalid_argument("level_set_family supports at most 30 weights");
    return detail::with_integer_weights(a, [&](const auto& w, const BigInt& scale) {
        using Int = typename std::decay_t<decltype(w)>::value_type;
        std::vector<std::uint64_t> hits;
        auto target_big = detail::scaled_target(alpha, scale);
        if (!target_big) return SetFamily(n);
        BigInt total = 0;
        for (const auto& v : w) total += abs(BigInt(v));
        if (abs(*target_big) > total) return SetFamily(n);
        const Int target = static_cast<Int>(*target_big);
        Int sum(0);
        std::uint64_t gray = 0;
        if (sum == target) hits.push_back(0);
        for (std::uint64_t step = 1; step < (std::uint64_t{1} << n); ++step) {
            const int bit = std::countr_zero(step);
            const std::uint64_t flip = std::uint64_t{1} << bit;
            gray ^= flip;
            sum = (gray & flip) ? Int(sum + w[static_cast<std::size_t>(bit)]) : Int(sum - w[static_cast<std::size_t>(bit)]);
            if (sum == target) hits.push_back(gray);
        }
        return SetFamily::from_masks(n, std::move(hits));
    });
}

struct NormalizedWeights {
    WeightVector weights;
    /// entries whose sign was flipped
    Subset flipped;
};

/// Replaces each a_i by |a_i|. rho is unchanged: flipping a_i maps the level
/// set at alpha onto the level set at alpha - a_i via x -> x △ {i}.
inline NormalizedWeights normalize_positive(const WeightVector& a) {
    require_nonzero(a, "normalize_positive");
    std::vector<Rational> out;
    std::uint64_t mask = 0;
    for (int i = 0; i < a.size(); ++i) {
        const Rational& v = a[static_cast<std::size_t>(i)];
        if (v < 0) mask |= std::uint64_t{1} << i;
        out.push_back(v < 0 ? Rational(-v) : v);
    }
    return {WeightVector(std::move(out)), Subset(a.size(), mask)};
}

struct ReductionReport {
    int r = 0;
    Rational alpha;
    std::size_t family_size = 0;
    bool antichain = false;
    bool distance_ok = false;
    /// n + 1 encodes +inf
    int min_distance = 0;
    std::optional<std::pair<Subset, Subset>> antichain_witness;
    std::optional<std::pair<Subset, Subset>> distance_witness;
};

/// Builds the level set at alpha and checks it is an antichain and a
/// distance-(2r+1) code. Requires positive entries satisfying the Halasz
/// condition of order r.
inline ReductionReport verify_reduction(const WeightVector& a, int r, const Rational& alpha) {
    for (int i = 0; i < a.size(); ++i)
        if (a[static_cast<std::size_t>(i)] <= 0)
            throw PreconditionError("positivity", "entry " + std::to_string(i + 1) + " is not positive");
    auto halasz = check_halasz_condition(a, r);
    if (!halasz.holds) {
        const auto& [x, y] = *halasz.violation;
        throw PreconditionError("halasz", "disjoint index sets with equal sums: x mask " + std::to_string(x.bits()) +
                                              ", y mask " + std::to_string(y.bits()));
    }
    ReductionReport report;
    report.r = r;
    report.alpha = alpha;
    SetFamily family = level_set_family(a, alpha);
    report.family_size = family.size();
    auto chain = is_antichain(family);
    report.antichain = chain.antichain;
    report.antichain_witness = chain.witness;
    auto dist = min_distance(family);
    report.min_distance = dist.min_distance;
    report.distance_ok = dist.min_distance >= 2 * r + 1;
    if (!report.distance_ok) report.distance_witness = dist.witness;
    return report;
}

struct WeightGenerator {
    enum class Kind { distinct, random_int } kind = Kind::distinct;
    std::int64_t bound = 0;

    /// "distinct" or "random-int:BOUND".
    static WeightGenerator parse(std::string_view text) {
        if (text == "distinct") return {Kind::distinct, 0};
        constexpr std::string_view prefix = "random-int:";
        if (text.substr(0, prefix.size()) == prefix) {
            std::string digits(text.substr(prefix.size()));
            std::int64_t bound = 0;
            try {
                std::size_t used = 0;
                bound = std::stoll(digits, &used);
                if (used != digits.size()) bound = 0;
            } catch (...) {
                bound = 0;
            }
            if (bound < 1) throw std::invalid_argument("random-int generator needs a positive bound");
            return {Kind::random_int, bound};
        }
        throw std::invalid_argument("unknown generator '" + std::string(text) + "'");
    }

    std::string str() const { return kind == Kind::distinct ? "distinct" : "random-int:" + std::to_string(bound); }

    /// distinct: (1..n), shuffled for trials after the first.
    /// random-int: nonzero integers drawn uniformly from [-bound, bound].
    WeightVector generate(int n, Rng& rng, std::uint64_t trial) const {
        std::vector<std::int64_t> v;
        if (kind == Kind::distinct) {
            for (int i = 1; i <= n; ++i) v.push_back(i);
            if (trial > 0) shuffle(std::span<std::int64_t>(v), rng);
        } else {
            for (int i = 0; i < n; ++i) {
                std::int64_t x = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(2 * bound)));
                v.push_back(x < bound ? x - bound : x - bound + 1);
            }
        }
        return WeightVector::of_integers(v);
    }
};

struct ScanRow {
    int n = 0;
    std::uint64_t trial = 0;
    bool skipped = false;
    std::string weights;
    std::uint64_t level_count = 0;
    Rational rho;
    /// rho * n^r; the reported ratio is this times sqrt(n)
    Rational scaled;
    std::string ratio;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    std::size_t skipped = 0;
};

/// rho(a) * n^(r + 1/2) for generated vectors across an n range. Vectors
/// failing the Halasz condition of order r are counted and skipped.
inline ScanResult halasz_ratio_scan(const WeightGenerator& gen, int r, int n_min, int n_max, std::uint64_t trials,
                                    std::uint64_t seed) {
    if (n_min < 1 || n_max < n_min || n_max > kMaxRho) throw std::invalid_argument("scan needs 1 <= n-min <= n-max <= 44");
    ScanResult result;
    for (int n = n_min; n <= n_max; ++n) {
        for (std::uint64_t t = 0; t < trials; ++t) {
            Rng rng = substream(seed, (static_cast<std::uint64_t>(n) << 32) | t);
            WeightVector a = gen.generate(n, rng, t);
            ScanRow row;
            row.n = n;
            row.trial = t;
            row.weights = a.str();
            if (!check_halasz_condition(a, r).holds) {
                row.skipped = true;
                ++result.skipped;
                result.rows.push_back(std::move(row));
                continue;
            }
            auto rep = rho(a);
            row.level_count = rep.level_count;
            row.rho = rep.rho;
            row.scaled = rep.rho * Rational(boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(r)));
            row.ratio = render_times_sqrt(row.scaled, static_cast<std::uint64_t>(n));
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

}  // namespace achain
