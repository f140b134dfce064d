#include "achain/constructions.hpp"
#include "achain/random.hpp"

#include <gtest/gtest.h>

using namespace achain;

namespace {

BigInt ball_volume(int n, int radius) {
    BigInt v = 0;
    for (int i = 0; i <= radius; ++i) v += binomial(n, i);
    return v;
}

}  // namespace

TEST(MiddleLayer, Examples) {
    EXPECT_EQ(middle_layer(4).family.size(), 6u);
    EXPECT_EQ(middle_layer(5).family.size(), 10u);
    auto one = middle_layer(1);
    EXPECT_EQ(one.family.size(), 1u);
    EXPECT_EQ(one.family, layer(1, 0));
    EXPECT_THROW(middle_layer(0), std::invalid_argument);
}

TEST(MiddleLayer, IsAnAntichainOfBinomialSize) {
    for (int n = 1; n <= 16; ++n) {
        auto res = middle_layer(n);
        EXPECT_TRUE(is_antichain(res.family).antichain);
        EXPECT_EQ(BigInt(res.family.size()), binomial(n, n / 2));
        EXPECT_FALSE(res.translate_witness);
    }
}

TEST(HammingCode, LengthSeven) {
    auto res = hamming_code(3);
    const auto& f = res.family;
    EXPECT_EQ(f.ground(), 7);
    EXPECT_EQ(f.size(), 16u);
    EXPECT_EQ(min_distance(f).min_distance, 3);
    std::vector<std::size_t> by_weight(8, 0);
    for (auto m : f.masks()) ++by_weight[static_cast<std::size_t>(std::popcount(m))];
    EXPECT_EQ(by_weight, (std::vector<std::size_t>{1, 0, 0, 7, 7, 0, 0, 1}));
}

TEST(HammingCode, LengthThree) {
    EXPECT_EQ(hamming_code(2).family, SetFamily::of(3, {{}, {1, 2, 3}}));
    EXPECT_EQ(min_distance(hamming_code(2).family).min_distance, 3);
}

TEST(HammingCode, SyndromeConventionAndSizes) {
    for (int m = 2; m <= 4; ++m) {
        auto f = hamming_code(m).family;
        const int n = (1 << m) - 1;
        EXPECT_EQ(f.size(), std::size_t{1} << (n - m));
        EXPECT_EQ(min_distance(f).min_distance, 3);
        for (auto w : f.masks()) {
            unsigned s = 0;
            for (int i = 0; i < n; ++i)
                if ((w >> i) & 1) s ^= static_cast<unsigned>(i + 1);
            EXPECT_EQ(s, 0u);
        }
    }
    EXPECT_EQ(hamming_code(5).family.size(), std::size_t{1} << 26);
}

TEST(HammingCode, RejectsOrderOutOfRange) {
    EXPECT_THROW(hamming_code(1), std::invalid_argument);
    EXPECT_THROW(hamming_code(6), std::invalid_argument);
}

TEST(GreedyCode, Examples) {
    EXPECT_EQ(greedy_code(4, 3).family, SetFamily::from_masks(4, {0b0000, 0b0111}));
    EXPECT_EQ(greedy_code(3, 3).family, SetFamily::of(3, {{}, {1, 2, 3}}));
    for (int n = 1; n <= 8; ++n) EXPECT_EQ(greedy_code(n, 1).family.size(), std::size_t{1} << n);
}

TEST(GreedyCode, RejectsBadParameters) {
    EXPECT_THROW(greedy_code(4, 0), std::invalid_argument);
    EXPECT_THROW(greedy_code(4, 5), std::invalid_argument);
    EXPECT_THROW(greedy_code(31, 3), std::invalid_argument);
}

TEST(GreedyCode, MeetsGilbertVarshamovBound) {
    for (int n = 1; n <= 14; ++n)
        for (int d = 1; d <= n; ++d) {
            auto f = greedy_code(n, d).family;
            EXPECT_GE(min_distance(f).min_distance, d);
            EXPECT_GE(BigInt(f.size()) * ball_volume(n, d - 1), BigInt(1) << n) << n << "," << d;
        }
}

TEST(GreedyCode, ReproducesHammingCodeAtLengthSeven) {
    // the lexicographic code of length 7 and distance 3 is a Hamming code
    EXPECT_EQ(greedy_code(7, 3).family.size(), 16u);
}

TEST(BestTranslate, MiddleLayerIsAlreadyCentered) {
    for (int n = 2; n <= 10; ++n) {
        auto src = middle_layer(n).family;
        auto res = best_translate_to_middle(src);
        EXPECT_EQ(res.translate_witness->bits(), 0u);
        EXPECT_EQ(res.family, src);
        EXPECT_TRUE(res.exact);
    }
}

TEST(BestTranslate, HammingCodeOfLengthSeven) {
    auto code = hamming_code(3).family;
    auto res = best_translate_to_middle(code);
    EXPECT_GE(res.family.size(), 7u);
    EXPECT_GE(BigInt(res.family.size()), averaging_bound(code.size(), 7));
    EXPECT_EQ(averaging_bound(16, 7), BigInt(5));
    EXPECT_TRUE(is_antichain(res.family).antichain);
    EXPECT_GE(min_distance(res.family).min_distance, 3);
    EXPECT_EQ(res.source_size, 16u);
    EXPECT_TRUE(res.exact);
}

TEST(BestTranslate, SingletonEmptySet) {
    auto res = best_translate_to_middle(SetFamily::from_masks(2, {0}));
    EXPECT_EQ(res.family.size(), 1u);
    EXPECT_EQ(res.translate_witness->size(), 1);
    EXPECT_EQ(res.translate_witness->bits(), 1u);  // smallest maximizing translate
    EXPECT_EQ(res.family, SetFamily::from_masks(2, {1}));
}

TEST(BestTranslate, RejectsEmptyFamily) { EXPECT_THROW(best_translate_to_middle(SetFamily(5)), std::invalid_argument); }

TEST(BestTranslate, ExactScanMatchesBruteForce) {
    Rng rng = substream(21, 0);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 3 + static_cast<int>(uniform_below(rng, 8));
        std::vector<std::uint64_t> masks;
        for (int i = 0, c = 1 + static_cast<int>(uniform_below(rng, 20)); i < c; ++i) masks.push_back(rng() & full_mask(n));
        auto f = SetFamily::from_masks(n, masks);
        std::uint64_t best = 0, best_x = 0;
        for (std::uint64_t x = 0; x <= full_mask(n); ++x) {
            std::uint64_t c = 0;
            for (auto a : f.masks()) c += std::popcount(a ^ x) == n / 2;
            if (c > best) best = c, best_x = x;
        }
        auto res = best_translate_to_middle(f);
        EXPECT_EQ(res.family.size(), best);
        EXPECT_EQ(res.translate_witness->bits(), best_x);
        EXPECT_TRUE(is_antichain(res.family).antichain);
        EXPECT_GE(min_distance(res.family).min_distance, min_distance(f).min_distance);
    }
}

TEST(BestTranslate, SampledModeKeepsAveragingBound) {
    auto code = hamming_code(4).family;
    TranslateOptions opts;
    opts.exact_limit = 10;
    opts.samples = 500;
    opts.seed = 3;
    auto res = best_translate_to_middle(code, opts);
    EXPECT_FALSE(res.exact);
    EXPECT_GE(BigInt(res.family.size()), averaging_bound(code.size(), 15));
    EXPECT_TRUE(is_antichain(res.family).antichain);
    EXPECT_GE(min_distance(res.family).min_distance, 3);
    auto again = best_translate_to_middle(code, opts);
    EXPECT_EQ(again.family, res.family);
}

TEST(AveragingTranslate, MeetsBoundOnRandomFamilies) {
    Rng rng = substream(22, 0);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(uniform_below(rng, 30));
        std::vector<std::uint64_t> masks;
        for (int i = 0, c = 1 + static_cast<int>(uniform_below(rng, 40)); i < c; ++i) masks.push_back(rng() & full_mask(n));
        auto f = SetFamily::from_masks(n, masks);
        std::uint64_t x = averaging_translate(f);
        EXPECT_GE(BigInt(count_at_weight(f.masks(), x, n / 2)), averaging_bound(f.size(), n));
    }
}
