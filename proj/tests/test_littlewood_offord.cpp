#include "achain/littlewood_offord.hpp"
#include "achain/random.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace achain;

namespace {

WeightVector random_rational_vector(int n, Rng& rng, bool allow_zero = false) {
    std::vector<Rational> w;
    while (static_cast<int>(w.size()) < n) {
        auto num = static_cast<std::int64_t>(uniform_below(rng, 19)) - 9;
        auto den = static_cast<std::int64_t>(uniform_below(rng, 4)) + 1;
        if (num == 0 && !allow_zero) continue;
        w.emplace_back(BigInt(num), BigInt(den));
    }
    return WeightVector(std::move(w));
}

WeightVector distinct_positive(int n, Rng& rng, std::uint64_t bound) {
    std::vector<std::int64_t> v;
    while (static_cast<int>(v.size()) < n) {
        auto x = static_cast<std::int64_t>(1 + uniform_below(rng, bound));
        if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
    }
    return WeightVector::of_integers(v);
}

}  // namespace

TEST(WeightVector, ParsesExactLiterals) {
    auto a = WeightVector::parse("1, -2/3,0.5,1e2");
    ASSERT_EQ(a.size(), 4);
    EXPECT_EQ(a[1], Rational(-2, 3));
    EXPECT_EQ(a[2], Rational(1, 2));
    EXPECT_EQ(a[3], Rational(100));
    EXPECT_EQ(a.str(), "1,-2/3,1/2,100");
    EXPECT_EQ(WeightVector::parse("4/6")[0], Rational(2, 3));
    EXPECT_THROW(WeightVector::parse(""), std::invalid_argument);
    EXPECT_THROW(WeightVector::parse("1,,2"), std::invalid_argument);
    EXPECT_THROW(WeightVector::parse("1,x"), std::invalid_argument);
    EXPECT_THROW(WeightVector(std::vector<Rational>{}), std::invalid_argument);
}

TEST(Rho, Examples) {
    auto a = rho(WeightVector::of_integers(std::vector<int>{1, 2, 4, 8}));
    EXPECT_EQ(a.rho, Rational(1, 16));
    EXPECT_EQ(a.level_count, 1u);

    auto b = rho(WeightVector::of_integers(std::vector<int>{1, 1, 1, 1}));
    EXPECT_EQ(b.rho, Rational(6, 16));
    EXPECT_EQ(b.witness_alpha, Rational(2));

    auto c = rho(WeightVector::of_integers(std::vector<int>{1, 1}));
    EXPECT_EQ(c.rho, Rational(1, 2));
    EXPECT_EQ(c.witness_alpha, Rational(1));
}

TEST(Rho, RejectsZeroEntriesAndLongVectors) {
    EXPECT_THROW(rho(WeightVector::of_integers(std::vector<int>{1, 0, 2})), std::invalid_argument);
    EXPECT_THROW(rho(WeightVector::of_integers(std::vector<int>(45, 1))), std::invalid_argument);
    EXPECT_THROW(rho(WeightVector::of_integers(std::vector<int>(25, 1)), RhoMethod::direct), std::invalid_argument);
}

TEST(Rho, MatchesEnumerationOfAllSums) {
    Rng rng = substream(31, 0);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 1 + static_cast<int>(uniform_below(rng, 12));
        auto a = random_rational_vector(n, rng);
        auto [count, alpha] = oracle::rho_count(a.values());
        for (auto method : {RhoMethod::direct, RhoMethod::meet_in_middle, RhoMethod::dense}) {
            auto rep = rho(a, method);
            EXPECT_EQ(rep.level_count, count) << a.str();
            EXPECT_EQ(rep.witness_alpha, alpha) << a.str();
            EXPECT_EQ(rep.rho, Rational(BigInt(count), BigInt(1) << n));
        }
    }
}

TEST(Rho, MethodsAgreeUpToTwenty) {
    Rng rng = substream(32, 0);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 13 + static_cast<int>(uniform_below(rng, 8));
        auto a = random_rational_vector(n, rng);
        auto d = rho(a, RhoMethod::direct);
        auto m = rho(a, RhoMethod::meet_in_middle);
        auto t = rho(a, RhoMethod::dense);
        EXPECT_EQ(d.rho, m.rho) << a.str();
        EXPECT_EQ(d.witness_alpha, m.witness_alpha) << a.str();
        EXPECT_EQ(d.rho, t.rho) << a.str();
        EXPECT_EQ(d.witness_alpha, t.witness_alpha) << a.str();
        EXPECT_EQ(level_count(a, d.witness_alpha), d.level_count);
    }
}

TEST(Rho, LevelCountEqualsLevelSetSize) {
    Rng rng = substream(33, 0);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + static_cast<int>(uniform_below(rng, 16));
        auto a = random_rational_vector(n, rng);
        auto rep = rho(a);
        EXPECT_EQ(level_set_family(a, rep.witness_alpha).size(), rep.level_count);
        for (const auto& [alpha, count] : oracle::level_sizes(a.values())) {
            if (n > 10) break;
            EXPECT_EQ(level_count(a, alpha), count);
            EXPECT_LE(count, rep.level_count);
        }
    }
}

TEST(Rho, InvariantUnderPermutationAndSignFlips) {
    Rng rng = substream(34, 0);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + static_cast<int>(uniform_below(rng, 18));
        auto a = random_rational_vector(n, rng);
        auto base = rho(a).rho;
        std::vector<Rational> perm = a.values();
        shuffle(std::span<Rational>(perm), rng);
        EXPECT_EQ(rho(WeightVector(perm)).rho, base);
        EXPECT_EQ(rho(normalize_positive(a).weights).rho, base);
    }
}

TEST(Rho, ErdosBound) {
    Rng rng = substream(35, 0);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + static_cast<int>(uniform_below(rng, 20));
        auto a = random_rational_vector(n, rng);
        EXPECT_LE(rho(a).rho, Rational(binomial(n, n / 2), BigInt(1) << n)) << a.str();
    }
    for (int n = 1; n <= 20; ++n)
        EXPECT_EQ(rho(WeightVector::of_integers(std::vector<int>(static_cast<std::size_t>(n), 3))).rho,
                  Rational(binomial(n, n / 2), BigInt(1) << n));
}

TEST(Rho, DenseCountingBeyondDirectRange) {
    std::vector<int> v;
    for (int i = 0; i < 30; ++i) v.push_back(1 << (i % 15));
    auto rep = rho(WeightVector::of_integers(v));
    EXPECT_EQ(rep.method, RhoMethod::dense);
    // two copies of each power of two up to 2^14
    EXPECT_EQ(rep.level_count, std::uint64_t{1} << 15);
    EXPECT_EQ(rep.witness_alpha, Rational(32767));
    EXPECT_EQ(level_count(WeightVector::of_integers(v), 32767), rep.level_count);
}

TEST(Rho, MeetInTheMiddleBeyondDirectRange) {
    Rng rng = substream(30, 0);
    for (int trial = 0; trial < 6; ++trial) {
        int n = 25 + trial;
        std::vector<std::int64_t> v;
        for (int i = 0; i < n; ++i) v.push_back(1 + static_cast<std::int64_t>(uniform_below(rng, 6)));
        auto a = WeightVector::of_integers(v);
        auto mitm = rho(a, RhoMethod::meet_in_middle);
        auto dense = rho(a);
        EXPECT_EQ(dense.method, RhoMethod::dense);
        EXPECT_EQ(mitm.rho, dense.rho) << a.str();
        EXPECT_EQ(mitm.witness_alpha, dense.witness_alpha) << a.str();
    }
    std::vector<Rational> wide;
    for (int i = 0; i < 26; ++i) wide.emplace_back(BigInt(1 + i % 3) << 40);
    auto rep = rho(WeightVector(wide));
    EXPECT_EQ(rep.method, RhoMethod::meet_in_middle);
    EXPECT_EQ(rep.level_count, level_count(WeightVector(wide), rep.witness_alpha));
    EXPECT_THROW(rho(WeightVector(wide), RhoMethod::dense), std::invalid_argument);
}

TEST(Rho, HandlesHugeWeights) {
    std::vector<Rational> w;
    for (int i = 0; i < 10; ++i) w.emplace_back(BigInt(1) << (62 + i % 2));
    auto rep = rho(WeightVector(w));
    EXPECT_EQ(rep.level_count, 155u);  // max over v of sum_j C(5, v - 2j) C(5, j)
    EXPECT_EQ(rep.level_count, level_count(WeightVector(w), rep.witness_alpha));
}

TEST(Halasz, Examples) {
    auto a = WeightVector::of_integers(std::vector<int>{1, 2, 3});
    EXPECT_TRUE(check_halasz_condition(a, 1).holds);
    auto two = check_halasz_condition(a, 2);
    EXPECT_FALSE(two.holds);
    ASSERT_TRUE(two.violation);
    EXPECT_EQ(two.violation->first, Subset::of(3, {1, 2}));
    EXPECT_EQ(two.violation->second, Subset::of(3, {3}));

    auto zero = check_halasz_condition(WeightVector::of_integers(std::vector<int>{0, 5}), 1);
    EXPECT_FALSE(zero.holds);
    EXPECT_EQ(zero.violation->first, Subset::of(2, {1}));
    EXPECT_TRUE(zero.violation->second.size() == 0);
}

TEST(Halasz, RejectsOrderOutsideRange) {
    auto a = WeightVector::of_integers(std::vector<int>{1, 2, 3});
    EXPECT_THROW(check_halasz_condition(a, 0), std::invalid_argument);
    EXPECT_THROW(check_halasz_condition(a, 4), std::invalid_argument);
}

TEST(Halasz, EqualEntriesViolateOrderOne) {
    auto rep = check_halasz_condition(WeightVector::of_integers(std::vector<int>(6, 1)), 1);
    EXPECT_FALSE(rep.holds);
    EXPECT_EQ(rep.violation->first, Subset::of(6, {1}));
    EXPECT_EQ(rep.violation->second, Subset::of(6, {2}));
}

TEST(Halasz, MatchesBruteForce) {
    Rng rng = substream(36, 0);
    for (int trial = 0; trial < 150; ++trial) {
        int n = 1 + static_cast<int>(uniform_below(rng, 7));
        int r = 1 + static_cast<int>(uniform_below(rng, 3));
        auto a = random_rational_vector(n, rng, true);
        auto rep = check_halasz_condition(a, r);
        EXPECT_EQ(rep.holds, !oracle::halasz_violated(a.values(), r)) << a.str() << " r=" << r;
        if (rep.violation) {
            const auto& [x, y] = *rep.violation;
            EXPECT_EQ(x.bits() & y.bits(), 0u);
            EXPECT_GE(x.size() + y.size(), 1);
            EXPECT_LE(x.size() + y.size(), 2 * r);
            Rational sx = 0, sy = 0;
            for (int e : x.elements()) sx += a[static_cast<std::size_t>(e - 1)];
            for (int e : y.elements()) sy += a[static_cast<std::size_t>(e - 1)];
            EXPECT_EQ(sx, sy);
        }
    }
}

TEST(LevelSet, Examples) {
    auto a = WeightVector::of_integers(std::vector<int>{1, 2, 3});
    EXPECT_EQ(level_set_family(a, 3), SetFamily::of(3, {{3}, {1, 2}}));
    EXPECT_TRUE(level_set_family(a, 100).empty());
    EXPECT_TRUE(level_set_family(a, Rational(1, 2)).empty());
    EXPECT_EQ(level_set_family(WeightVector::of_integers(std::vector<int>{1, 1, 1, 1}), 2), layer(4, 2));
    EXPECT_THROW(level_set_family(WeightVector::of_integers(std::vector<int>(31, 1)), 1), std::invalid_argument);
}

TEST(NormalizePositive, Examples) {
    auto a = normalize_positive(WeightVector::of_integers(std::vector<int>{-1, 2}));
    EXPECT_EQ(a.weights, WeightVector::of_integers(std::vector<int>{1, 2}));
    EXPECT_EQ(a.flipped, Subset::of(2, {1}));
    EXPECT_EQ(rho(a.weights).rho, Rational(1, 4));

    auto pos = WeightVector::of_integers(std::vector<int>{3, 1, 4});
    EXPECT_EQ(normalize_positive(pos).weights, pos);
    EXPECT_TRUE(normalize_positive(pos).flipped.size() == 0);

    auto b = normalize_positive(WeightVector::of_integers(std::vector<int>{-3, -3}));
    EXPECT_EQ(b.weights, WeightVector::of_integers(std::vector<int>{3, 3}));
    EXPECT_EQ(b.flipped, Subset::of(2, {1, 2}));
    EXPECT_EQ(rho(b.weights).rho, Rational(1, 2));
    EXPECT_EQ(rho(WeightVector::of_integers(std::vector<int>{-3, -3})).rho, Rational(1, 2));

    EXPECT_THROW(normalize_positive(WeightVector::of_integers(std::vector<int>{1, 0})), std::invalid_argument);
}

TEST(NormalizePositive, ShiftsLevelSetsByFlippedSum) {
    Rng rng = substream(37, 0);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + static_cast<int>(uniform_below(rng, 10));
        auto a = random_rational_vector(n, rng);
        auto norm = normalize_positive(a);
        Rational shift = 0;
        for (int e : norm.flipped.elements()) shift += a[static_cast<std::size_t>(e - 1)];
        for (const auto& [alpha, count] : oracle::level_sizes(a.values()))
            EXPECT_EQ(level_count(norm.weights, alpha - shift), count);
    }
}

TEST(Reduction, Examples) {
    auto a = WeightVector::of_integers(std::vector<int>{1, 2, 3});
    auto rep = verify_reduction(a, 1, 3);
    EXPECT_EQ(rep.family_size, 2u);
    EXPECT_TRUE(rep.antichain);
    EXPECT_TRUE(rep.distance_ok);
    EXPECT_EQ(rep.min_distance, 3);

    auto b = WeightVector::of_integers(std::vector<int>{1, 2, 4});
    for (int alpha = -1; alpha <= 8; ++alpha) {
        auto r = verify_reduction(b, 1, alpha);
        EXPECT_LE(r.family_size, 1u);
        EXPECT_TRUE(r.antichain && r.distance_ok);
    }
}

TEST(Reduction, NamesTheFailedPrecondition) {
    try {
        verify_reduction(WeightVector::of_integers(std::vector<int>{1, -2, 3}), 1, 1);
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_EQ(e.which(), "positivity");
    }
    try {
        verify_reduction(WeightVector::of_integers(std::vector<int>{1, 2, 3}), 2, 3);
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_EQ(e.which(), "halasz");
    }
}

TEST(Reduction, HoldsForRandomDistinctVectors) {
    Rng rng = substream(38, 0);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        int n = 3 + static_cast<int>(uniform_below(rng, 14));
        auto a = distinct_positive(n, rng, 4 * static_cast<std::uint64_t>(n));
        if (!check_halasz_condition(a, 1).holds) continue;
        ++checked;
        auto rep = verify_reduction(a, 1, rho(a).witness_alpha);
        EXPECT_TRUE(rep.antichain) << a.str();
        EXPECT_TRUE(rep.distance_ok) << a.str();
    }
    EXPECT_GT(checked, 50);
}

TEST(WeightGenerator, ParsesSpecs) {
    EXPECT_EQ(WeightGenerator::parse("distinct").str(), "distinct");
    EXPECT_EQ(WeightGenerator::parse("random-int:7").bound, 7);
    EXPECT_THROW(WeightGenerator::parse("random-int:0"), std::invalid_argument);
    EXPECT_THROW(WeightGenerator::parse("random-int:5x"), std::invalid_argument);
    EXPECT_THROW(WeightGenerator::parse("gauss"), std::invalid_argument);
}

TEST(WeightGenerator, RandomIntegersAreNonzeroAndBounded) {
    auto gen = WeightGenerator::parse("random-int:3");
    Rng rng = substream(39, 0);
    auto a = gen.generate(63, rng, 0);
    for (const auto& v : a.values()) {
        EXPECT_NE(v, 0);
        EXPECT_LE(abs(v), 3);
    }
}

TEST(HalaszScan, SmallExamples) {
    auto scan = halasz_ratio_scan(WeightGenerator::parse("distinct"), 1, 4, 6, 1, 0);
    ASSERT_EQ(scan.rows.size(), 3u);
    EXPECT_EQ(scan.rows[0].weights, "1,2,3,4");
    EXPECT_EQ(scan.skipped, 0u);
    for (const auto& row : scan.rows) EXPECT_EQ(row.scaled, row.rho * row.n);
}

TEST(HalaszScan, BinaryWeightsGiveOneHalf) {
    auto rep = rho(WeightVector::of_integers(std::vector<int>{1, 2, 4, 8}));
    EXPECT_EQ(render_times_sqrt(rep.rho * 4, 4), "0.500000");
}

TEST(HalaszScan, SkipsEqualEntries) {
    auto scan = halasz_ratio_scan(WeightGenerator::parse("random-int:1"), 1, 5, 5, 4, 9);
    EXPECT_EQ(scan.skipped, 4u);
    for (const auto& row : scan.rows) EXPECT_TRUE(row.skipped);
}

TEST(HalaszScan, IsReproducible) {
    auto gen = WeightGenerator::parse("random-int:50");
    auto a = halasz_ratio_scan(gen, 1, 6, 12, 3, 5);
    auto b = halasz_ratio_scan(gen, 1, 6, 12, 3, 5);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].weights, b.rows[i].weights);
        EXPECT_EQ(a.rows[i].ratio, b.rows[i].ratio);
    }
}
