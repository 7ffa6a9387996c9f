#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "hypercoverage/errors.hpp"
#include "hypercoverage/orthogonal_array.hpp"
#include "hypercoverage/sampling.hpp"

namespace hypercoverage {
namespace {

struct AllOnes {
    using result_type = std::uint32_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return 0xffffffffu; }
    result_type operator()() { return max(); }
};

// Independent oracle: count every ordered column pair directly.
bool pairs_each_once(const OrthogonalArray& oa) {
    for (std::uint32_t a = 0; a < oa.factors(); ++a) {
        for (std::uint32_t b = a + 1; b < oa.factors(); ++b) {
            std::map<std::pair<std::uint32_t, std::uint32_t>, int> seen;
            for (std::uint32_t r = 0; r < oa.runs(); ++r) ++seen[{oa.at(r, a), oa.at(r, b)}];
            if (seen.size() != std::size_t{oa.symbols()} * oa.symbols()) return false;
            for (const auto& [cell, c] : seen) {
                if (c != static_cast<int>(oa.index())) return false;
            }
        }
    }
    return true;
}

std::multiset<std::vector<std::uint32_t>> row_multiset(const OrthogonalArray& oa) {
    std::multiset<std::vector<std::uint32_t>> rows;
    for (std::uint32_t r = 0; r < oa.runs(); ++r) {
        const auto row = oa.row(r);
        rows.emplace(row.begin(), row.end());
    }
    return rows;
}

TEST(BuildOaTest, TwoSymbolsThreeFactors) {
    const auto oa = build_oa_strength2(2, 3);
    EXPECT_EQ(oa, OrthogonalArray(4, 3, 2, 2, 1, {0, 0, 0, 0, 1, 1, 1, 0, 1, 1, 1, 0}));
    EXPECT_TRUE(pairs_each_once(oa));
}

TEST(BuildOaTest, TwoFactorsIsFullGrid) {
    const auto oa = build_oa_strength2(3, 2);
    ASSERT_EQ(oa.runs(), 9u);
    std::set<std::pair<std::uint32_t, std::uint32_t>> cells;
    for (std::uint32_t r = 0; r < 9; ++r) cells.insert({oa.at(r, 0), oa.at(r, 1)});
    EXPECT_EQ(cells.size(), 9u);
}

TEST(BuildOaTest, FiveSymbolsSixFactors) {
    const auto oa = build_oa_strength2(5, 6);
    EXPECT_EQ(oa.runs(), 25u);
    EXPECT_EQ(oa.factors(), 6u);
    EXPECT_TRUE(verify_strength(oa, 2));
    EXPECT_TRUE(pairs_each_once(oa));
}

TEST(BuildOaTest, RejectsUnsupported) {
    EXPECT_THROW(build_oa_strength2(4, 3), UnsupportedParameters);
    EXPECT_THROW(build_oa_strength2(1, 2), UnsupportedParameters);
    EXPECT_THROW(build_oa_strength2(3, 5), UnsupportedParameters);
    EXPECT_THROW(build_oa_strength2(3, 1), UnsupportedParameters);
}

TEST(OrthogonalArrayTest, ConstructorChecksShape) {
    EXPECT_THROW(OrthogonalArray(5, 2, 2, 2, 1, std::vector<std::uint32_t>(10)), InvalidInput);
    EXPECT_THROW(OrthogonalArray(4, 2, 2, 2, 1, std::vector<std::uint32_t>(7)), InvalidInput);
    EXPECT_THROW(OrthogonalArray(4, 2, 2, 2, 1, {0, 0, 0, 1, 1, 0, 1, 2}), InvalidInput);
    EXPECT_THROW(OrthogonalArray(4, 1, 2, 2, 1, {0, 0, 0, 0}), InvalidInput);
}

TEST(VerifyStrengthTest, Examples) {
    EXPECT_TRUE(verify_strength(build_oa_strength2(3, 4), 2));
    EXPECT_FALSE(verify_strength(build_oa_strength2(2, 3), 3));
    EXPECT_TRUE(verify_strength(build_oa_strength2(5, 4), 1));
    EXPECT_FALSE(verify_strength(build_oa_strength2(2, 3), 0));
    EXPECT_FALSE(verify_strength(build_oa_strength2(2, 3), 4));
}

TEST(VerifyStrengthTest, DetectsBrokenPair) {
    // rows 0 and 1 swap symbols in column 2: column pair (1,2) now repeats.
    OrthogonalArray bad(4, 3, 2, 2, 1, {0, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 0});
    EXPECT_FALSE(verify_strength(bad, 2));
    EXPECT_TRUE(verify_strength(bad, 1));
}

TEST(RandomizeOaTest, MaximalStreamIsIdentity) {
    const auto oa = build_oa_strength2(3, 3);
    AllOnes gen;
    EXPECT_EQ(randomize_oa(oa, gen), oa);
}

TEST(RandomizeOaTest, RowPermutationKeepsMultiset) {
    const auto oa = build_oa_strength2(5, 4);
    CounterStream gen(8, 0, 0, 0);
    OaRelabeling relabel;
    relabel.row_order = random_permutation(oa.runs(), gen);
    AllOnes identity;
    relabel.column_order = random_permutation(oa.factors(), identity);
    for (std::uint32_t j = 0; j < oa.factors(); ++j) {
        std::vector<std::uint32_t> id(oa.symbols());
        for (std::uint32_t x = 0; x < oa.symbols(); ++x) id[x] = x;
        relabel.symbol_map.push_back(id);
    }
    const auto shuffled = apply_relabeling(oa, relabel);
    EXPECT_NE(shuffled, oa);
    EXPECT_EQ(row_multiset(shuffled), row_multiset(oa));
}

TEST(RandomizeOaTest, StrengthInvariantExhaustive) {
    for (std::uint32_t s : {2u, 3u, 5u}) {
        for (std::uint32_t d = 2; d <= std::min(s + 1, 6u); ++d) {
            const auto oa = build_oa_strength2(s, d);
            for (std::uint32_t seed = 0; seed < 25; ++seed) {
                CounterStream gen(seed, s, d, 0);
                const auto r = randomize_oa(oa, gen);
                EXPECT_EQ(r.runs(), oa.runs());
                EXPECT_EQ(r.symbols(), oa.symbols());
                EXPECT_EQ(r.index(), oa.index());
                ASSERT_TRUE(verify_strength(r, 2)) << "s=" << s << " d=" << d << " seed=" << seed;
            }
        }
    }
}

TEST(TangExpandTest, FullGridGivesOnePointPerQuadrant) {
    const OrthogonalArray grid(4, 2, 2, 2, 1, {0, 0, 0, 1, 1, 0, 1, 1});
    for (std::uint32_t seed = 0; seed < 10; ++seed) {
        const auto m = tang_expand(grid, TrialStreams{seed, 0, 0});
        ASSERT_TRUE(is_latin(m));
        int quadrant[2][2] = {};
        for (std::size_t i = 0; i < 4; ++i) ++quadrant[m.at(i, 0) / 2][m.at(i, 1) / 2];
        for (auto& row : quadrant) {
            for (int c : row) EXPECT_EQ(c, 1);
        }
    }
}

TEST(TangExpandTest, SmallLinearArrayIsLatin) {
    const auto m = tang_expand(build_oa_strength2(2, 3), TrialStreams{1, 0, 0});
    EXPECT_EQ(m.n(), 4u);
    EXPECT_TRUE(is_latin(m));
}

TEST(TangExpandTest, RandomizedNineRunArrayIsPairwiseUniform) {
    const auto oa = build_oa_strength2(3, 3);
    for (std::uint32_t seed = 0; seed < 30; ++seed) {
        CounterStream gen(seed, 0, 1, 0);
        const auto m = tang_expand(randomize_oa(oa, gen), TrialStreams{seed, 0, 0});
        ASSERT_TRUE(is_latin(m));
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t b = a + 1; b < 3; ++b) {
                int grid[3][3] = {};
                for (std::size_t i = 0; i < 9; ++i) ++grid[m.at(i, a) / 3][m.at(i, b) / 3];
                for (auto& row : grid) {
                    for (int c : row) ASSERT_EQ(c, 1);
                }
            }
        }
        EXPECT_TRUE(pairwise_block_uniform(m, 3));
    }
}

TEST(TangExpandTest, ColumnStrataAreIntervals) {
    const auto oa = build_oa_strength2(5, 6);
    const auto m = tang_expand(oa, TrialStreams{4, 0, 0});
    const std::uint32_t m_size = oa.index() * oa.symbols();
    for (std::uint32_t j = 0; j < oa.factors(); ++j) {
        for (std::uint32_t x = 0; x < oa.symbols(); ++x) {
            std::set<Level> values;
            for (std::uint32_t r = 0; r < oa.runs(); ++r) {
                if (oa.at(r, j) == x) values.insert(m.at(r, j));
            }
            ASSERT_EQ(values.size(), m_size);
            EXPECT_EQ(*values.begin(), x * m_size);
            EXPECT_EQ(*values.rbegin(), (x + 1) * m_size - 1);
        }
    }
}

TEST(TangExpandTest, RejectsArrayWithoutDeclaredStrength) {
    OrthogonalArray bad(4, 3, 2, 2, 1, {0, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 0});
    EXPECT_THROW(tang_expand(bad, {}), InvalidInput);
}

TEST(PairwiseBlockUniformTest, RejectsLatinWithoutStrata) {
    // identity diagonal: every point in the diagonal blocks
    EXPECT_FALSE(pairwise_block_uniform(SampleMatrix(4, 2, {0, 0, 1, 1, 2, 2, 3, 3}), 2));
    EXPECT_TRUE(pairwise_block_uniform(SampleMatrix(4, 2, {0, 2, 1, 0, 2, 3, 3, 1}), 2));
    EXPECT_FALSE(pairwise_block_uniform(SampleMatrix(4, 2, {0, 2, 1, 0, 2, 3, 3, 1}), 3));
}

TEST(PrimeTest, SmallValues) {
    std::vector<std::uint32_t> primes;
    for (std::uint32_t v = 0; v < 30; ++v) {
        if (is_prime(v)) primes.push_back(v);
    }
    EXPECT_EQ(primes, (std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
    EXPECT_TRUE(is_prime(4294967291u));
}

}  // namespace
}  // namespace hypercoverage
