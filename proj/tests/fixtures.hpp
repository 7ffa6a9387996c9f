#pragma once

// Worked 8 x 3 examples (d = 3, n = 8 = 2^3), transcribed 1-based as printed.
// LHS3 and LHS4 are LHS1 and LHS2 written as (block, offset) pairs.

#include <array>
#include <utility>
#include <vector>

#include "hypercoverage/sample.hpp"
#include "hypercoverage/sampling.hpp"

namespace fixtures {

using Row = std::array<unsigned, 3>;
using PairRow = std::array<std::pair<unsigned, unsigned>, 3>;

inline const std::array<Row, 8> kLhs1 = {{{1, 2, 1}, {2, 3, 3}, {3, 1, 2}, {4, 7, 8},
                                          {5, 8, 5}, {6, 5, 4}, {7, 4, 6}, {8, 6, 7}}};

inline const std::array<Row, 8> kLhs2 = {{{1, 3, 2}, {2, 4, 6}, {3, 5, 3}, {4, 7, 8},
                                          {5, 1, 1}, {6, 2, 7}, {7, 8, 4}, {8, 6, 5}}};

inline const std::array<PairRow, 8> kLhs3 = {{
    {{{1, 1}, {1, 2}, {1, 1}}},
    {{{1, 2}, {1, 3}, {1, 3}}},
    {{{1, 3}, {1, 1}, {1, 2}}},
    {{{1, 4}, {2, 3}, {2, 4}}},
    {{{2, 1}, {2, 4}, {2, 1}}},
    {{{2, 2}, {2, 1}, {1, 4}}},
    {{{2, 3}, {1, 4}, {2, 2}}},
    {{{2, 4}, {2, 2}, {2, 3}}},
}};

inline const std::array<PairRow, 8> kLhs4 = {{
    {{{1, 1}, {1, 3}, {1, 2}}},
    {{{1, 2}, {1, 4}, {2, 2}}},
    {{{1, 3}, {2, 1}, {1, 3}}},
    {{{1, 4}, {2, 3}, {2, 4}}},
    {{{2, 1}, {1, 1}, {1, 1}}},
    {{{2, 2}, {1, 2}, {2, 3}}},
    {{{2, 3}, {2, 4}, {1, 4}}},
    {{{2, 4}, {2, 2}, {2, 1}}},
}};

/// 1-based level table: level v ~ (block, offset) for p = 2, d = 3.
inline const std::array<std::pair<unsigned, unsigned>, 8> kPairTable = {
    {{1, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 1}, {2, 2}, {2, 3}, {2, 4}}};

inline hypercoverage::SampleMatrix from_rows(const std::array<Row, 8>& rows) {
    std::vector<hypercoverage::Level> levels;
    for (const auto& r : rows) {
        for (auto v : r) levels.push_back(v - 1);
    }
    return hypercoverage::SampleMatrix(8, 3, std::move(levels));
}

/// Pair rows converted through recompose_level (0-based both parts).
inline hypercoverage::SampleMatrix from_pairs(const std::array<PairRow, 8>& rows) {
    const hypercoverage::OsParameters params(2, 3);
    std::vector<hypercoverage::Level> levels;
    for (const auto& r : rows) {
        for (auto [b, x] : r) levels.push_back(hypercoverage::recompose_level({b - 1, x - 1}, params));
    }
    return hypercoverage::SampleMatrix(8, 3, std::move(levels));
}

}  // namespace fixtures
