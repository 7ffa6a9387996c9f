#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hypercoverage/random.hpp"
#include "hypercoverage/sample.hpp"

namespace hypercoverage {

/// N x d array over symbols 0..s-1 with declared strength t and index lambda.
///
/// The constructor enforces the shape (N = lambda * s^t, symbols in range);
/// the coverage property itself is checked by verify_strength.
class OrthogonalArray {
  public:
    OrthogonalArray(std::uint32_t runs, std::uint32_t factors, std::uint32_t symbols,
                    std::uint32_t strength, std::uint32_t index, std::vector<std::uint32_t> rows);

    std::uint32_t runs() const noexcept { return runs_; }
    std::uint32_t factors() const noexcept { return factors_; }
    std::uint32_t symbols() const noexcept { return symbols_; }
    std::uint32_t strength() const noexcept { return strength_; }
    std::uint32_t index() const noexcept { return index_; }

    std::uint32_t at(std::size_t row, std::size_t col) const noexcept {
        return rows_[row * factors_ + col];
    }
    std::span<const std::uint32_t> row(std::size_t i) const noexcept {
        return {rows_.data() + i * factors_, factors_};
    }
    std::span<const std::uint32_t> entries() const noexcept { return rows_; }

    friend bool operator==(const OrthogonalArray&, const OrthogonalArray&) = default;

  private:
    std::uint32_t runs_;
    std::uint32_t factors_;
    std::uint32_t symbols_;
    std::uint32_t strength_;
    std::uint32_t index_;
    std::vector<std::uint32_t> rows_;
};

bool is_prime(std::uint32_t value) noexcept;

/// OA(s^2, d, s, 2) from the linear construction over Z_s: row (a, b) holds
/// a, b, a + b, a + 2b, ..., a + (d-2)b (mod s). Needs s prime and 2 <= d <= s+1;
/// throws UnsupportedParameters otherwise.
OrthogonalArray build_oa_strength2(std::uint32_t s, std::uint32_t d);

/// True iff every t-subset of columns shows every t-tuple exactly N / s^t times.
bool verify_strength(const OrthogonalArray& oa, std::uint32_t t);

/// Uniform relabelling drawn by randomize_oa; exposed so callers can apply
/// a specific one.
struct OaRelabeling {
    std::vector<std::uint32_t> row_order;               // output row i <- input row row_order[i]
    std::vector<std::uint32_t> column_order;            // output col j <- input col column_order[j]
    std::vector<std::vector<std::uint32_t>> symbol_map; // per output column: old symbol -> new
};

OrthogonalArray apply_relabeling(const OrthogonalArray& oa, const OaRelabeling& relabel);

/// Random row permutation, column permutation and per-column symbol
/// permutation, drawn in that order from gen.
template <class Gen>
OrthogonalArray randomize_oa(const OrthogonalArray& oa, Gen& gen) {
    OaRelabeling relabel;
    relabel.row_order = random_permutation(oa.runs(), gen);
    relabel.column_order = random_permutation(oa.factors(), gen);
    relabel.symbol_map.reserve(oa.factors());
    for (std::uint32_t j = 0; j < oa.factors(); ++j) {
        relabel.symbol_map.push_back(random_permutation(oa.symbols(), gen));
    }
    return apply_relabeling(oa, relabel);
}

/// Tang's expansion of an orthogonal array into a Latin Hypercube sample on
/// 0..N-1. In column j the rows holding symbol x receive a random order of
/// x*m .. x*m + m - 1 with m = lambda * s^(t-1), drawn from streams.lane(j)
/// symbol by symbol. Throws InvalidInput when the array fails
/// verify_strength at its declared strength.
///
/// For strength 2 this stratifies every bivariate margin at block size m;
/// unlike generate_os it says nothing about the full d-dimensional blocks.
SampleMatrix tang_expand(const OrthogonalArray& oa, const TrialStreams& streams);

/// True iff n is a multiple of block_size and, for every pair of columns,
/// all (n/block_size)^2 block pairs hold the same number of points.
bool pairwise_block_uniform(const SampleMatrix& sample, std::uint32_t block_size);

}  // namespace hypercoverage
