#pragma once

#include <cstdint>
#include <optional>

#include "hypercoverage/random.hpp"
#include "hypercoverage/sample.hpp"

namespace hypercoverage {

/// Exact checked integer power. Returns nullopt when base^exp exceeds
/// std::uint64_t.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) noexcept;

/// Orthogonal-sample geometry: p blocks per axis in d dimensions, n = p^d
/// levels, each block spanning p^(d-1) consecutive levels.
class OsParameters {
  public:
    /// Throws DomainError for p < 2 or d < 2 and CapacityError when p^d does
    /// not fit the Level range.
    OsParameters(std::uint32_t p, std::uint32_t d);

    /// Finds p with p^d == n. Throws DomainError when n is not a perfect d-th
    /// power with p >= 2.
    static OsParameters from_levels(std::uint64_t n, std::uint32_t d);

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t d() const noexcept { return d_; }
    std::uint32_t n() const noexcept { return n_; }
    std::uint32_t block_size() const noexcept { return block_size_; }

    friend bool operator==(const OsParameters&, const OsParameters&) = default;

  private:
    std::uint32_t p_;
    std::uint32_t d_;
    std::uint32_t n_;
    std::uint32_t block_size_;
};

struct BlockCoordinate {
    std::uint32_t block = 0;
    std::uint32_t offset = 0;

    friend bool operator==(const BlockCoordinate&, const BlockCoordinate&) = default;
};

/// Latin Hypercube trial: column j is an independent uniform permutation of
/// 0..n-1 drawn from streams.lane(j).
SampleMatrix generate_lhs(std::uint32_t n, std::uint32_t d, const TrialStreams& streams);

bool is_latin(const SampleMatrix& sample);

/// x -> (x / p^(d-1), x mod p^(d-1)). Throws DomainError for x >= p^d.
BlockCoordinate decompose_level(std::uint64_t x, const OsParameters& params);

/// Inverse of decompose_level. Throws DomainError when either part is out of range.
Level recompose_level(const BlockCoordinate& c, const OsParameters& params);

/// True iff the sample is Latin and its rows hit every block d-tuple.
/// Throws DomainError when sample.n() != p^d or sample.d() != d.
bool is_orthogonal_sample(const SampleMatrix& sample, const OsParameters& params);

/// Orthogonal sample built from the block-tuple enumeration: row i carries
/// the base-p digits of i as its block tuple (first column most significant);
/// within column j the rows sharing block x receive a uniform permutation of
/// the p^(d-1) offsets. Level = block * p^(d-1) + offset.
SampleMatrix generate_os(const OsParameters& params, const TrialStreams& streams);

}  // namespace hypercoverage
