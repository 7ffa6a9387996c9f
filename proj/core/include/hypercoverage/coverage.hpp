#pragma once

#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "hypercoverage/sample.hpp"
#include "hypercoverage/sampling.hpp"

namespace hypercoverage {

using Subspace = std::vector<std::uint32_t>;

/// All C(d, t) column subsets of size t in lexicographic order.
std::vector<Subspace> all_subspaces(std::uint32_t d, std::uint32_t t);

/// Occupied cells of one t-dimensional projection of an n-level grid.
///
/// Cells are indexed in mixed radix n over the subspace columns. Storage is a
/// dense bitset up to kDenseCellLimit cells and a hash set above it; the two
/// behave identically.
class CoverageState {
  public:
    static constexpr std::uint64_t kDenseCellLimit = std::uint64_t{1} << 26;

    /// Throws DomainError for repeated columns or an empty subspace and
    /// CapacityError when n^t does not fit 64 bits.
    CoverageState(std::uint32_t n, Subspace subspace);

    /// Folds every row of the sample. Throws DomainError when the sample has
    /// a different n or too few columns.
    void add(const SampleMatrix& sample);

    /// Hot-path fold over a row-major block of `rows` rows with stride d.
    /// No shape checks.
    void add_rows(std::span<const Level> levels, std::size_t d) noexcept;

    bool covered(std::span<const Level> cell) const;

    std::uint32_t n() const noexcept { return n_; }
    const Subspace& subspace() const noexcept { return subspace_; }
    std::uint64_t covered_count() const noexcept { return covered_; }
    std::uint64_t cell_count() const noexcept { return cells_; }
    double fraction() const noexcept {
        return static_cast<double>(covered_) / static_cast<double>(cells_);
    }
    bool dense() const noexcept { return cells_ <= kDenseCellLimit; }

  private:
    void mark(std::uint64_t cell) noexcept;

    std::uint32_t n_;
    Subspace subspace_;
    std::uint64_t cells_;
    std::uint64_t covered_ = 0;
    std::vector<std::uint64_t> bits_;
    std::unordered_set<std::uint64_t> sparse_;
};

/// |union of projected t-tuples over all rows of all samples| / n^t.
/// Zero for an empty list. Throws DomainError on mismatched shapes.
double covered_fraction(std::span<const SampleMatrix> samples, const Subspace& subspace);

/// 1 - (1 - 1/n^(t-1))^k, evaluated as -expm1(k * log1p(-1/n^(t-1))).
double conjectured_coverage(std::uint64_t k, std::uint32_t n, std::uint32_t t);

/// 1 - exp(-k / n^(t-1)).
double asymptotic_coverage(double k, std::uint32_t n, std::uint32_t t);

/// (t-1) ln(n) n^(t-1), the approximate root of (1 - q)^k = q with
/// q = 1/n^(t-1) using ln(1 - q) ~ -q. Throws DomainError unless n >= 2, t >= 2.
double trials_for_full_coverage_estimate(std::uint32_t n, std::uint32_t t);

/// Point counts of a 2D projection over the p x p block grid.
struct SubBlockHistogram {
    std::uint32_t p = 0;
    std::uint32_t first = 0;
    std::uint32_t second = 0;
    std::uint64_t trials = 0;
    std::vector<std::uint64_t> counts;  // row-major [b1 * p + b2]
    std::vector<double> normalized;     // counts / (trials * p^(d-2))

    std::uint64_t count(std::uint32_t b1, std::uint32_t b2) const { return counts[b1 * p + b2]; }
    double value(std::uint32_t b1, std::uint32_t b2) const { return normalized[b1 * p + b2]; }
};

/// Spread of the normalized grid (population variance over the p^2 entries).
struct HistogramSpread {
    double min = 0;
    double max = 0;
    double variance = 0;
};

/// Block counts of the (first, second) projection of k samples with n = p^d,
/// normalized so that every entry of an exact orthogonal sample is 1.
/// Throws DomainError when a sample has n != p^d or the pair is invalid.
SubBlockHistogram subblock_histogram(std::span<const SampleMatrix> samples,
                                     const OsParameters& params, std::uint32_t first,
                                     std::uint32_t second);

HistogramSpread spread(const SubBlockHistogram& histogram);

}  // namespace hypercoverage
