#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hypercoverage {

using Level = std::uint32_t;

/// n points of one trial in a d-dimensional grid with levels 0..n-1.
///
/// Row-major storage; immutable once constructed.
class SampleMatrix {
  public:
    /// Takes ownership of n*d row-major levels. Throws DomainError when the
    /// shape is empty or any level is outside [0, n-1].
    SampleMatrix(std::size_t n, std::size_t d, std::vector<Level> levels);

    std::size_t n() const noexcept { return n_; }
    std::size_t d() const noexcept { return d_; }

    Level at(std::size_t row, std::size_t col) const noexcept { return levels_[row * d_ + col]; }

    std::span<const Level> row(std::size_t i) const noexcept {
        return {levels_.data() + i * d_, d_};
    }

    std::vector<Level> column(std::size_t j) const;

    std::span<const Level> levels() const noexcept { return levels_; }

    friend bool operator==(const SampleMatrix&, const SampleMatrix&) = default;

  private:
    std::size_t n_;
    std::size_t d_;
    std::vector<Level> levels_;
};

}  // namespace hypercoverage
