#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace hypercoverage {

/// Philox4x32-10 block function (Salmon et al., SC'11).
///
/// A keyed bijection on 128-bit counters. Every output block depends only on
/// (counter, key), so any block of any stream can be computed without
/// touching the others.
class Philox4x32 {
  public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key) noexcept {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

  private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/// Sequential 32-bit view of one Philox substream.
///
/// The substream is identified by three 32/64-bit coordinates packed into the
/// upper counter words; the low counter word walks through the blocks.
/// Satisfies std::uniform_random_bit_generator.
class CounterStream {
  public:
    using result_type = std::uint32_t;

    CounterStream(std::uint64_t seed, std::uint32_t replicate, std::uint32_t trial,
                  std::uint32_t lane) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          ctr_{0, lane, trial, replicate} {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        if (used_ == 4) {
            buffer_ = Philox4x32::block(ctr_, key_);
            ++ctr_[0];
            used_ = 0;
        }
        return buffer_[used_++];
    }

  private:
    Philox4x32::Key key_;
    Philox4x32::Counter ctr_;
    Philox4x32::Counter buffer_{};
    unsigned used_ = 4;
};

/// Identifies the random input of one trial: (master seed, replicate, trial).
/// Column j of the trial draws from lane(j); lanes are disjoint substreams.
struct TrialStreams {
    std::uint64_t master_seed = 0;
    std::uint32_t replicate = 0;
    std::uint32_t trial = 0;

    CounterStream lane(std::uint32_t column) const noexcept {
        return CounterStream(master_seed, replicate, trial, column);
    }
};

/// Unbiased integer in [0, bound) by Lemire's multiply-and-reject method.
/// bound must be positive.
template <class Gen>
std::uint32_t uniform_below(Gen& gen, std::uint32_t bound) {
    std::uint64_t m = std::uint64_t{static_cast<std::uint32_t>(gen())} * bound;
    auto low = static_cast<std::uint32_t>(m);
    if (low < bound) {
        const std::uint32_t threshold = (0u - bound) % bound;
        while (low < threshold) {
            m = std::uint64_t{static_cast<std::uint32_t>(gen())} * bound;
            low = static_cast<std::uint32_t>(m);
        }
    }
    return static_cast<std::uint32_t>(m >> 32);
}

/// Fisher-Yates shuffle, drawing j in [0, i] for i = size-1 down to 1.
/// A generator that always returns max() leaves the range unchanged.
template <class T, class Gen>
void shuffle(std::span<T> values, Gen& gen) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = uniform_below(gen, static_cast<std::uint32_t>(i));
        std::swap(values[i - 1], values[j]);
    }
}

template <class Gen>
std::vector<std::uint32_t> random_permutation(std::uint32_t size, Gen& gen) {
    std::vector<std::uint32_t> perm(size);
    std::iota(perm.begin(), perm.end(), 0u);
    shuffle(std::span<std::uint32_t>(perm), gen);
    return perm;
}

}  // namespace hypercoverage
