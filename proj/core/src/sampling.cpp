#include "hypercoverage/sampling.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hypercoverage/errors.hpp"
#include "sampling_detail.hpp"

namespace hypercoverage {

SampleMatrix::SampleMatrix(std::size_t n, std::size_t d, std::vector<Level> levels)
    : n_(n), d_(d), levels_(std::move(levels)) {
    if (n_ == 0 || d_ == 0) {
        throw DomainError("sample matrix needs n >= 1 and d >= 1");
    }
    if (n_ - 1 > std::numeric_limits<Level>::max()) {
        throw CapacityError("n = " + std::to_string(n_) + " exceeds the level range");
    }
    if (levels_.size() != n_ * d_) {
        throw DomainError("sample matrix expects " + std::to_string(n_ * d_) + " levels, got " +
                          std::to_string(levels_.size()));
    }
    for (Level v : levels_) {
        if (v >= n_) {
            throw DomainError("level " + std::to_string(v) + " outside [0, " +
                              std::to_string(n_ - 1) + "]");
        }
    }
}

std::vector<Level> SampleMatrix::column(std::size_t j) const {
    std::vector<Level> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = at(i, j);
    return out;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) noexcept {
    std::uint64_t result = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
            return std::nullopt;
        }
        result *= base;
    }
    return result;
}

OsParameters::OsParameters(std::uint32_t p, std::uint32_t d) : p_(p), d_(d) {
    if (p < 2) throw DomainError("orthogonal sampling needs p >= 2");
    if (d < 2) throw DomainError("orthogonal sampling needs d >= 2 (block/offset split uses d-1 >= 1)");
    const auto n = checked_pow(p, d);
    if (!n || *n > std::numeric_limits<Level>::max()) {
        throw CapacityError("p^d = " + std::to_string(p) + "^" + std::to_string(d) +
                            " exceeds the level range");
    }
    n_ = static_cast<std::uint32_t>(*n);
    block_size_ = n_ / p_;
}

OsParameters OsParameters::from_levels(std::uint64_t n, std::uint32_t d) {
    if (d < 2) throw DomainError("orthogonal sampling needs d >= 2 (block/offset split uses d-1 >= 1)");
    const auto guess = static_cast<std::uint64_t>(
        std::llround(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(d))));
    for (std::uint64_t p = guess > 2 ? guess - 1 : 2; p <= guess + 1; ++p) {
        const auto pd = checked_pow(p, d);
        if (pd && *pd == n) {
            if (p > std::numeric_limits<std::uint32_t>::max()) break;
            return OsParameters(static_cast<std::uint32_t>(p), d);
        }
    }
    throw DomainError("n = " + std::to_string(n) + " is not a perfect " + std::to_string(d) +
                      "-th power p^d with p >= 2");
}

namespace detail {

void fill_lhs(std::span<Level> out, std::uint32_t n, std::uint32_t d, const TrialStreams& streams,
              std::vector<Level>& scratch) {
    scratch.resize(n);
    for (std::uint32_t j = 0; j < d; ++j) {
        auto gen = streams.lane(j);
        std::iota(scratch.begin(), scratch.end(), Level{0});
        shuffle(std::span<Level>(scratch), gen);
        for (std::uint32_t i = 0; i < n; ++i) out[std::size_t{i} * d + j] = scratch[i];
    }
}

void fill_os(std::span<Level> out, const OsParameters& params, const TrialStreams& streams,
             std::vector<Level>& scratch) {
    const std::uint32_t p = params.p();
    const std::uint32_t d = params.d();
    const std::uint32_t n = params.n();
    const std::uint32_t m = params.block_size();
    scratch.resize(m);
    for (std::uint32_t j = 0; j < d; ++j) {
        auto gen = streams.lane(j);
        // Column j's block digit of row i has weight p^(d-1-j); rows holding
        // block x occur in runs of `run` with period `run * p`.
        const std::uint32_t run = [&] {
            std::uint32_t r = 1;
            for (std::uint32_t k = j + 1; k < d; ++k) r *= p;
            return r;
        }();
        for (std::uint32_t x = 0; x < p; ++x) {
            std::iota(scratch.begin(), scratch.end(), Level{0});
            shuffle(std::span<Level>(scratch), gen);
            std::uint32_t next = 0;
            for (std::uint32_t start = x * run; start < n; start += run * p) {
                for (std::uint32_t i = start; i < start + run; ++i) {
                    out[std::size_t{i} * d + j] = x * m + scratch[next++];
                }
            }
        }
    }
}

}  // namespace detail

SampleMatrix generate_lhs(std::uint32_t n, std::uint32_t d, const TrialStreams& streams) {
    if (n == 0 || d == 0) throw DomainError("generate_lhs needs n >= 1 and d >= 1");
    std::vector<Level> levels(std::size_t{n} * d);
    std::vector<Level> scratch;
    detail::fill_lhs(levels, n, d, streams, scratch);
    return SampleMatrix(n, d, std::move(levels));
}

bool is_latin(const SampleMatrix& sample) {
    std::vector<bool> seen(sample.n());
    for (std::size_t j = 0; j < sample.d(); ++j) {
        std::fill(seen.begin(), seen.end(), false);
        for (std::size_t i = 0; i < sample.n(); ++i) {
            const Level v = sample.at(i, j);
            if (seen[v]) return false;
            seen[v] = true;
        }
    }
    return true;
}

BlockCoordinate decompose_level(std::uint64_t x, const OsParameters& params) {
    if (x >= params.n()) {
        throw DomainError("level " + std::to_string(x) + " outside [0, " +
                          std::to_string(params.n() - 1) + "]");
    }
    const auto level = static_cast<std::uint32_t>(x);
    return {level / params.block_size(), level % params.block_size()};
}

Level recompose_level(const BlockCoordinate& c, const OsParameters& params) {
    if (c.block >= params.p() || c.offset >= params.block_size()) {
        throw DomainError("block coordinate (" + std::to_string(c.block) + ", " +
                          std::to_string(c.offset) + ") outside the p x p^(d-1) range");
    }
    return c.block * params.block_size() + c.offset;
}

bool is_orthogonal_sample(const SampleMatrix& sample, const OsParameters& params) {
    if (sample.n() != params.n() || sample.d() != params.d()) {
        throw DomainError("orthogonal check needs an " + std::to_string(params.n()) + " x " +
                          std::to_string(params.d()) + " sample, got " +
                          std::to_string(sample.n()) + " x " + std::to_string(sample.d()));
    }
    if (!is_latin(sample)) return false;
    // n rows and n block tuples: surjective iff injective.
    std::vector<bool> hit(params.n());
    for (std::size_t i = 0; i < sample.n(); ++i) {
        std::uint32_t tuple = 0;
        for (Level v : sample.row(i)) tuple = tuple * params.p() + v / params.block_size();
        if (hit[tuple]) return false;
        hit[tuple] = true;
    }
    return true;
}

SampleMatrix generate_os(const OsParameters& params, const TrialStreams& streams) {
    std::vector<Level> levels(std::size_t{params.n()} * params.d());
    std::vector<Level> scratch;
    detail::fill_os(levels, params, streams, scratch);
    return SampleMatrix(params.n(), params.d(), std::move(levels));
}

}  // namespace hypercoverage
