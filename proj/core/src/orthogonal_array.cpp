#include "hypercoverage/orthogonal_array.hpp"

#include <algorithm>
#include <string>

#include "hypercoverage/errors.hpp"
#include "hypercoverage/sampling.hpp"

namespace hypercoverage {

OrthogonalArray::OrthogonalArray(std::uint32_t runs, std::uint32_t factors, std::uint32_t symbols,
                                 std::uint32_t strength, std::uint32_t index,
                                 std::vector<std::uint32_t> rows)
    : runs_(runs),
      factors_(factors),
      symbols_(symbols),
      strength_(strength),
      index_(index),
      rows_(std::move(rows)) {
    if (runs_ == 0 || factors_ == 0 || symbols_ == 0 || strength_ == 0 || index_ == 0) {
        throw InvalidInput("orthogonal array parameters must be positive");
    }
    if (strength_ > factors_) {
        throw InvalidInput("strength " + std::to_string(strength_) + " exceeds " +
                           std::to_string(factors_) + " factors");
    }
    const auto st = checked_pow(symbols_, strength_);
    if (!st || *st > runs_ || std::uint64_t{index_} * *st != runs_) {
        throw InvalidInput("orthogonal array needs N = lambda * s^t, got N=" +
                           std::to_string(runs_) + " lambda=" + std::to_string(index_) +
                           " s=" + std::to_string(symbols_) + " t=" + std::to_string(strength_));
    }
    if (rows_.size() != std::size_t{runs_} * factors_) {
        throw InvalidInput("orthogonal array expects " + std::to_string(std::size_t{runs_} * factors_) +
                           " entries, got " + std::to_string(rows_.size()));
    }
    for (auto v : rows_) {
        if (v >= symbols_) {
            throw InvalidInput("symbol " + std::to_string(v) + " outside [0, " +
                               std::to_string(symbols_ - 1) + "]");
        }
    }
}

bool is_prime(std::uint32_t value) noexcept {
    if (value < 2) return false;
    for (std::uint64_t f = 2; f * f <= value; ++f) {
        if (value % f == 0) return false;
    }
    return true;
}

OrthogonalArray build_oa_strength2(std::uint32_t s, std::uint32_t d) {
    if (!is_prime(s)) {
        throw UnsupportedParameters("strength-2 construction needs a prime symbol count, got " +
                                    std::to_string(s));
    }
    if (d < 2 || d > s + 1) {
        throw UnsupportedParameters("strength-2 construction over " + std::to_string(s) +
                                    " symbols supports 2 <= d <= " + std::to_string(s + 1) +
                                    ", got d=" + std::to_string(d));
    }
    if (s > 65535) throw UnsupportedParameters("s^2 runs exceed the supported range");
    std::vector<std::uint32_t> rows;
    rows.reserve(std::size_t{s} * s * d);
    for (std::uint32_t a = 0; a < s; ++a) {
        for (std::uint32_t b = 0; b < s; ++b) {
            rows.push_back(a);
            rows.push_back(b);
            for (std::uint32_t j = 2; j < d; ++j) {
                rows.push_back(static_cast<std::uint32_t>((a + std::uint64_t{j - 1} * b) % s));
            }
        }
    }
    OrthogonalArray oa(s * s, d, s, 2, 1, std::move(rows));
    if (!verify_strength(oa, 2)) {
        throw std::logic_error("linear construction produced an array without strength 2");
    }
    return oa;
}

bool verify_strength(const OrthogonalArray& oa, std::uint32_t t) {
    if (t == 0 || t > oa.factors()) return false;
    const auto cells = checked_pow(oa.symbols(), t);
    if (!cells || *cells > oa.runs() || oa.runs() % *cells != 0) return false;
    const std::uint32_t expected = oa.runs() / static_cast<std::uint32_t>(*cells);

    std::vector<std::uint32_t> cols(t);
    for (std::uint32_t i = 0; i < t; ++i) cols[i] = i;
    std::vector<std::uint32_t> counts(*cells);
    while (true) {
        std::fill(counts.begin(), counts.end(), 0u);
        for (std::uint32_t r = 0; r < oa.runs(); ++r) {
            std::uint64_t cell = 0;
            for (auto c : cols) cell = cell * oa.symbols() + oa.at(r, c);
            ++counts[cell];
        }
        for (auto c : counts) {
            if (c != expected) return false;
        }
        // next t-subset in lexicographic order
        std::int64_t i = static_cast<std::int64_t>(t) - 1;
        while (i >= 0 && cols[i] == oa.factors() - t + i) --i;
        if (i < 0) break;
        ++cols[i];
        for (std::uint32_t k = static_cast<std::uint32_t>(i) + 1; k < t; ++k) cols[k] = cols[k - 1] + 1;
    }
    return true;
}

OrthogonalArray apply_relabeling(const OrthogonalArray& oa, const OaRelabeling& relabel) {
    const std::uint32_t N = oa.runs();
    const std::uint32_t d = oa.factors();
    if (relabel.row_order.size() != N || relabel.column_order.size() != d ||
        relabel.symbol_map.size() != d) {
        throw DomainError("relabeling shape does not match the array");
    }
    std::vector<std::uint32_t> rows(std::size_t{N} * d);
    for (std::uint32_t i = 0; i < N; ++i) {
        for (std::uint32_t j = 0; j < d; ++j) {
            rows[std::size_t{i} * d + j] =
                relabel.symbol_map[j].at(oa.at(relabel.row_order[i], relabel.column_order[j]));
        }
    }
    return OrthogonalArray(N, d, oa.symbols(), oa.strength(), oa.index(), std::move(rows));
}

SampleMatrix tang_expand(const OrthogonalArray& oa, const TrialStreams& streams) {
    if (!verify_strength(oa, oa.strength())) {
        throw InvalidInput("array does not have its declared strength " +
                           std::to_string(oa.strength()));
    }
    const std::uint32_t N = oa.runs();
    const std::uint32_t d = oa.factors();
    const std::uint32_t s = oa.symbols();
    const std::uint32_t stratum = N / s;  // lambda * s^(t-1)

    std::vector<std::vector<std::uint32_t>> rows_by_symbol(s);
    std::vector<Level> levels(std::size_t{N} * d);
    for (std::uint32_t j = 0; j < d; ++j) {
        for (auto& bucket : rows_by_symbol) bucket.clear();
        for (std::uint32_t i = 0; i < N; ++i) rows_by_symbol[oa.at(i, j)].push_back(i);
        auto gen = streams.lane(j);
        for (std::uint32_t x = 0; x < s; ++x) {
            const auto perm = random_permutation(stratum, gen);
            const auto& rows = rows_by_symbol[x];
            for (std::size_t k = 0; k < rows.size(); ++k) {
                levels[std::size_t{rows[k]} * d + j] = x * stratum + perm[k];
            }
        }
    }
    return SampleMatrix(N, d, std::move(levels));
}

bool pairwise_block_uniform(const SampleMatrix& sample, std::uint32_t block_size) {
    if (block_size == 0 || sample.n() % block_size != 0) return false;
    const std::size_t blocks = sample.n() / block_size;
    if ((sample.n() % (blocks * blocks)) != 0) return false;
    const std::size_t expected = sample.n() / (blocks * blocks);
    std::vector<std::size_t> counts(blocks * blocks);
    for (std::size_t a = 0; a < sample.d(); ++a) {
        for (std::size_t b = a + 1; b < sample.d(); ++b) {
            std::fill(counts.begin(), counts.end(), 0);
            for (std::size_t i = 0; i < sample.n(); ++i) {
                ++counts[(sample.at(i, a) / block_size) * blocks + sample.at(i, b) / block_size];
            }
            for (auto c : counts) {
                if (c != expected) return false;
            }
        }
    }
    return true;
}

}  // namespace hypercoverage
