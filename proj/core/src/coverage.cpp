#include "hypercoverage/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypercoverage/errors.hpp"

namespace hypercoverage {

std::vector<Subspace> all_subspaces(std::uint32_t d, std::uint32_t t) {
    std::vector<Subspace> out;
    if (t == 0 || t > d) return out;
    Subspace cols(t);
    for (std::uint32_t i = 0; i < t; ++i) cols[i] = i;
    while (true) {
        out.push_back(cols);
        std::int64_t i = static_cast<std::int64_t>(t) - 1;
        while (i >= 0 && cols[i] == d - t + i) --i;
        if (i < 0) break;
        ++cols[i];
        for (std::uint32_t k = static_cast<std::uint32_t>(i) + 1; k < t; ++k) cols[k] = cols[k - 1] + 1;
    }
    return out;
}

CoverageState::CoverageState(std::uint32_t n, Subspace subspace) : n_(n), subspace_(std::move(subspace)) {
    if (n_ == 0) throw DomainError("coverage needs n >= 1");
    if (subspace_.empty()) throw DomainError("coverage subspace must name at least one column");
    auto sorted = subspace_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DomainError("coverage subspace columns must be distinct");
    }
    const auto cells = checked_pow(n_, static_cast<unsigned>(subspace_.size()));
    if (!cells) throw CapacityError("n^t cells do not fit 64 bits");
    cells_ = *cells;
    if (dense()) bits_.assign((cells_ + 63) / 64, 0);
}

void CoverageState::mark(std::uint64_t cell) noexcept {
    if (!bits_.empty()) {
        auto& word = bits_[cell >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (cell & 63);
        covered_ += (word & bit) == 0;
        word |= bit;
    } else if (sparse_.insert(cell).second) {
        ++covered_;
    }
}

void CoverageState::add_rows(std::span<const Level> levels, std::size_t d) noexcept {
    for (std::size_t base = 0; base < levels.size(); base += d) {
        std::uint64_t cell = 0;
        for (auto c : subspace_) cell = cell * n_ + levels[base + c];
        mark(cell);
    }
}

void CoverageState::add(const SampleMatrix& sample) {
    if (sample.n() != n_) {
        throw DomainError("sample has n=" + std::to_string(sample.n()) + ", coverage tracks n=" +
                          std::to_string(n_));
    }
    for (auto c : subspace_) {
        if (c >= sample.d()) {
            throw DomainError("subspace column " + std::to_string(c) + " outside d=" +
                              std::to_string(sample.d()));
        }
    }
    add_rows(sample.levels(), sample.d());
}

bool CoverageState::covered(std::span<const Level> cell) const {
    if (cell.size() != subspace_.size()) throw DomainError("cell arity does not match the subspace");
    std::uint64_t index = 0;
    for (auto v : cell) {
        if (v >= n_) return false;
        index = index * n_ + v;
    }
    if (!bits_.empty()) return (bits_[index >> 6] >> (index & 63)) & 1;
    return sparse_.contains(index);
}

double covered_fraction(std::span<const SampleMatrix> samples, const Subspace& subspace) {
    if (samples.empty()) return 0.0;
    const std::size_t n = samples.front().n();
    const std::size_t d = samples.front().d();
    for (const auto& s : samples) {
        if (s.n() != n || s.d() != d) throw DomainError("samples must share (n, d)");
    }
    CoverageState state(static_cast<std::uint32_t>(n), subspace);
    for (const auto& s : samples) state.add(s);
    return state.fraction();
}

double conjectured_coverage(std::uint64_t k, std::uint32_t n, std::uint32_t t) {
    if (k == 0) return 0.0;
    const double q = 1.0 / std::pow(static_cast<double>(n), static_cast<double>(t) - 1.0);
    if (q >= 1.0) return 1.0;
    return -std::expm1(static_cast<double>(k) * std::log1p(-q));
}

double asymptotic_coverage(double k, std::uint32_t n, std::uint32_t t) {
    const double scale = std::pow(static_cast<double>(n), static_cast<double>(t) - 1.0);
    return -std::expm1(-k / scale);
}

double trials_for_full_coverage_estimate(std::uint32_t n, std::uint32_t t) {
    if (n < 2 || t < 2) throw DomainError("full-coverage estimate needs n >= 2 and t >= 2");
    const double dn = static_cast<double>(n);
    return (static_cast<double>(t) - 1.0) * std::log(dn) * std::pow(dn, static_cast<double>(t) - 1.0);
}

SubBlockHistogram subblock_histogram(std::span<const SampleMatrix> samples, const OsParameters& params,
                                     std::uint32_t first, std::uint32_t second) {
    const std::uint32_t p = params.p();
    for (const auto& s : samples) {
        if (s.n() != params.n()) {
            throw DomainError("sub-block histogram needs n = p^d = " + std::to_string(params.n()) +
                              ", got n=" + std::to_string(s.n()));
        }
        if (first >= s.d() || second >= s.d()) throw DomainError("sub-block pair column outside d");
    }
    if (first == second) throw DomainError("sub-block pair needs two distinct columns");

    SubBlockHistogram h;
    h.p = p;
    h.first = first;
    h.second = second;
    h.trials = samples.size();
    h.counts.assign(std::size_t{p} * p, 0);
    for (const auto& s : samples) {
        for (std::size_t i = 0; i < s.n(); ++i) {
            const auto b1 = s.at(i, first) / params.block_size();
            const auto b2 = s.at(i, second) / params.block_size();
            ++h.counts[b1 * p + b2];
        }
    }
    // Each exact orthogonal trial puts p^(d-2) points in every block pair.
    const double per_trial = static_cast<double>(params.block_size() / p);
    const double divisor = static_cast<double>(h.trials) * per_trial;
    h.normalized.resize(h.counts.size());
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        h.normalized[i] = h.trials == 0 ? 0.0 : static_cast<double>(h.counts[i]) / divisor;
    }
    return h;
}

HistogramSpread spread(const SubBlockHistogram& histogram) {
    HistogramSpread out;
    const auto& v = histogram.normalized;
    if (v.empty()) return out;
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    out.min = *lo;
    out.max = *hi;
    double mean = 0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    out.variance = ss / static_cast<double>(v.size());
    return out;
}

}  // namespace hypercoverage
