#include "hypercoverage/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "hypercoverage/errors.hpp"
#include "sampling_detail.hpp"

namespace hypercoverage {

std::string_view to_string(SamplerKind kind) noexcept {
    switch (kind) {
        case SamplerKind::Lhs: return "lhs";
        case SamplerKind::Os: return "os";
    }
    return "?";
}

SamplerKind parse_sampler(std::string_view name) {
    if (name == "lhs") return SamplerKind::Lhs;
    if (name == "os") return SamplerKind::Os;
    throw DomainError("unknown sampler '" + std::string(name) + "' (expected lhs or os)");
}

TrialSampler::TrialSampler(SamplerKind kind, std::uint32_t n, std::uint32_t d)
    : kind_(kind), n_(n), d_(d) {
    if (n == 0 || d == 0) throw DomainError("trials need n >= 1 and d >= 1");
    if (kind == SamplerKind::Os) os_ = OsParameters::from_levels(n, d);
}

SampleMatrix TrialSampler::generate(const TrialStreams& streams) const {
    std::vector<Level> levels(std::size_t{n_} * d_);
    std::vector<Level> scratch;
    fill(levels, streams, scratch);
    return SampleMatrix(n_, d_, std::move(levels));
}

void TrialSampler::fill(std::span<Level> out, const TrialStreams& streams,
                        std::vector<Level>& scratch) const {
    if (os_) {
        detail::fill_os(out, *os_, streams, scratch);
    } else {
        detail::fill_lhs(out, n_, d_, streams, scratch);
    }
}

namespace {

__extension__ using Wide = unsigned __int128;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double mean_of(std::span<const double> v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double stderr_of(std::span<const double> v, double mean) {
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

void check_shape(std::uint32_t n, std::uint32_t d, std::uint32_t t) {
    if (n == 0) throw DomainError("n must be positive");
    if (d == 0) throw DomainError("d must be positive");
    if (t == 0 || t > d) {
        throw DomainError("t must satisfy 1 <= t <= d, got t=" + std::to_string(t) +
                          " d=" + std::to_string(d));
    }
}

}  // namespace

std::uint64_t experiment_key(std::uint64_t master_seed, std::uint32_t n, std::uint32_t d,
                             std::uint32_t t, SamplerKind kind) noexcept {
    std::uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ n);
    h = splitmix64(h ^ (std::uint64_t{d} << 32 | t));
    return splitmix64(h ^ static_cast<std::uint64_t>(kind));
}

void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = count;
                }
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

std::uint32_t default_max_trials(std::uint32_t n, std::uint32_t d, std::uint32_t t) {
    const double subspaces = static_cast<double>(all_subspaces(d, t).size());
    const double dn = static_cast<double>(n);
    const double per_trial = std::pow(dn, static_cast<double>(t) - 1.0);
    const double expected_full = (std::log(subspaces) + static_cast<double>(t) * std::log(dn) + 1.0) * per_trial;
    const double cap = 10.0 * expected_full + 100.0;
    return cap >= static_cast<double>(std::numeric_limits<std::uint32_t>::max())
               ? std::numeric_limits<std::uint32_t>::max()
               : static_cast<std::uint32_t>(std::ceil(cap));
}

const ThresholdOutcome& CoverageCampaignResult::at_threshold(double threshold) const {
    for (const auto& o : outcomes) {
        if (std::abs(o.threshold - threshold) <= 1e-12) return o;
    }
    throw DomainError("campaign has no threshold " + std::to_string(threshold));
}

bool CoverageCampaignResult::any_fully_censored() const noexcept {
    return std::any_of(outcomes.begin(), outcomes.end(),
                       [](const ThresholdOutcome& o) { return o.fully_censored(); });
}

CoverageCampaignResult run_campaign(const CampaignConfig& config) {
    check_shape(config.n, config.d, config.t);
    if (config.replicates == 0) throw DomainError("campaign needs at least one replicate");
    if (config.thresholds.empty()) throw DomainError("campaign needs at least one threshold");
    for (std::size_t i = 0; i < config.thresholds.size(); ++i) {
        const double x = config.thresholds[i];
        if (!(x > 0.0 && x <= 1.0)) throw DomainError("thresholds must lie in (0, 1]");
        if (i > 0 && !(x > config.thresholds[i - 1])) {
            throw DomainError("thresholds must be strictly ascending");
        }
    }
    const TrialSampler sampler(config.sampler, config.n, config.d);

    CoverageCampaignResult result;
    result.config = config;
    result.subspaces = all_subspaces(config.d, config.t);
    result.cells_per_subspace = CoverageState(config.n, result.subspaces.front()).cell_count();

    const std::size_t T = config.thresholds.size();
    const std::size_t R = config.replicates;
    const std::size_t S = result.subspaces.size();
    result.outcomes.resize(T);
    for (std::size_t i = 0; i < T; ++i) {
        result.outcomes[i].threshold = config.thresholds[i];
        result.outcomes[i].trials.assign(R, std::nullopt);
        result.outcomes[i].subspace_trials.assign(R, std::vector<std::optional<std::uint32_t>>(S));
    }
    const std::uint64_t key = experiment_key(config.master_seed, config.n, config.d, config.t, config.sampler);
    const double cells = static_cast<double>(result.cells_per_subspace);

    parallel_for(R, config.workers, [&](std::size_t r) {
        std::vector<CoverageState> states;
        states.reserve(S);
        for (const auto& s : result.subspaces) states.emplace_back(config.n, s);
        std::vector<Level> trial(std::size_t{config.n} * config.d);
        std::vector<Level> scratch;
        std::vector<std::size_t> next(S, 0);
        std::size_t finished = 0;
        for (std::uint64_t k = 1; k <= config.max_trials && finished < S; ++k) {
            sampler.fill(trial, TrialStreams{key, static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(k - 1)},
                         scratch);
            for (std::size_t s = 0; s < S; ++s) {
                if (next[s] == T) continue;
                states[s].add_rows(trial, config.d);
                const double fraction = static_cast<double>(states[s].covered_count()) / cells;
                while (next[s] < T && fraction >= config.thresholds[next[s]]) {
                    result.outcomes[next[s]].subspace_trials[r][s] = static_cast<std::uint32_t>(k);
                    ++next[s];
                }
                if (next[s] == T) ++finished;
            }
        }
        for (auto& o : result.outcomes) {
            const auto& per = o.subspace_trials[r];
            if (std::all_of(per.begin(), per.end(), [](const auto& k) { return k.has_value(); })) {
                double sum = 0;
                for (const auto& k : per) sum += *k;
                o.trials[r] = sum / static_cast<double>(S);
            }
        }
    });

    for (auto& o : result.outcomes) {
        std::vector<double> done;
        for (const auto& k : o.trials) {
            if (k) done.push_back(*k);
        }
        o.censored = static_cast<std::uint32_t>(R - done.size());
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        o.mean_trials = done.empty() ? nan : mean_of(done);
        o.stderr_trials = done.size() < 2 ? nan : stderr_of(done, o.mean_trials);
    }
    return result;
}

double fit_loglog_gradient(std::span<const CoverageCampaignResult> results, double threshold) {
    std::vector<double> xs, ys;
    std::vector<std::uint32_t> ns;
    for (const auto& r : results) {
        if (r.config.d != results.front().config.d || r.config.t != results.front().config.t) {
            throw DomainError("gradient fit needs results sharing (d, t)");
        }
        const auto& o = r.at_threshold(threshold);
        if (!std::isfinite(o.mean_trials)) continue;
        xs.push_back(std::log10(static_cast<double>(r.config.n)));
        ys.push_back(std::log10(o.mean_trials));
        ns.push_back(r.config.n);
    }
    std::sort(ns.begin(), ns.end());
    if (std::unique(ns.begin(), ns.end()) - ns.begin() < 3) {
        throw InsufficientData("gradient fit needs at least three distinct n with uncensored means");
    }
    const double mx = mean_of(xs);
    const double my = mean_of(ys);
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

std::vector<CurvePoint> coverage_curve(const CurveConfig& config, std::uint32_t k_max) {
    check_shape(config.n, config.d, config.t);
    if (k_max < 1) throw DomainError("coverage curve needs k_max >= 1");
    if (config.replicates == 0) throw DomainError("coverage curve needs at least one replicate");
    const TrialSampler sampler(config.sampler, config.n, config.d);
    const auto subspaces = all_subspaces(config.d, config.t);
    const std::uint64_t key = experiment_key(config.master_seed, config.n, config.d, config.t, config.sampler);

    // Integer sums keep the reduction independent of completion order.
    std::vector<std::uint64_t> sum(k_max, 0);
    std::vector<Wide> sum_sq(k_max, 0);
    std::mutex merge;
    std::uint64_t cells = 0;

    parallel_for(config.replicates, config.workers, [&](std::size_t r) {
        std::vector<CoverageState> states;
        for (const auto& s : subspaces) states.emplace_back(config.n, s);
        std::vector<Level> trial(std::size_t{config.n} * config.d);
        std::vector<Level> scratch;
        std::vector<std::uint64_t> covered(k_max);
        for (std::uint32_t k = 1; k <= k_max; ++k) {
            sampler.fill(trial, TrialStreams{key, static_cast<std::uint32_t>(r), k - 1}, scratch);
            std::uint64_t c = 0;
            for (auto& st : states) {
                st.add_rows(trial, config.d);
                c += st.covered_count();
            }
            covered[k - 1] = c;
        }
        std::lock_guard lock(merge);
        cells = states.front().cell_count();
        for (std::uint32_t i = 0; i < k_max; ++i) {
            sum[i] += covered[i];
            sum_sq[i] += static_cast<Wide>(covered[i]) * covered[i];
        }
    });

    const double R = static_cast<double>(config.replicates);
    const double total = static_cast<double>(cells) * static_cast<double>(subspaces.size());
    std::vector<CurvePoint> out;
    out.reserve(k_max);
    for (std::uint32_t i = 0; i < k_max; ++i) {
        CurvePoint pt;
        pt.k = i + 1;
        pt.empirical = static_cast<double>(sum[i]) / (R * total);
        if (config.replicates > 1) {
            const Wide s = sum[i];
            const Wide spread = config.replicates * sum_sq[i] - s * s;
            const double var_counts = static_cast<double>(spread) / (R * (R - 1.0));
            pt.stderr_empirical = std::sqrt(var_counts / R) / total;
        } else {
            pt.stderr_empirical = std::numeric_limits<double>::quiet_NaN();
        }
        pt.conjectured = conjectured_coverage(pt.k, config.n, config.t);
        pt.asymptotic = asymptotic_coverage(pt.k, config.n, config.t);
        out.push_back(pt);
    }
    return out;
}

std::optional<std::vector<SampleMatrix>> sample_until_coverage(const TrialSampler& sampler,
                                                               std::uint32_t t, double target,
                                                               std::uint32_t max_trials,
                                                               std::uint64_t key,
                                                               std::uint32_t replicate) {
    check_shape(sampler.n(), sampler.d(), t);
    if (!(target > 0.0 && target <= 1.0)) throw DomainError("coverage target must lie in (0, 1]");
    std::vector<CoverageState> states;
    for (const auto& s : all_subspaces(sampler.d(), t)) states.emplace_back(sampler.n(), s);
    const double total = static_cast<double>(states.front().cell_count()) * static_cast<double>(states.size());
    std::vector<SampleMatrix> trials;
    for (std::uint32_t k = 0; k < max_trials; ++k) {
        trials.push_back(sampler.generate(TrialStreams{key, replicate, k}));
        std::uint64_t covered = 0;
        for (auto& st : states) {
            st.add(trials.back());
            covered += st.covered_count();
        }
        if (static_cast<double>(covered) / total >= target) return trials;
    }
    return std::nullopt;
}

}  // namespace hypercoverage
