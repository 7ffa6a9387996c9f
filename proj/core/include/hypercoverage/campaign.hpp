#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hypercoverage/coverage.hpp"
#include "hypercoverage/random.hpp"
#include "hypercoverage/sample.hpp"
#include "hypercoverage/sampling.hpp"

namespace hypercoverage {

enum class SamplerKind { Lhs, Os };

std::string_view to_string(SamplerKind kind) noexcept;
/// "lhs" or "os"; throws DomainError otherwise.
SamplerKind parse_sampler(std::string_view name);

/// Draws whole trials of a fixed shape.
class TrialSampler {
  public:
    /// Throws DomainError when kind is Os and n is not a perfect d-th power.
    TrialSampler(SamplerKind kind, std::uint32_t n, std::uint32_t d);

    SamplerKind kind() const noexcept { return kind_; }
    std::uint32_t n() const noexcept { return n_; }
    std::uint32_t d() const noexcept { return d_; }
    const std::optional<OsParameters>& os_parameters() const noexcept { return os_; }

    SampleMatrix generate(const TrialStreams& streams) const;

    /// Writes one trial row-major into out (n*d levels), reusing scratch.
    void fill(std::span<Level> out, const TrialStreams& streams, std::vector<Level>& scratch) const;

  private:
    SamplerKind kind_;
    std::uint32_t n_;
    std::uint32_t d_;
    std::optional<OsParameters> os_;
};

/// Mixes an experiment's shape into the master seed so that different
/// (n, d, t, sampler) runs under one master seed use unrelated streams.
std::uint64_t experiment_key(std::uint64_t master_seed, std::uint32_t n, std::uint32_t d,
                             std::uint32_t t, SamplerKind kind) noexcept;

/// Runs body(i) for i in [0, count) on `workers` threads. Work items are
/// claimed dynamically; callers must make body(i) write only to slot i.
/// The first exception thrown by any item is rethrown after all threads join.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

struct CampaignConfig {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::uint32_t t = 0;
    std::vector<double> thresholds;
    std::uint32_t replicates = 200;
    std::uint32_t max_trials = 0;
    SamplerKind sampler = SamplerKind::Lhs;
    std::uint64_t master_seed = 0;
    unsigned workers = 1;
};

/// A cap far past the expected full-coverage time of every subspace.
std::uint32_t default_max_trials(std::uint32_t n, std::uint32_t d, std::uint32_t t);

struct ThresholdOutcome {
    double threshold = 0;
    /// Per replicate and subspace: first trial count at which that subspace's
    /// covered fraction is >= threshold, or nullopt when max_trials came first.
    std::vector<std::vector<std::optional<std::uint32_t>>> subspace_trials;
    /// Per replicate: mean of subspace_trials over the C(d, t) subspaces, or
    /// nullopt when any subspace was censored.
    std::vector<std::optional<double>> trials;
    std::uint32_t censored = 0;
    /// Mean and standard error over uncensored replicates (NaN when fewer than
    /// one, respectively two, are available).
    double mean_trials = 0;
    double stderr_trials = 0;

    bool fully_censored() const noexcept { return censored == trials.size(); }
};

struct CoverageCampaignResult {
    CampaignConfig config;
    std::vector<Subspace> subspaces;
    std::uint64_t cells_per_subspace = 0;
    std::vector<ThresholdOutcome> outcomes;  // one per threshold, ascending

    const ThresholdOutcome& at_threshold(double threshold) const;
    bool any_fully_censored() const noexcept;
};

/// Folds fresh trials into every C(d, t) subspace until each subspace reaches
/// the top threshold (or max_trials), per replicate. A replicate's trials to a
/// threshold is the mean of its per-subspace first-passage counts, so its
/// expectation is the single-subspace value for every d.
/// Replicate r, trial i uses TrialStreams{experiment_key(...), r, i}.
/// Throws DomainError for an invalid configuration.
CoverageCampaignResult run_campaign(const CampaignConfig& config);

/// Least-squares slope of log10(mean trials) on log10(n) at one threshold.
/// Throws InsufficientData with fewer than three distinct n values carrying
/// an uncensored mean, and DomainError when the results disagree on (d, t)
/// or lack the threshold.
double fit_loglog_gradient(std::span<const CoverageCampaignResult> results, double threshold);

struct CurveConfig {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::uint32_t t = 0;
    std::uint32_t replicates = 200;
    SamplerKind sampler = SamplerKind::Lhs;
    std::uint64_t master_seed = 0;
    unsigned workers = 1;
};

struct CurvePoint {
    std::uint32_t k = 0;
    double empirical = 0;  // mean over replicates of the mean-over-subspaces fraction
    double conjectured = 0;
    double asymptotic = 0;
    double stderr_empirical = 0;
};

/// Monte Carlo coverage after k = 1..k_max trials next to the closed forms.
/// Mean and standard error come from exact integer sums, so results do not
/// depend on the worker count. Throws DomainError for k_max < 1.
std::vector<CurvePoint> coverage_curve(const CurveConfig& config, std::uint32_t k_max);

/// Trials drawn until the mean covered fraction over all C(d, t) subspaces
/// reaches target, or nullopt if max_trials pass first.
std::optional<std::vector<SampleMatrix>> sample_until_coverage(const TrialSampler& sampler,
                                                               std::uint32_t t, double target,
                                                               std::uint32_t max_trials,
                                                               std::uint64_t key,
                                                               std::uint32_t replicate);

}  // namespace hypercoverage
