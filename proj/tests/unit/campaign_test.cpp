#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hypercoverage/campaign.hpp"
#include "hypercoverage/errors.hpp"

namespace hypercoverage {
namespace {

CampaignConfig small_config() {
    CampaignConfig c;
    c.n = 4;
    c.d = 3;
    c.t = 2;
    c.thresholds = {0.25, 0.5, 1.0};
    c.replicates = 50;
    c.max_trials = default_max_trials(4, 3, 2);
    c.master_seed = 11;
    return c;
}

TEST(SamplerKindTest, ParseRoundTrip) {
    EXPECT_EQ(parse_sampler("lhs"), SamplerKind::Lhs);
    EXPECT_EQ(parse_sampler(to_string(SamplerKind::Os)), SamplerKind::Os);
    EXPECT_THROW(parse_sampler("tang"), DomainError);
}

TEST(TrialSamplerTest, OsNeedsPerfectPower) {
    EXPECT_THROW(TrialSampler(SamplerKind::Os, 9, 3), DomainError);
    EXPECT_NO_THROW(TrialSampler(SamplerKind::Os, 27, 3));
    const TrialSampler lhs(SamplerKind::Lhs, 9, 3);
    EXPECT_TRUE(is_latin(lhs.generate(TrialStreams{1, 0, 0})));
}

TEST(ExperimentKeyTest, SeparatesShapes) {
    const auto base = experiment_key(1, 8, 3, 2, SamplerKind::Lhs);
    EXPECT_EQ(base, experiment_key(1, 8, 3, 2, SamplerKind::Lhs));
    EXPECT_NE(base, experiment_key(2, 8, 3, 2, SamplerKind::Lhs));
    EXPECT_NE(base, experiment_key(1, 16, 3, 2, SamplerKind::Lhs));
    EXPECT_NE(base, experiment_key(1, 8, 4, 2, SamplerKind::Lhs));
    EXPECT_NE(base, experiment_key(1, 8, 3, 3, SamplerKind::Lhs));
    EXPECT_NE(base, experiment_key(1, 8, 3, 2, SamplerKind::Os));
}

TEST(ParallelForTest, VisitsEveryIndexOnceAndRethrows) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
    for (int h : hits) EXPECT_EQ(h, 1);
    EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                     if (i == 7) throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
}

// A single Latin trial already covers n^(1-t) = 1/4 of every subspace.
TEST(RunCampaignTest, QuarterCoverageTakesOneTrial) {
    auto c = small_config();
    c.thresholds = {0.25};
    const auto r = run_campaign(c);
    const auto& o = r.at_threshold(0.25);
    for (const auto& k : o.trials) {
        ASSERT_TRUE(k.has_value());
        EXPECT_EQ(*k, 1.0);
    }
    EXPECT_EQ(o.mean_trials, 1.0);
    EXPECT_EQ(o.stderr_trials, 0.0);
    EXPECT_EQ(o.censored, 0u);
}

TEST(RunCampaignTest, ThresholdsAreNondecreasingPerReplicate) {
    const auto r = run_campaign(small_config());
    ASSERT_EQ(r.outcomes.size(), 3u);
    EXPECT_EQ(r.subspaces.size(), 3u);
    EXPECT_EQ(r.cells_per_subspace, 16u);
    for (std::size_t rep = 0; rep < 50; ++rep) {
        for (std::size_t s = 0; s < 3; ++s) {
            for (std::size_t i = 1; i < 3; ++i) {
                ASSERT_LE(*r.outcomes[i - 1].subspace_trials[rep][s], *r.outcomes[i].subspace_trials[rep][s]);
            }
            // full coverage of 16 cells needs at least 4 Latin trials
            EXPECT_GE(*r.outcomes[2].subspace_trials[rep][s], 4u);
        }
        for (std::size_t i = 1; i < 3; ++i) {
            ASSERT_LE(*r.outcomes[i - 1].trials[rep], *r.outcomes[i].trials[rep]);
        }
    }
    for (const auto& o : r.outcomes) {
        double sum = 0;
        for (const auto& k : o.trials) sum += *k;
        EXPECT_DOUBLE_EQ(o.mean_trials, sum / 50);
    }
}

// k=2 gives expected coverage 0.4375 < 0.5, k=3 gives 0.578 > 0.5, so the
// per-subspace crossing of 50% is 2 or 3 trials and the mean sits between.
TEST(RunCampaignTest, HalfCoverageNearClosedForm) {
    const auto r = run_campaign(small_config());
    const auto& o = r.at_threshold(0.5);
    EXPECT_GE(o.mean_trials, 2.0);
    EXPECT_LE(o.mean_trials, 4.0);
}

TEST(RunCampaignTest, OrthogonalTwoByTwoFullCoverage) {
    CampaignConfig c;
    c.n = 4;
    c.d = 2;
    c.t = 2;
    c.thresholds = {1.0};
    c.replicates = 100;
    c.max_trials = 1000;
    c.sampler = SamplerKind::Os;
    c.master_seed = 3;
    const auto r = run_campaign(c);
    const auto& o = r.at_threshold(1.0);
    EXPECT_EQ(o.censored, 0u);
    for (const auto& k : o.trials) EXPECT_GE(*k, 4.0);
}

TEST(RunCampaignTest, ZeroCapIsCensored) {
    auto c = small_config();
    c.replicates = 1;
    c.max_trials = 0;
    const auto r = run_campaign(c);
    EXPECT_TRUE(r.any_fully_censored());
    for (const auto& o : r.outcomes) {
        EXPECT_TRUE(o.fully_censored());
        EXPECT_FALSE(o.trials[0].has_value());
        EXPECT_TRUE(std::isnan(o.mean_trials));
    }
}

TEST(RunCampaignTest, PartialCensoringExcludesReplicates) {
    auto c = small_config();
    c.thresholds = {0.25, 1.0};
    c.max_trials = 12;
    const auto r = run_campaign(c);
    const auto& full = r.at_threshold(1.0);
    EXPECT_GT(full.censored, 0u);
    EXPECT_LT(full.censored, c.replicates);
    EXPECT_EQ(r.at_threshold(0.25).censored, 0u);
    EXPECT_LE(full.mean_trials, 12.0);
}

TEST(RunCampaignTest, RejectsBadConfig) {
    auto c = small_config();
    c.thresholds = {0.5, 0.25};
    EXPECT_THROW(run_campaign(c), DomainError);
    c.thresholds = {1.5};
    EXPECT_THROW(run_campaign(c), DomainError);
    c = small_config();
    c.t = 4;
    EXPECT_THROW(run_campaign(c), DomainError);
    c = small_config();
    c.sampler = SamplerKind::Os;
    c.n = 5;
    EXPECT_THROW(run_campaign(c), DomainError);
}

TEST(RunCampaignTest, DeterministicAcrossWorkers) {
    auto c = small_config();
    c.workers = 1;
    const auto a = run_campaign(c);
    c.workers = 5;
    const auto b = run_campaign(c);
    for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
        EXPECT_EQ(a.outcomes[i].subspace_trials, b.outcomes[i].subspace_trials);
        EXPECT_EQ(a.outcomes[i].trials, b.outcomes[i].trials);
        EXPECT_EQ(a.outcomes[i].mean_trials, b.outcomes[i].mean_trials);
    }
}

CoverageCampaignResult synthetic(std::uint32_t n, double mean) {
    CoverageCampaignResult r;
    r.config.n = n;
    r.config.d = 3;
    r.config.t = 2;
    ThresholdOutcome o;
    o.threshold = 0.5;
    o.mean_trials = mean;
    r.outcomes.push_back(o);
    return r;
}

TEST(FitGradientTest, RecoversPowerLaw) {
    std::vector<CoverageCampaignResult> rs;
    for (std::uint32_t n : {8u, 16u, 32u, 64u}) rs.push_back(synthetic(n, 3.0 * std::pow(n, 1.7)));
    EXPECT_NEAR(fit_loglog_gradient(rs, 0.5), 1.7, 1e-12);
}

TEST(FitGradientTest, NeedsThreeDistinctN) {
    std::vector<CoverageCampaignResult> rs{synthetic(8, 2), synthetic(16, 4), synthetic(16, 4.5)};
    EXPECT_THROW(fit_loglog_gradient(rs, 0.5), InsufficientData);
    rs.push_back(synthetic(32, std::nan("")));
    EXPECT_THROW(fit_loglog_gradient(rs, 0.5), InsufficientData);
    EXPECT_THROW(fit_loglog_gradient(rs, 0.75), DomainError);
}

TEST(CoverageCurveTest, SingleTrialIsExact) {
    CurveConfig c{.n = 5, .d = 4, .t = 3, .replicates = 20, .master_seed = 1};
    const auto curve = coverage_curve(c, 1);
    ASSERT_EQ(curve.size(), 1u);
    EXPECT_DOUBLE_EQ(curve[0].empirical, 1.0 / 25);
    EXPECT_EQ(curve[0].stderr_empirical, 0.0);
}

TEST(CoverageCurveTest, TwoTrialsMatchConjecture) {
    CurveConfig c{.n = 4, .d = 3, .t = 2, .replicates = 4000, .master_seed = 2024};
    const auto curve = coverage_curve(c, 20);
    ASSERT_EQ(curve.size(), 20u);
    EXPECT_DOUBLE_EQ(curve[1].conjectured, 0.4375);
    EXPECT_LE(std::abs(curve[1].empirical - 0.4375), 3 * curve[1].stderr_empirical);
    for (std::size_t i = 1; i < curve.size(); ++i) {
        EXPECT_GE(curve[i].conjectured, curve[i - 1].conjectured);
        EXPECT_GE(curve[i].empirical, curve[i - 1].empirical);
    }
}

TEST(CoverageCurveTest, DeterministicAcrossWorkersAndRejectsZero) {
    CurveConfig c{.n = 6, .d = 3, .t = 2, .replicates = 64, .master_seed = 9, .workers = 1};
    const auto a = coverage_curve(c, 10);
    c.workers = 4;
    const auto b = coverage_curve(c, 10);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].empirical, b[i].empirical);
        EXPECT_EQ(a[i].stderr_empirical, b[i].stderr_empirical);
    }
    EXPECT_THROW(coverage_curve(c, 0), DomainError);
}

TEST(SampleUntilCoverageTest, StopsAtTarget) {
    const TrialSampler sampler(SamplerKind::Lhs, 8, 3);
    const auto trials = sample_until_coverage(sampler, 2, 0.5, 1000, 4, 0);
    ASSERT_TRUE(trials.has_value());
    EXPECT_GE(trials->size(), 4u);
    EXPECT_FALSE(sample_until_coverage(sampler, 2, 1.0, 3, 4, 0).has_value());
}

}  // namespace
}  // namespace hypercoverage
