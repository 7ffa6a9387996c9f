#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hypercoverage/campaign.hpp"
#include "hypercoverage/coverage.hpp"
#include "hypercoverage/orthogonal_array.hpp"
#include "hypercoverage/sample.hpp"

namespace hypercoverage::io {

/// Thrown for unreadable or malformed files; the message names the problem.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// %.17g, with "nan" for NaN.
std::string format_double(double value);

// Samples: CSV with header x1,...,xd and 1-based levels, or
// {"n":..,"d":..,"p":..|null,"levels":[[...],...]} with 1-based levels.

void write_sample_csv(std::ostream& out, const SampleMatrix& sample);
SampleMatrix read_sample_csv(std::istream& in);

struct SampleDocument {
    SampleMatrix sample;
    std::optional<std::uint32_t> p;
};

void write_sample_json(std::ostream& out, const SampleMatrix& sample, std::optional<std::uint32_t> p);
SampleDocument read_sample_json(std::istream& in);

// Orthogonal arrays: headerless CSV of 0-based symbols plus a JSON sidecar
// {"s":..,"t":..,"lambda":..}. Reading verifies the declared strength.

void write_oa_csv(std::ostream& out, const OrthogonalArray& oa);
void write_oa_sidecar(std::ostream& out, const OrthogonalArray& oa);
/// Throws FormatError on malformed input and InvalidInput when the array
/// lacks its declared strength.
OrthogonalArray read_oa(std::istream& csv, std::istream& sidecar);

// Experiment outputs.

void write_campaign_csv(std::ostream& out, const CoverageCampaignResult& result);
/// Summary object for one campaign: config, per-threshold mean/stderr/censored.
std::string campaign_summary_json(const std::vector<CoverageCampaignResult>& results,
                                  const std::vector<std::pair<double, std::optional<double>>>& gradients);
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve);
/// Block indices are written 1-based.
void write_subblock_csv(std::ostream& out, const SubBlockHistogram& histogram);

/// One parsed row of a campaign CSV.
struct CampaignRow {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::uint32_t t = 0;
    std::string sampler;
    double threshold = 0;
    std::uint32_t replicate = 0;
    std::optional<double> trials;
};
std::vector<CampaignRow> read_campaign_csv(std::istream& in);

/// Writes `content` to a sibling temporary file and renames it over `path`,
/// so readers never observe a partial file. Throws std::filesystem::filesystem_error
/// or FormatError on I/O failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace hypercoverage::io
