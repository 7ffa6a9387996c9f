#pragma once

#include <span>
#include <vector>

#include "hypercoverage/sampling.hpp"

// Allocation-free generators for the campaign loop; same draws as the public
// generate_* functions.
namespace hypercoverage::detail {

void fill_lhs(std::span<Level> out, std::uint32_t n, std::uint32_t d, const TrialStreams& streams,
              std::vector<Level>& scratch);

void fill_os(std::span<Level> out, const OsParameters& params, const TrialStreams& streams,
             std::vector<Level>& scratch);

}  // namespace hypercoverage::detail
