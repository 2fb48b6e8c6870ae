#pragma once

#include <map>
#include <span>
#include <string>

#include "windres/types.hpp"

namespace windres {

/// Mean over each half-open block [n*t, n*t + t); the trailing partial
/// block is dropped. Output step = input step * t, provenance "averaged".
WindSeries block_average(const WindSeries& series, std::size_t t);

/// Keeps the first observation of each block (indices 0, t, 2t, ...).
/// Output step = input step * t, provenance "instantaneous". Length is
/// ceil(len / t): the leading index of a partial block is still kept.
WindSeries subsample_instantaneous(const WindSeries& series, std::size_t t);

WindSeries resample(const WindSeries& series, const ResampleSpec& spec);

struct LadderResult {
  std::map<std::string, WindSeries> produced;      // key -> derived series
  std::map<std::string, std::string> failed;       // key -> error message
};

/// Applies every spec to the series, reporting per-entry failures instead
/// of aborting the batch.
LadderResult resolution_ladder(const WindSeries& series, std::span<const ResampleSpec> specs);

}  // namespace windres
