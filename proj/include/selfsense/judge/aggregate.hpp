#pragma once

#include <array>
#include <vector>

#include "selfsense/judge/judge.hpp"

namespace selfsense::judge {

/// Mean, population standard deviation and the per-iteration series of the
/// scored iterations for one dimension. Missing scores are excluded from the
/// statistics and counted as `missing`.
struct DimensionSummary {
  double mean = 0.0;
  double sd = 0.0;
  int n = 0;
  int missing = 0;
  std::vector<int> series;  // scored iterations only, in order
};

struct ScoreSummary {
  DimensionSummary entity;
  DimensionSummary dimensions;
  DimensionSummary movement;
  DimensionSummary environment;

  const DimensionSummary& for_dimension(Dimension d) const;
};

/// Throws EmptyRun on an empty score list.
ScoreSummary aggregate(const std::vector<JudgeScore>& scores);

/// Per-axis |estimated - actual| / actual in percent, axis order
/// (length, height, width). Throws NonPositiveDimension.
std::array<double, 3> relative_error(const agent::Dimensions& actual,
                                     const agent::Dimensions& estimated);

}  // namespace selfsense::judge
