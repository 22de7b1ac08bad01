#include "selfsense/judge/aggregate.hpp"

#include <cmath>

#include "selfsense/errors.hpp"

namespace selfsense::judge {

namespace {

DimensionSummary summarize(const std::vector<JudgeScore>& scores, Dimension d) {
  DimensionSummary out;
  double sum = 0.0, sum_sq = 0.0;
  for (const JudgeScore& s : scores) {
    const auto v = s.by_dimension(d);
    if (!v) {
      ++out.missing;
      continue;
    }
    out.series.push_back(*v);
    sum += *v;
    sum_sq += static_cast<double>(*v) * *v;
  }
  out.n = static_cast<int>(out.series.size());
  if (out.n > 0) {
    out.mean = sum / out.n;
    const double var = std::max(0.0, sum_sq / out.n - out.mean * out.mean);
    out.sd = std::sqrt(var);
  }
  return out;
}

}  // namespace

const DimensionSummary& ScoreSummary::for_dimension(Dimension d) const {
  switch (d) {
    case Dimension::Entity: return entity;
    case Dimension::Dimensions: return dimensions;
    case Dimension::Movement: return movement;
    case Dimension::Environment: return environment;
  }
  return entity;
}

ScoreSummary aggregate(const std::vector<JudgeScore>& scores) {
  if (scores.empty()) throw EmptyRun("aggregate: no scores");
  ScoreSummary summary;
  summary.entity = summarize(scores, Dimension::Entity);
  summary.dimensions = summarize(scores, Dimension::Dimensions);
  summary.movement = summarize(scores, Dimension::Movement);
  summary.environment = summarize(scores, Dimension::Environment);
  return summary;
}

std::array<double, 3> relative_error(const agent::Dimensions& actual,
                                     const agent::Dimensions& estimated) {
  const double a[3] = {actual.length, actual.height, actual.width};
  const double e[3] = {estimated.length, estimated.height, estimated.width};
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) {
    if (!(a[i] > 0.0) || !(e[i] > 0.0)) {
      throw NonPositiveDimension("relative_error requires positive dimensions");
    }
    out[i] = std::abs(e[i] - a[i]) / a[i] * 100.0;
  }
  return out;
}

}  // namespace selfsense::judge
