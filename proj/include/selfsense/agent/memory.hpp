#pragma once

#include <string>

namespace selfsense::agent {

/// Estimated body size in meters.
struct Dimensions {
  double length = 0.0;
  double height = 0.0;
  double width = 0.0;
};

/// The model's four-field self-assessment for one iteration (0-based).
struct PredictionRecord {
  Dimensions dimensions;
  std::string movement;
  std::string entity;
  std::string environment;
  int iteration = 0;
};

/// Rolling past-present summary injected into the next prompt. `iteration`
/// counts absorbed predictions: the summary is empty iff iteration == 0, and
/// stays empty at every iteration when memory is ablated.
struct MemoryState {
  int iteration = 0;
  std::string summary;
};

/// Canonical one-line JSON used both for the memory summary and the
/// transcript; the next prompt embeds this text verbatim.
std::string serialize_prediction(const PredictionRecord& pred);

/// The new prediction becomes the whole summary for the next iteration.
MemoryState update_memory(const MemoryState& prev, const PredictionRecord& pred,
                          bool memory_ablated);

}  // namespace selfsense::agent
