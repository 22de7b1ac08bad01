#include "selfsense/agent/memory.hpp"

#include <nlohmann/json.hpp>

#include "selfsense/errors.hpp"

namespace selfsense::agent {

std::string serialize_prediction(const PredictionRecord& pred) {
  nlohmann::ordered_json j;
  j["iteration"] = pred.iteration;
  j["dimensions"] = {{"length", pred.dimensions.length},
                     {"height", pred.dimensions.height},
                     {"width", pred.dimensions.width}};
  j["movement"] = pred.movement;
  j["entity"] = pred.entity;
  j["environment"] = pred.environment;
  return j.dump();
}

MemoryState update_memory(const MemoryState& prev, const PredictionRecord& pred,
                          bool memory_ablated) {
  if (pred.iteration != prev.iteration) {
    throw Error("update_memory: prediction iteration " + std::to_string(pred.iteration) +
                " does not match memory iteration " + std::to_string(prev.iteration));
  }
  MemoryState next;
  next.iteration = prev.iteration + 1;
  next.summary = memory_ablated ? std::string{} : serialize_prediction(pred);
  return next;
}

}  // namespace selfsense::agent
