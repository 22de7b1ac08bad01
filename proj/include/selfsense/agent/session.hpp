#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "selfsense/ablation.hpp"
#include "selfsense/agent/backend.hpp"
#include "selfsense/agent/prompt.hpp"
#include "selfsense/sim/simulator.hpp"

namespace selfsense::agent {

struct SessionConfig {
  int iterations = 657;
  AblationMask ablation;
  std::uint64_t seed = 0;
  sim::SimConfig sim;
  double packet_hz = 1.0;
  double window = fusion::kMatchWindow;
  fusion::ImageMode image_mode = fusion::ImageMode::Reference;
  /// Wall-clock latency is only recorded for live backends; deterministic
  /// backends keep 0.0 so transcripts are byte-reproducible.
  bool measure_latency = false;
  std::optional<sim::WorldMap> world;  // generated from the seed when absent
};

/// One line of the run log / transcript. Records are 1-based; the embedded
/// prediction carries its 0-based iteration index.
struct IterationRecord {
  int iteration = 0;  // 1..n, contiguous
  double timestamp = 0.0;
  std::string prompt;
  bool image_attached = false;
  bool memory_used = false;
  std::string response;
  std::optional<PredictionRecord> prediction;
  std::string error;        // empty on success
  std::string memory_after;  // summary carried into the next iteration
  double latency_ms = 0.0;
};

struct RunLog {
  std::vector<IterationRecord> entries;
};

struct SessionSinks {
  /// Called once per packet with its canonical serialization.
  std::function<void(int iteration, const fusion::FusedPacket&, const std::string&)> on_packet;
  std::function<void(const IterationRecord&)> on_iteration;
};

/// The iterative prediction-memory loop: for every 1 Hz packet, build the
/// masked prompt, query the backend, parse the four-field self-assessment and
/// roll it into memory for the next iteration. Parse failures are recorded
/// and skipped (the previous memory is kept); only BackendUnavailable aborts.
RunLog run_session(const SessionConfig& config, TextBackend& backend,
                   const SessionSinks& sinks = {});

}  // namespace selfsense::agent
