#include "selfsense/agent/session.hpp"

#include <chrono>
#include <cmath>

#include "selfsense/agent/parse.hpp"
#include "selfsense/fusion/buffers.hpp"

namespace selfsense::agent {

RunLog run_session(const SessionConfig& config, TextBackend& backend,
                   const SessionSinks& sinks) {
  if (config.iterations < 1) throw ConfigError("run_session needs at least one iteration");

  sim::SimConfig sim_config = config.sim;
  sim_config.seed = config.seed;
  sim::WorldMap world =
      config.world ? *config.world : sim::WorldMap::generate(config.seed);
  sim::Simulator simulator(std::move(world), sim_config);

  fusion::SensorBuffers buffers;
  const TerminologyMask mask = TerminologyMask::standard();
  const double session_start = sim_config.clock_epoch;
  const double packet_period = 1.0 / config.packet_hz;
  const double half_tick = 0.5 / sim_config.tick_hz;

  MemoryState memory;
  RunLog log;
  log.entries.reserve(config.iterations);

  for (int k = 1; k <= config.iterations; ++k) {
    const double t_ref = session_start + (k - 1) * packet_period;

    // Samples later than t_ref can still fall inside the matching window.
    while (simulator.now() <= t_ref + config.window + half_tick) {
      const auto events = simulator.step();
      if (events.odometry) buffers.push_odometry(*events.odometry);
      if (events.imu) buffers.push_imu(*events.imu);
      if (events.lidar) buffers.push_lidar(*events.lidar);
      if (events.camera) buffers.push_camera(*events.camera);
    }
    buffers.prune(simulator.now());

    const fusion::FusedPacket packet =
        fusion::make_packet(buffers, t_ref, session_start, config.ablation, config.window);
    if (sinks.on_packet) {
      sinks.on_packet(k, packet, fusion::serialize_packet(packet, config.image_mode));
    }

    const PromptBundle prompt = build_prompt(packet, memory, mask);

    IterationRecord record;
    record.iteration = k;
    record.timestamp = packet.timestamp;
    record.prompt = prompt.text;
    record.image_attached = prompt.image_attached();
    record.memory_used = !memory.summary.empty();

    BackendRequest request;
    request.prompt = prompt.text;
    request.image = prompt.image;
    request.iteration = memory.iteration;
    request.packet = &packet;
    request.memory = &memory;

    const auto started = std::chrono::steady_clock::now();
    record.response = backend.complete(request);  // BackendUnavailable aborts the session
    if (config.measure_latency) {
      record.latency_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - started)
                              .count();
    }

    try {
      const PredictionRecord pred =
          parse_prediction(record.response, packet.image.has_value(), memory.iteration);
      memory = update_memory(memory, pred, config.ablation.memory);
      record.prediction = pred;
    } catch (const MalformedResponse& e) {
      // Skip the iteration and keep the previous memory; the loop continues.
      record.error = e.what();
      memory.iteration += 1;
    }
    record.memory_after = memory.summary;

    if (sinks.on_iteration) sinks.on_iteration(record);
    log.entries.push_back(std::move(record));
  }
  return log;
}

}  // namespace selfsense::agent
