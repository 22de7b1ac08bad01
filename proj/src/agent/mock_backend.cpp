#include "selfsense/agent/mock_backend.hpp"

#include <array>
#include <cmath>
#include <nlohmann/json.hpp>

#include "selfsense/rng.hpp"

namespace selfsense::agent {

namespace {

constexpr const char* kNoVisual = "No visual information available";

// The platform the simulation embodies; the grounded persona converges here.
constexpr double kDimsStart[3] = {0.20, 0.60, 0.30};
constexpr double kDimsAsymptote[3] = {0.50, 0.25, 0.50};
constexpr double kDimsAerial[3] = {0.40, 0.30, 0.40};

Dimensions converged_dims(const double (&start)[3], const double (&asym)[3], int iteration,
                          RandomStream& rng) {
  const double blend = std::exp(-iteration / 8.0);
  Dimensions d;
  d.length = asym[0] + (start[0] - asym[0]) * blend + 0.004 * rng.normal();
  d.height = asym[1] + (start[1] - asym[1]) * blend + 0.004 * rng.normal();
  d.width = asym[2] + (start[2] - asym[2]) * blend + 0.004 * rng.normal();
  return d;
}

std::string grounded_entity(int iteration) {
  if (iteration == 0) return "Static sensing unit mounted at a fixed point";
  if (iteration <= 3) return "Stationary monitoring device attached to the room";
  if (iteration <= 9) return "Autonomous ground vehicle moving through an indoor area";
  if (iteration <= 19) return "Mobile indoor robot moving on wheels";
  return "Mobile indoor wheeled robot navigating a structured space";
}

std::string grounded_movement(int iteration) {
  if (iteration <= 3) return "No self-generated movement detected; holding a fixed position";
  if (iteration <= 9) return "Smooth planar sliding across the ground between positions";
  if (iteration <= 19) return "Rolling across the floor on wheels";
  return "Omnidirectional rolling on wheels with combined forward and lateral slides";
}

std::string grounded_environment(int iteration) {
  if (iteration <= 1) return "Surroundings unclear; limited context so far";
  if (iteration <= 7) return "Enclosed room with a flat floor";
  if (iteration % 10 == 0) {
    return "Structured indoor space with walls and obstacles, resembling a storage "
           "facility or warehouse";
  }
  return "Structured indoor space bounded by walls with scattered obstacles";
}

// Wide, mutually contradictory answer pools for the memoryless regime.
constexpr std::array<const char*, 6> kFreshEntities = {
    "Mobile indoor wheeled robot used for deliveries",
    "Autonomous aerial drone surveying the area",
    "Static sensing unit fixed to the floor",
    "Human being walking through the room",
    "Industrial ground vehicle for material transport",
    "Compact service robot",
};

constexpr std::array<const char*, 6> kFreshMovements = {
    "Omnidirectional rolling on wheels",
    "Flying between vantage points",
    "No self-generated movement; static placement",
    "Walking on two legs",
    "Rolling on wheels across the floor",
    "Sliding across smooth ground",
};

constexpr std::array<const char*, 5> kFreshEnvironments = {
    "Structured indoor space with walls and obstacles, resembling a warehouse",
    "Enclosed room with a flat floor",
    "Open outdoor field under the sky",
    "Surroundings unclear; limited context",
    "Structured indoor space bounded by walls with scattered obstacles",
};

std::string render(const Dimensions& dims, const std::string& movement,
                   const std::string& entity, const std::string& environment,
                   int iteration) {
  nlohmann::ordered_json j;
  j["dimensions"] = {{"length", dims.length}, {"height", dims.height}, {"width", dims.width}};
  j["movement"] = movement;
  j["entity"] = entity;
  j["environment"] = environment;
  std::string body = j.dump();
  // Periodically wrap in prose so the extraction path stays exercised.
  if (iteration % 7 == 3) {
    return "Here is my current assessment.\n```json\n" + body + "\n```\n";
  }
  return body;
}

}  // namespace

std::string mock_predict(const fusion::FusedPacket& packet, const MemoryState& memory,
                         std::uint64_t seed) {
  const int iteration = memory.iteration;
  const bool has_image = packet.image.has_value();
  const bool memoryless = memory.summary.empty() && iteration > 0;

  RandomStream rng(derive_seed(seed, "mock-" + std::to_string(iteration)));

  if (!has_image) {
    // Without visual grounding the persona drifts airborne.
    const bool aerial = rng.uniform() < 0.75;
    const std::string entity = aerial
                                   ? "Autonomous aerial inspection drone surveying from above"
                                   : "Remote monitoring robot";
    const std::string movement = aerial ? "Hovering in place with small positional drift"
                                        : "Rolling slowly between observation points";
    const Dimensions dims =
        converged_dims(kDimsStart, kDimsAerial, memoryless ? 0 : iteration, rng);
    return render(dims, movement, entity, kNoVisual, iteration);
  }

  if (memoryless) {
    // No past context: draw everything fresh, contradictions included.
    const auto& entity = kFreshEntities[rng.uniform_int(0, kFreshEntities.size() - 1)];
    const auto& movement = kFreshMovements[rng.uniform_int(0, kFreshMovements.size() - 1)];
    const auto& environment =
        kFreshEnvironments[rng.uniform_int(0, kFreshEnvironments.size() - 1)];
    Dimensions dims;
    if (rng.uniform() < 0.3) {
      dims = {0.541 * (1.0 + 0.08 * rng.normal()), 0.2255 * (1.0 + 0.08 * rng.normal()),
              0.581 * (1.0 + 0.08 * rng.normal())};
    } else {
      dims = {rng.uniform(0.05, 6.0), rng.uniform(0.05, 6.0), rng.uniform(0.05, 6.0)};
    }
    dims.length = std::abs(dims.length);
    dims.height = std::abs(dims.height);
    dims.width = std::abs(dims.width);
    return render(dims, movement, entity, environment, iteration);
  }

  const Dimensions dims = converged_dims(kDimsStart, kDimsAsymptote, iteration, rng);
  return render(dims, grounded_movement(iteration), grounded_entity(iteration),
                grounded_environment(iteration), iteration);
}

}  // namespace selfsense::agent
