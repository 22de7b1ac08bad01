#pragma once

#include "selfsense/rng.hpp"
#include "selfsense/sim/sensors.hpp"

namespace selfsense::sim {

/// Reactive wall-avoiding random walk. Forward-biased in open space, steers
/// away from any 45 degree sector with clearance under 0.5 m, and stops or
/// backs off when the front is blocked. Reproducible for a given stream.
BodyVelocity explore_policy(const RobotState& state, const RawLidarScan& scan,
                            RandomStream& rng);

}  // namespace selfsense::sim
