#pragma once

#include <cstdint>
#include <string>

#include "selfsense/agent/memory.hpp"
#include "selfsense/fusion/packet.hpp"

namespace selfsense::agent {

/// Deterministic stand-in for the live model, reproducing the qualitative
/// dynamics the pipeline is built around: with memory, estimates converge
/// and stabilize; without memory, each call draws fresh (often
/// contradictory) answers; without an image, entity guesses are biased
/// toward airborne platforms and the environment reads
/// "No visual information available".
std::string mock_predict(const fusion::FusedPacket& packet, const MemoryState& memory,
                         std::uint64_t seed);

}  // namespace selfsense::agent
