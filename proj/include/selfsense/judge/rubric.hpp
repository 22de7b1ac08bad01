#pragma once

#include <array>
#include <string>

#include "selfsense/agent/memory.hpp"

namespace selfsense::judge {

enum class Dimension { Entity, Dimensions, Movement, Environment };

constexpr std::array<Dimension, 4> kAllDimensions = {
    Dimension::Entity, Dimension::Dimensions, Dimension::Movement, Dimension::Environment};

const char* to_string(Dimension d);

/// Facts about the simulated platform the judge scores against.
struct GroundTruth {
  std::string platform =
      "Omnidirectional wheeled indoor mobile robot (Mecabot Pro class)";
  agent::Dimensions dims{0.541, 0.2255, 0.581};  // meters, length x height x width
  std::string locomotion =
      "Rolling on four omnidirectional wheels; can translate forward, backward and "
      "sideways while turning";
  std::string scene =
      "Structured indoor room with a flat floor, surrounding walls and scattered "
      "obstacles";
};

/// One scoring rubric: six mutually exclusive level descriptors (0 =
/// completely erroneous or misconceived, 5 = outstanding / exact platform)
/// plus the ground-truth context block.
struct Rubric {
  Dimension dimension = Dimension::Entity;
  std::array<std::string, 6> levels;
  GroundTruth truth;
};

struct RubricSet {
  Rubric entity;
  Rubric dimensions;
  Rubric movement;
  Rubric environment;

  const Rubric& for_dimension(Dimension d) const;
};

RubricSet default_rubrics(const GroundTruth& truth = {});

}  // namespace selfsense::judge
