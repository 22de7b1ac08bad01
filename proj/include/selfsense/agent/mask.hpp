#pragma once

#include <string>
#include <utility>
#include <vector>

namespace selfsense::agent {

/// Ordered substitution table that strips technical robotics vocabulary from
/// prompts so the model cannot shortcut self-identification. Matching is
/// case-insensitive on whole words.
struct TerminologyMask {
  std::vector<std::pair<std::string, std::string>> substitutions;

  /// The standard table: sensors -> sources of information, encoders ->
  /// position, linear velocity and orientation, LiDAR -> proximity to
  /// obstacles, IMU -> linear acceleration, RGB-D camera -> image.
  static TerminologyMask standard();

  std::string apply(const std::string& text) const;

  /// True when no masked term survives in the text.
  bool leaves_clean(const std::string& text) const;
};

}  // namespace selfsense::agent
