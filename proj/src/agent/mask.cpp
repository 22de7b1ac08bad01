#include "selfsense/agent/mask.hpp"

#include <regex>

namespace selfsense::agent {

namespace {

std::regex word_pattern(const std::string& term) {
  return std::regex("\\b" + term + "\\b",
                    std::regex::icase | std::regex::ECMAScript | std::regex::optimize);
}

}  // namespace

TerminologyMask TerminologyMask::standard() {
  TerminologyMask m;
  m.substitutions = {
      {"rgb-d camera", "image"},
      {"rgb camera", "image"},
      {"sensors", "sources of information"},
      {"sensor", "source of information"},
      {"encoders", "position, linear velocity and orientation"},
      {"encoder", "position, linear velocity and orientation"},
      {"lidar", "proximity to obstacles"},
      {"imu", "linear acceleration"},
  };
  return m;
}

std::string TerminologyMask::apply(const std::string& text) const {
  std::string out = text;
  for (const auto& [term, replacement] : substitutions) {
    out = std::regex_replace(out, word_pattern(term), replacement);
  }
  return out;
}

bool TerminologyMask::leaves_clean(const std::string& text) const {
  for (const auto& [term, replacement] : substitutions) {
    (void)replacement;
    if (std::regex_search(text, word_pattern(term))) return false;
  }
  return true;
}

}  // namespace selfsense::agent
