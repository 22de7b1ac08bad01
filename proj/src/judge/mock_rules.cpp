#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <string>

#include "selfsense/judge/aggregate.hpp"
#include "selfsense/judge/judge.hpp"

namespace selfsense::judge {

namespace {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool has_any(const std::string& text, std::initializer_list<const char*> keywords) {
  for (const char* k : keywords) {
    if (text.find(k) != std::string::npos) return true;
  }
  return false;
}

int score_dimensions(const agent::PredictionRecord& pred, const GroundTruth& truth) {
  const auto err = relative_error(truth.dims, pred.dimensions);
  const double mean = (err[0] + err[1] + err[2]) / 3.0;
  if (mean <= 5.0) return 5;
  if (mean <= 20.0) return 4;
  if (mean <= 50.0) return 3;
  if (mean <= 80.0) return 2;
  if (mean <= 150.0) return 1;
  return 0;
}

// Ordered keyword classes; the truth is a wheeled indoor ground robot.
int score_entity(const std::string& text) {
  if (has_any(text, {"mecabot"})) return 5;
  if (has_any(text, {"drone", "aerial", "flying", "quadcopter", "uav", "aircraft"})) return 1;
  if (has_any(text, {"static", "stationary", "fixed"})) return 0;
  if (has_any(text, {"human", "person", "animal", "pedestrian"})) return 0;
  const bool robot = has_any(text, {"robot"});
  if (robot && has_any(text, {"wheel"})) return 4;
  if (robot && has_any(text, {"mobile", "ground", "indoor", "navigat"})) return 4;
  if (robot) return 3;
  if (has_any(text, {"vehicle", "platform", "cart", "rover", "machine"})) return 3;
  return 2;
}

int score_movement(const std::string& text) {
  const bool omni = has_any(text, {"omni", "lateral", "sideways"});
  if (omni && has_any(text, {"wheel", "roll"})) return 5;
  if (has_any(text, {"roll", "wheel", "driv"})) return 4;
  if (has_any(text, {"slid", "glid", "ground"})) return 3;
  if (has_any(text, {"fly", "hover", "airborne", "flight", "aerial"})) return 1;
  if (has_any(text, {"walk", "leg", "swim", "crawl", "step"})) return 1;
  if (has_any(text, {"holding", "static", "stationary", "no movement",
                     "no self-generated"})) {
    return 0;
  }
  return 2;
}

int score_environment(const std::string& text) {
  if (has_any(text, {"no visual information"})) return 0;
  const bool indoor = has_any(text, {"indoor"});
  const bool structure = has_any(text, {"wall", "obstacle", "corridor", "structured"});
  if (indoor && structure &&
      has_any(text, {"warehouse", "facility", "gym", "storage", "navigat"})) {
    return 5;
  }
  if (indoor && structure) return 4;
  if (indoor || has_any(text, {"enclosed", "room"})) return 3;
  if (has_any(text, {"outdoor", "sky", "field", "street", "ocean"})) return 1;
  return 2;
}

}  // namespace

int mock_judge(const agent::PredictionRecord& pred, const Rubric& rubric) {
  switch (rubric.dimension) {
    case Dimension::Dimensions:
      return score_dimensions(pred, rubric.truth);
    case Dimension::Entity:
      return score_entity(lowercase(pred.entity));
    case Dimension::Movement:
      return score_movement(lowercase(pred.movement));
    case Dimension::Environment:
      return score_environment(lowercase(pred.environment));
  }
  return 0;
}

}  // namespace selfsense::judge
