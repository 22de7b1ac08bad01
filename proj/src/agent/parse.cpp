#include "selfsense/agent/parse.hpp"

#include <cctype>
#include <cmath>
#include <nlohmann/json.hpp>
#include <optional>

#include "selfsense/errors.hpp"

namespace selfsense::agent {

namespace {

constexpr const char* kNoVisual = "No visual information available";

/// Returns the substring spanning the balanced JSON object starting at
/// `start` (which must index a '{'), honoring strings and escapes.
std::optional<std::string> balanced_object(const std::string& text, std::size_t start) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return text.substr(start, i - start + 1);
    }
  }
  return std::nullopt;
}

nlohmann::json extract_first_object(const std::string& raw) {
  for (std::size_t pos = raw.find('{'); pos != std::string::npos;
       pos = raw.find('{', pos + 1)) {
    const auto candidate = balanced_object(raw, pos);
    if (!candidate) continue;
    nlohmann::json j = nlohmann::json::parse(*candidate, nullptr, false);
    if (!j.is_discarded() && j.is_object()) return j;
  }
  throw MalformedResponse("no JSON object found in response");
}

double positive_number(const nlohmann::json& j, const char* what) {
  if (!j.is_number()) throw MalformedResponse(std::string("non-numeric dimension: ") + what);
  const double v = j.get<double>();
  if (!std::isfinite(v) || v <= 0.0) {
    throw MalformedResponse(std::string("dimension not positive and finite: ") + what);
  }
  return v;
}

Dimensions parse_dimensions(const nlohmann::json& j) {
  Dimensions d;
  if (j.is_object()) {
    if (!j.contains("length") || !j.contains("height") || !j.contains("width")) {
      throw MalformedResponse("dimensions object missing length/height/width");
    }
    d.length = positive_number(j["length"], "length");
    d.height = positive_number(j["height"], "height");
    d.width = positive_number(j["width"], "width");
  } else if (j.is_array() && j.size() == 3) {
    d.length = positive_number(j[0], "length");
    d.height = positive_number(j[1], "height");
    d.width = positive_number(j[2], "width");
  } else if (j.is_string()) {
    // e.g. "0.5 x 0.25 x 0.5 m"
    const std::string text = j.get<std::string>();
    double vals[3];
    int found = 0;
    for (std::size_t i = 0; i < text.size() && found < 3;) {
      if (std::isdigit(static_cast<unsigned char>(text[i])) ||
          (text[i] == '.' && i + 1 < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
        std::size_t consumed = 0;
        vals[found++] = std::stod(text.substr(i), &consumed);
        i += consumed;
      } else {
        ++i;
      }
    }
    if (found != 3) throw MalformedResponse("cannot read three dimensions from string");
    d = {vals[0], vals[1], vals[2]};
    if (d.length <= 0 || d.height <= 0 || d.width <= 0) {
      throw MalformedResponse("dimensions must be positive");
    }
  } else {
    throw MalformedResponse("dimensions field has unsupported type");
  }

  // Values this large can only be millimeters for an indoor platform.
  if (std::max({d.length, d.height, d.width}) > 10.0) {
    d.length /= 1000.0;
    d.height /= 1000.0;
    d.width /= 1000.0;
  }
  return d;
}

std::string required_string(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw MalformedResponse(std::string("missing field: ") + key);
  if (!j[key].is_string()) throw MalformedResponse(std::string("field not a string: ") + key);
  const std::string s = j[key].get<std::string>();
  if (s.empty()) throw MalformedResponse(std::string("field empty: ") + key);
  return s;
}

}  // namespace

PredictionRecord parse_prediction(const std::string& raw, bool had_image, int iteration) {
  const nlohmann::json j = extract_first_object(raw);
  if (!j.contains("dimensions")) throw MalformedResponse("missing field: dimensions");

  PredictionRecord pred;
  pred.iteration = iteration;
  pred.dimensions = parse_dimensions(j["dimensions"]);
  pred.movement = required_string(j, "movement");
  pred.entity = required_string(j, "entity");
  pred.environment = required_string(j, "environment");
  if (!had_image) pred.environment = kNoVisual;
  return pred;
}

}  // namespace selfsense::agent
