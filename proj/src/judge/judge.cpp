#include "selfsense/judge/judge.hpp"

#include <cctype>
#include <cstdio>
#include <nlohmann/json.hpp>

#include "selfsense/errors.hpp"

namespace selfsense::judge {

namespace {

std::string prediction_text(const agent::PredictionRecord& pred, Dimension d) {
  switch (d) {
    case Dimension::Entity: return pred.entity;
    case Dimension::Movement: return pred.movement;
    case Dimension::Environment: return pred.environment;
    case Dimension::Dimensions: {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "length %.3f m, height %.3f m, width %.3f m",
                    pred.dimensions.length, pred.dimensions.height, pred.dimensions.width);
      return buf;
    }
  }
  return {};
}

int parse_score_reply(const std::string& raw) {
  // Preferred form: a JSON object with an integer "score".
  const auto brace = raw.find('{');
  if (brace != std::string::npos) {
    nlohmann::json j = nlohmann::json::parse(raw.substr(brace), nullptr, false);
    if (!j.is_discarded() && j.is_object() && j.contains("score") &&
        j["score"].is_number_integer()) {
      const int s = j["score"].get<int>();
      if (s < 0 || s > 5) throw MalformedScore("score out of range: " + std::to_string(s));
      return s;
    }
  }
  // Fallback: first bare digit in the reply.
  for (char c : raw) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const int s = c - '0';
      if (s > 5) throw MalformedScore("score out of range: " + std::to_string(s));
      return s;
    }
  }
  throw MalformedScore("no score found in judge reply");
}

std::string parse_rationale(const std::string& raw) {
  const auto brace = raw.find('{');
  if (brace != std::string::npos) {
    nlohmann::json j = nlohmann::json::parse(raw.substr(brace), nullptr, false);
    if (!j.is_discarded() && j.is_object() && j.contains("rationale") &&
        j["rationale"].is_string()) {
      return j["rationale"].get<std::string>();
    }
  }
  return {};
}

}  // namespace

std::optional<int> JudgeScore::by_dimension(Dimension d) const {
  switch (d) {
    case Dimension::Entity: return entity;
    case Dimension::Dimensions: return dimensions;
    case Dimension::Movement: return movement;
    case Dimension::Environment: return environment;
  }
  return std::nullopt;
}

std::string build_judge_prompt(const agent::PredictionRecord& pred, const Rubric& rubric) {
  const GroundTruth& truth = rubric.truth;
  std::string out;
  out.reserve(2048);
  out += "You are a strict evaluator. Score one prediction made by an embodied agent "
         "about itself on the shared ordinal scale from 0 to 5.\n\n";
  out += "Dimension under evaluation: ";
  out += to_string(rubric.dimension);
  out += "\n\nGround truth context:\n";
  out += "- Platform: " + truth.platform + "\n";
  {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "- True dimensions: %.4f x %.4f x %.4f m (length x height x width)\n",
                  truth.dims.length, truth.dims.height, truth.dims.width);
    out += buf;
  }
  out += "- True locomotion: " + truth.locomotion + "\n";
  out += "- True scene: " + truth.scene + "\n";
  out += "\nRubric levels (mutually exclusive):\n";
  for (int level = 0; level < 6; ++level) {
    out += std::to_string(level) + ": " + rubric.levels[level] + "\n";
  }
  out += "\nPrediction to score:\n";
  out += prediction_text(pred, rubric.dimension);
  out += "\n\nRespond with exactly one JSON object: {\"score\": <integer 0-5>, "
         "\"rationale\": \"<one line>\"}\n";
  return out;
}

std::string MockJudgeClient::evaluate(const agent::PredictionRecord& pred,
                                      const Rubric& rubric, const std::string& prompt) {
  (void)prompt;
  const int s = mock_judge(pred, rubric);
  nlohmann::ordered_json j;
  j["score"] = s;
  j["rationale"] = std::string("rule-based match against level ") + std::to_string(s) +
                   " for " + to_string(rubric.dimension);
  return j.dump();
}

std::string BackendJudgeClient::evaluate(const agent::PredictionRecord& pred,
                                         const Rubric& rubric, const std::string& prompt) {
  (void)pred;
  (void)rubric;
  agent::BackendRequest request;
  request.prompt = prompt;
  return backend_.complete(request);
}

JudgeScore score(const agent::PredictionRecord& pred, const RubricSet& rubrics,
                 JudgeClient& client) {
  JudgeScore result;
  result.iteration = pred.iteration;

  for (Dimension d : kAllDimensions) {
    const Rubric& rubric = rubrics.for_dimension(d);
    const std::string prompt = build_judge_prompt(pred, rubric);

    std::optional<int> value;
    std::string rationale;
    for (int attempt = 0; attempt < 2 && !value; ++attempt) {
      try {
        const std::string raw = client.evaluate(pred, rubric, prompt);
        value = parse_score_reply(raw);
        rationale = parse_rationale(raw);
      } catch (const MalformedScore&) {
        // re-ask once, then record the score as missing
      }
    }
    if (value) result.rationales[to_string(d)] = rationale;

    switch (d) {
      case Dimension::Entity: result.entity = value; break;
      case Dimension::Dimensions: result.dimensions = value; break;
      case Dimension::Movement: result.movement = value; break;
      case Dimension::Environment: result.environment = value; break;
    }
  }
  return result;
}

}  // namespace selfsense::judge
