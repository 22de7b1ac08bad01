#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "selfsense/agent/backend.hpp"
#include "selfsense/judge/rubric.hpp"

namespace selfsense::judge {

/// Four ordinal 0-5 rubric scores for one iteration. A dimension is nullopt
/// when the judge failed twice to produce a valid integer; such scores are
/// excluded from aggregates and counted by the coverage metric.
struct JudgeScore {
  int iteration = 0;
  std::optional<int> entity;
  std::optional<int> dimensions;
  std::optional<int> movement;
  std::optional<int> environment;
  std::map<std::string, std::string> rationales;

  std::optional<int> by_dimension(Dimension d) const;
};

std::string build_judge_prompt(const agent::PredictionRecord& pred, const Rubric& rubric);

/// Deterministic rule-based scorer: banded mean relative error for
/// dimensions, ordered keyword-class tables for the text dimensions.
int mock_judge(const agent::PredictionRecord& pred, const Rubric& rubric);

class JudgeClient {
 public:
  virtual ~JudgeClient() = default;
  /// Returns the judge's raw reply for a single dimension.
  virtual std::string evaluate(const agent::PredictionRecord& pred, const Rubric& rubric,
                               const std::string& prompt) = 0;
};

/// Wraps mock_judge and replies with a {"score": n, "rationale": ...} JSON.
class MockJudgeClient final : public JudgeClient {
 public:
  std::string evaluate(const agent::PredictionRecord& pred, const Rubric& rubric,
                       const std::string& prompt) override;
};

/// Sends judge prompts through a text backend (live use).
class BackendJudgeClient final : public JudgeClient {
 public:
  explicit BackendJudgeClient(agent::TextBackend& backend) : backend_(backend) {}
  std::string evaluate(const agent::PredictionRecord& pred, const Rubric& rubric,
                       const std::string& prompt) override;

 private:
  agent::TextBackend& backend_;
};

/// One judge call per dimension (four per iteration); a malformed reply is
/// re-asked once and then recorded as missing.
JudgeScore score(const agent::PredictionRecord& pred, const RubricSet& rubrics,
                 JudgeClient& client);

}  // namespace selfsense::judge
