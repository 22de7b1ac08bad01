#pragma once

#include <Eigen/Core>
#include <array>
#include <filesystem>
#include <vector>

namespace selfsense::sem {

inline constexpr int kNumY = 4;
inline constexpr int kNumXi = 6;
inline constexpr int kNumEta = 5;
inline constexpr int kNumObserved = kNumY + kNumXi;

/// Observed column order: the four rubric indicators, then the exogenous
/// block (two binary presence flags and four z-scored kinematic scalars).
inline constexpr std::array<const char*, kNumObserved> kColumnNames = {
    "rubric_Dimensions", "rubric_Movement", "rubric_Image", "rubric_Individual",
    "Memory",            "Image",           "Position",     "Orientation",
    "Velocity",          "Acceleration"};

inline constexpr std::array<const char*, kNumEta> kEtaNames = {
    "PastPresentMemory", "DimensionAwareness", "MovementAwareness",
    "EnvironmentalAwareness", "SelfIdentification"};

inline constexpr std::array<const char*, kNumXi> kXiNames = {
    "Memory", "Image", "Position", "Orientation", "Velocity", "Acceleration"};

std::vector<bool> default_binary_columns();  // Memory and Image

/// Z-scores the continuous columns in place ((x - mean) / population sd);
/// binary columns pass through untouched. Throws ZeroVariance naming the
/// offending column.
Eigen::MatrixXd zscore(const Eigen::MatrixXd& raw, const std::vector<bool>& binary);

/// n x 10 design matrix for the model, continuous columns z-scored.
struct SemData {
  Eigen::MatrixXd values;

  static SemData from_raw(const Eigen::MatrixXd& raw);
  int n() const { return static_cast<int>(values.rows()); }

  /// Sample covariance with divisor n - 1.
  Eigen::MatrixXd covariance() const;

  static SemData load_csv(const std::filesystem::path& path);
  void save_csv(const std::filesystem::path& path) const;
};

}  // namespace selfsense::sem
