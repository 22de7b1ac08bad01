#include "selfsense/sem/data.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "selfsense/errors.hpp"

namespace selfsense::sem {

std::vector<bool> default_binary_columns() {
  std::vector<bool> binary(kNumObserved, false);
  binary[4] = true;  // Memory
  binary[5] = true;  // Image
  return binary;
}

Eigen::MatrixXd zscore(const Eigen::MatrixXd& raw, const std::vector<bool>& binary) {
  Eigen::MatrixXd out = raw;
  const auto n = raw.rows();
  for (Eigen::Index c = 0; c < raw.cols(); ++c) {
    if (c < static_cast<Eigen::Index>(binary.size()) && binary[c]) continue;
    const double mean = raw.col(c).mean();
    const double var = (raw.col(c).array() - mean).square().sum() / n;  // population
    if (var <= 0.0) {
      const char* name = c < kNumObserved ? kColumnNames[c] : "column";
      throw ZeroVariance(std::string("zero variance in continuous column ") + name);
    }
    out.col(c) = (raw.col(c).array() - mean) / std::sqrt(var);
  }
  return out;
}

SemData SemData::from_raw(const Eigen::MatrixXd& raw) {
  return SemData{zscore(raw, default_binary_columns())};
}

Eigen::MatrixXd SemData::covariance() const {
  const auto n = values.rows();
  if (n < 2) throw Error("covariance needs at least two rows");
  const Eigen::MatrixXd centered = values.rowwise() - values.colwise().mean();
  return centered.transpose() * centered / static_cast<double>(n - 1);
}

SemData SemData::load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open CSV: " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw IoError("empty CSV: " + path.string());

  // Header must name all model columns; any order is accepted.
  std::vector<int> mapping;  // file column -> model column
  {
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) {
      int index = -1;
      for (int i = 0; i < kNumObserved; ++i) {
        if (cell == kColumnNames[i]) index = i;
      }
      if (index < 0) throw ConfigError("unknown SEM column: " + cell);
      mapping.push_back(index);
    }
    if (mapping.size() != kNumObserved) {
      throw ConfigError("SEM CSV must carry exactly the 10 model columns");
    }
  }

  std::vector<std::array<double, kNumObserved>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::array<double, kNumObserved> row{};
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col >= mapping.size()) throw IoError("too many cells in CSV row");
      row[mapping[col]] = std::stod(cell);
      ++col;
    }
    if (col != mapping.size()) throw IoError("short CSV row");
    rows.push_back(row);
  }

  Eigen::MatrixXd raw(static_cast<Eigen::Index>(rows.size()), kNumObserved);
  for (Eigen::Index r = 0; r < raw.rows(); ++r) {
    for (int c = 0; c < kNumObserved; ++c) raw(r, c) = rows[r][c];
  }
  return SemData::from_raw(raw);
}

void SemData::save_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write CSV: " + path.string());
  for (int c = 0; c < kNumObserved; ++c) {
    out << kColumnNames[c] << (c + 1 < kNumObserved ? ',' : '\n');
  }
  out.precision(12);
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (int c = 0; c < kNumObserved; ++c) {
      out << values(r, c) << (c + 1 < kNumObserved ? ',' : '\n');
    }
  }
}

}  // namespace selfsense::sem
