#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "selfsense/rng.hpp"
#include "selfsense/sem/data.hpp"

namespace selfsense::sem {

/// Which pattern matrix a parameter lives in.
enum class Block { LambdaY, B, Gamma, Phi, Psi, ThetaEps };

struct ParamRef {
  Block block;
  int row = 0;
  int col = 0;
  std::string name;  // "from -> to" for paths, "var(x)" / "cov(x,y)" otherwise
};

/// Covariance-structure model over (Y, xi) in LISREL form:
///   Y = Lambda_y eta + eps,   eta = B eta + Gamma xi + zeta.
/// Each matrix entry is either fixed at a value or tied to one free
/// parameter. Phi is symmetric (lower triangle parameterized) and Psi /
/// ThetaEps are diagonal.
class SemModel {
 public:
  Eigen::MatrixXd lambda_fixed;
  Eigen::MatrixXi lambda_index;  // -1 fixed, else theta index
  Eigen::MatrixXd b_fixed;
  Eigen::MatrixXi b_index;
  Eigen::MatrixXd gamma_fixed;
  Eigen::MatrixXi gamma_index;
  Eigen::MatrixXd phi_fixed;
  Eigen::MatrixXi phi_index;
  Eigen::MatrixXd psi_fixed;
  Eigen::MatrixXi psi_index;
  Eigen::MatrixXd theta_fixed;
  Eigen::MatrixXi theta_index;

  SemModel(int num_y = kNumY, int num_eta = kNumEta, int num_xi = kNumXi);

  int num_y() const { return static_cast<int>(lambda_fixed.rows()); }
  int num_eta() const { return static_cast<int>(lambda_fixed.cols()); }
  int num_xi() const { return static_cast<int>(gamma_fixed.cols()); }
  int num_observed() const { return num_y() + num_xi(); }

  int free_count() const { return static_cast<int>(params_.size()); }
  const std::vector<ParamRef>& params() const { return params_; }
  /// p(p+1)/2 distinct sample moments minus free parameters.
  int dof() const { return num_observed() * (num_observed() + 1) / 2 - free_count(); }

  int add_free(Block block, int row, int col, const std::string& name);

  struct Matrices {
    Eigen::MatrixXd lambda, b, gamma, phi, psi, theta;
  };
  Matrices materialize(const Eigen::VectorXd& theta) const;

  /// Feasible starting point: Phi from the sample moments of xi, indicator
  /// variances on Psi, zero structural paths.
  Eigen::VectorXd default_start(const Eigen::MatrixXd& sample_cov) const;

  /// The model as drawn in the path diagram: every xi feeds
  /// PastPresentMemory; visual input feeds EnvironmentalAwareness; memory
  /// drives the three awareness latents and self-identification (that path
  /// fixed at 1 to set the latent's scale); environmental awareness and
  /// self-identification drive movement awareness; dimension awareness
  /// drives self-identification. Each awareness/identification latent is
  /// anchored to its rubric indicator with a unit loading and zero
  /// measurement error. Phi is free, Psi diagonal free.
  static SemModel paper_model();

 private:
  std::vector<ParamRef> params_;
};

/// Model-implied covariance of (Y, xi). Throws SingularStructure when I - B
/// is not invertible.
Eigen::MatrixXd implied_covariance(const SemModel& model, const Eigen::VectorXd& theta);

/// Draws n rows of (Y, xi) directly from the structural equations.
Eigen::MatrixXd simulate(const SemModel& model, const Eigen::VectorXd& theta, int n,
                         RandomStream& rng);

}  // namespace selfsense::sem
