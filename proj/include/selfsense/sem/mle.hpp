#pragma once

#include <optional>

#include "selfsense/sem/model.hpp"

namespace selfsense::sem {

/// Classical ML discrepancy F = ln|Sigma| + tr(S Sigma^-1) - ln|S| - p.
/// Nonnegative, zero iff Sigma == S. Throws NotPositiveDefinite.
double ml_discrepancy(const Eigen::MatrixXd& sample, const Eigen::MatrixXd& implied);

struct FitOptions {
  int max_iterations = 500;
  double gradient_tol = 1e-6;   // max-norm of the numeric gradient of n'F
  double f_rel_tol = 1e-10;     // relative change of the objective
  double fd_step = 1e-6;        // relative central-difference step
  int multistarts = 5;          // 1 plain start + seeded jitters
  std::uint64_t seed = 0;
  int bootstrap = 0;            // optional bootstrap SEs (row resampling)
};

struct PathEstimate {
  ParamRef ref;
  bool fixed = false;
  double estimate = 0.0;
  double standardized = 0.0;
  std::optional<double> se;
  std::optional<double> z;
  std::optional<double> p_value;
};

struct FitResult {
  Eigen::VectorXd theta;
  Eigen::MatrixXd implied;
  double discrepancy = 0.0;  // F at the optimum
  double chi2 = 0.0;         // (n-1) * F
  int df = 0;
  double chi2_baseline = 0.0;
  int df_baseline = 0;
  double cfi = 0.0;
  double tli = 0.0;
  double rmsea = 0.0;
  int n = 0;
  bool converged = false;
  int iterations = 0;
  double gradient_norm = 0.0;
  bool se_available = false;  // false when the numeric Hessian is not PD
  std::vector<PathEstimate> paths;
};

/// Quasi-Newton (BFGS) minimization of (n-1) * F with central-difference
/// gradients and seeded multistarts. Standard errors come from the inverse
/// numeric Hessian under the normal-theory scaling cov = 2 H^-1 with H the
/// Hessian of (n-1) F; Wald z and two-sided p-values follow.
FitResult fit(const SemModel& model, const SemData& data, const FitOptions& options = {});

/// Independence baseline: diagonal Sigma with free variances. The ML optimum
/// is analytic, chi2_B = -(n-1) ln|R|, df_B = p(p-1)/2.
std::pair<double, int> baseline_model(const SemData& data);

struct FitIndices {
  double cfi = 0.0;
  double tli = 0.0;  // clamped to [0, 1] for reporting
  double rmsea = 0.0;
};

/// Throws ZeroDf when either df is zero.
FitIndices fit_indices(double chi2_m, int df_m, double chi2_b, int df_b, int n);

/// Standardized solution: every matrix rescaled by the implied latent and
/// observed standard deviations. The implied covariance of the standardized
/// solution is a correlation matrix.
struct StandardizedSolution {
  Eigen::MatrixXd lambda, b, gamma, phi, psi, theta;
  Eigen::VectorXd eta_sd, xi_sd, y_sd;
};

StandardizedSolution standardize(const SemModel& model, const Eigen::VectorXd& theta);

/// Standardized value of one parameter/path under the fitted solution.
double standardized_value(const StandardizedSolution& sol, const ParamRef& ref);

}  // namespace selfsense::sem
