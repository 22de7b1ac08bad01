#include "selfsense/sem/mle.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <cmath>

#include "selfsense/errors.hpp"

namespace selfsense::sem {

namespace {

constexpr double kInfeasible = 1e100;

double log_det_from_llt(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

double normal_two_sided_p(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

class Objective {
 public:
  Objective(const SemModel& model, Eigen::MatrixXd sample, double n_prime)
      : model_(model), sample_(std::move(sample)), n_prime_(n_prime) {}

  double operator()(const Eigen::VectorXd& theta) const {
    try {
      return n_prime_ * ml_discrepancy(sample_, implied_covariance(model_, theta));
    } catch (const Error&) {
      return kInfeasible;
    }
  }

 private:
  const SemModel& model_;
  Eigen::MatrixXd sample_;
  double n_prime_;
};

Eigen::VectorXd numeric_gradient(const Objective& f, const Eigen::VectorXd& theta,
                                 double rel_step) {
  Eigen::VectorXd g(theta.size());
  Eigen::VectorXd probe = theta;
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    const double h = rel_step * std::max(1.0, std::abs(theta[j]));
    probe[j] = theta[j] + h;
    const double fp = f(probe);
    probe[j] = theta[j] - h;
    const double fm = f(probe);
    probe[j] = theta[j];
    g[j] = (fp - fm) / (2.0 * h);
  }
  return g;
}

Eigen::MatrixXd numeric_hessian(const Objective& f, const Eigen::VectorXd& theta) {
  const Eigen::Index m = theta.size();
  Eigen::MatrixXd h_mat(m, m);
  const double f0 = f(theta);
  Eigen::VectorXd probe = theta;

  std::vector<double> steps(m);
  for (Eigen::Index i = 0; i < m; ++i) steps[i] = 1e-4 * std::max(1.0, std::abs(theta[i]));

  for (Eigen::Index i = 0; i < m; ++i) {
    probe[i] = theta[i] + steps[i];
    const double fp = f(probe);
    probe[i] = theta[i] - steps[i];
    const double fm = f(probe);
    probe[i] = theta[i];
    h_mat(i, i) = (fp - 2.0 * f0 + fm) / (steps[i] * steps[i]);
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      probe[i] = theta[i] + steps[i];
      probe[j] = theta[j] + steps[j];
      const double fpp = f(probe);
      probe[j] = theta[j] - steps[j];
      const double fpm = f(probe);
      probe[i] = theta[i] - steps[i];
      const double fmm = f(probe);
      probe[j] = theta[j] + steps[j];
      const double fmp = f(probe);
      probe[i] = theta[i];
      probe[j] = theta[j];
      const double v = (fpp - fpm - fmp + fmm) / (4.0 * steps[i] * steps[j]);
      h_mat(i, j) = v;
      h_mat(j, i) = v;
    }
  }
  return h_mat;
}

struct BfgsOutcome {
  Eigen::VectorXd theta;
  double f = kInfeasible;
  bool converged = false;
  int iterations = 0;
  double gradient_norm = 0.0;
};

BfgsOutcome bfgs_minimize(const Objective& f, Eigen::VectorXd theta,
                          const FitOptions& options) {
  BfgsOutcome out;
  double f_cur = f(theta);
  if (f_cur >= kInfeasible * 0.5) {
    out.theta = theta;
    return out;  // infeasible start
  }

  const Eigen::Index m = theta.size();
  Eigen::VectorXd g = numeric_gradient(f, theta, options.fd_step);
  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(m, m);

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    out.iterations = iter;

    Eigen::VectorXd direction = -h_inv * g;
    double slope = g.dot(direction);
    if (!(slope < 0.0)) {  // lost positive-definiteness; restart on the gradient
      h_inv.setIdentity();
      direction = -g;
      slope = -g.squaredNorm();
    }

    double alpha = 1.0;
    double f_next = kInfeasible;
    Eigen::VectorXd theta_next;
    while (alpha > 1e-14) {
      theta_next = theta + alpha * direction;
      f_next = f(theta_next);
      if (f_next <= f_cur + 1e-4 * alpha * slope) break;
      alpha *= 0.5;
    }
    if (alpha <= 1e-14) {  // no descent step found
      out.converged = g.cwiseAbs().maxCoeff() < options.gradient_tol * 10.0;
      break;
    }

    const Eigen::VectorXd g_next = numeric_gradient(f, theta_next, options.fd_step);
    const Eigen::VectorXd s = theta_next - theta;
    const Eigen::VectorXd y = g_next - g;
    const double sy = s.dot(y);
    if (sy > 1e-10 * s.norm() * y.norm()) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(m, m);
      h_inv = (identity - rho * s * y.transpose()) * h_inv *
                  (identity - rho * y * s.transpose()) +
              rho * s * s.transpose();
    }

    const double f_prev = f_cur;
    theta = theta_next;
    f_cur = f_next;
    g = g_next;

    if (g.cwiseAbs().maxCoeff() < options.gradient_tol) {
      out.converged = true;
      break;
    }
    if (std::abs(f_prev - f_cur) < options.f_rel_tol * std::max(1.0, std::abs(f_cur))) {
      out.converged = true;
      break;
    }
  }

  out.theta = theta;
  out.f = f_cur;
  out.gradient_norm = g.cwiseAbs().maxCoeff();
  return out;
}

std::vector<PathEstimate> collect_paths(const SemModel& model, const Eigen::VectorXd& theta,
                                        const StandardizedSolution& sol) {
  std::vector<PathEstimate> paths;
  const auto mats = model.materialize(theta);

  for (int k = 0; k < model.free_count(); ++k) {
    PathEstimate p;
    p.ref = model.params()[k];
    p.fixed = false;
    p.estimate = theta[k];
    p.standardized = standardized_value(sol, p.ref);
    paths.push_back(std::move(p));
  }

  // Fixed nonzero entries are part of the drawn diagram; report them too.
  const bool paper_sized = model.num_y() == kNumY && model.num_eta() == kNumEta;
  auto eta_name = [&](int j) {
    return paper_sized ? std::string(kEtaNames[j]) : "eta" + std::to_string(j);
  };
  auto y_name = [&](int i) {
    return paper_sized ? std::string(kColumnNames[i]) : "y" + std::to_string(i);
  };
  auto add_fixed = [&](Block block, int i, int j, double value, std::string name) {
    PathEstimate p;
    p.ref = ParamRef{block, i, j, std::move(name)};
    p.fixed = true;
    p.estimate = value;
    p.standardized = standardized_value(sol, p.ref);
    paths.push_back(std::move(p));
  };
  for (int i = 0; i < model.num_eta(); ++i) {
    for (int j = 0; j < model.num_eta(); ++j) {
      if (model.b_index(i, j) < 0 && model.b_fixed(i, j) != 0.0) {
        add_fixed(Block::B, i, j, mats.b(i, j), eta_name(j) + " -> " + eta_name(i));
      }
    }
  }
  for (int i = 0; i < model.num_y(); ++i) {
    for (int j = 0; j < model.num_eta(); ++j) {
      if (model.lambda_index(i, j) < 0 && model.lambda_fixed(i, j) != 0.0) {
        add_fixed(Block::LambdaY, i, j, mats.lambda(i, j),
                  eta_name(j) + " -> " + y_name(i));
      }
    }
  }
  return paths;
}

}  // namespace

double ml_discrepancy(const Eigen::MatrixXd& sample, const Eigen::MatrixXd& implied) {
  const Eigen::Index p = sample.rows();
  if (sample.cols() != p || implied.rows() != p || implied.cols() != p) {
    throw Error("ml_discrepancy: dimension mismatch");
  }
  Eigen::LLT<Eigen::MatrixXd> llt_implied(implied);
  if (llt_implied.info() != Eigen::Success) {
    throw NotPositiveDefinite("implied covariance is not positive definite");
  }
  Eigen::LLT<Eigen::MatrixXd> llt_sample(sample);
  if (llt_sample.info() != Eigen::Success) {
    throw NotPositiveDefinite("sample covariance is not positive definite");
  }
  const double log_det_implied = log_det_from_llt(llt_implied);
  const double log_det_sample = log_det_from_llt(llt_sample);
  const double trace_term = llt_implied.solve(sample).trace();
  double f = log_det_implied + trace_term - log_det_sample - static_cast<double>(p);
  if (f < 0.0 && f > -1e-10) f = 0.0;  // numerical noise at the optimum
  return f;
}

FitResult fit(const SemModel& model, const SemData& data, const FitOptions& options) {
  const int n = data.n();
  if (n <= model.free_count()) {
    throw Error("fit: need more rows than free parameters");
  }
  if (model.dof() < 0) throw Error("fit: more free parameters than sample moments");

  const Eigen::MatrixXd sample = data.covariance();
  const double n_prime = static_cast<double>(n - 1);
  const Objective objective(model, sample, n_prime);

  const Eigen::VectorXd base_start = model.default_start(sample);
  RandomStream rng(derive_seed(options.seed, "sem-multistart"));

  BfgsOutcome best;
  for (int start = 0; start < std::max(1, options.multistarts); ++start) {
    Eigen::VectorXd theta0 = base_start;
    if (start > 0) {
      for (int k = 0; k < model.free_count(); ++k) {
        const Block block = model.params()[k].block;
        if (block == Block::B || block == Block::Gamma) {
          theta0[k] += 0.15 * rng.normal();
        } else if (block == Block::Psi || block == Block::ThetaEps) {
          theta0[k] = std::max(1e-3, theta0[k] * std::exp(0.2 * rng.normal()));
        }
      }
    }
    const BfgsOutcome outcome = bfgs_minimize(objective, theta0, options);
    if (outcome.f < best.f) best = outcome;
  }
  if (best.f >= kInfeasible * 0.5) {
    throw NotPositiveDefinite("no feasible starting point for the optimizer");
  }

  FitResult result;
  result.theta = best.theta;
  result.implied = implied_covariance(model, best.theta);
  result.chi2 = std::max(0.0, best.f);
  result.discrepancy = result.chi2 / n_prime;
  result.df = model.dof();
  result.n = n;
  result.converged = best.converged;
  result.iterations = best.iterations;
  result.gradient_norm = best.gradient_norm;

  const auto [chi2_b, df_b] = baseline_model(data);
  result.chi2_baseline = chi2_b;
  result.df_baseline = df_b;
  if (result.df > 0 && df_b > 0) {
    const FitIndices indices = fit_indices(result.chi2, result.df, chi2_b, df_b, n);
    result.cfi = indices.cfi;
    result.tli = indices.tli;
    result.rmsea = indices.rmsea;
  } else {  // saturated model: perfect fit by construction
    result.cfi = 1.0;
    result.tli = 1.0;
    result.rmsea = 0.0;
  }

  const StandardizedSolution sol = standardize(model, best.theta);
  result.paths = collect_paths(model, best.theta, sol);

  // Standard errors. Normal theory: -2 lnL = n'F + const, so the observed
  // information is half the Hessian of n'F and cov(theta) = 2 H^-1.
  Eigen::VectorXd se = Eigen::VectorXd::Constant(model.free_count(), -1.0);
  if (options.bootstrap > 0) {
    RandomStream boot_rng(derive_seed(options.seed, "sem-bootstrap"));
    Eigen::MatrixXd estimates(options.bootstrap, model.free_count());
    FitOptions inner = options;
    inner.bootstrap = 0;
    inner.multistarts = 1;
    for (int b = 0; b < options.bootstrap; ++b) {
      Eigen::MatrixXd resampled(data.values.rows(), data.values.cols());
      for (Eigen::Index r = 0; r < resampled.rows(); ++r) {
        resampled.row(r) =
            data.values.row(boot_rng.uniform_int(0, resampled.rows() - 1));
      }
      const BfgsOutcome outcome =
          bfgs_minimize(Objective(model, SemData{resampled}.covariance(), n_prime),
                        best.theta, inner);
      estimates.row(b) = outcome.theta.transpose();
    }
    for (int k = 0; k < model.free_count(); ++k) {
      const double mean = estimates.col(k).mean();
      const double var =
          (estimates.col(k).array() - mean).square().sum() / (options.bootstrap - 1);
      se[k] = std::sqrt(var);
    }
    result.se_available = true;
  } else {
    const Eigen::MatrixXd hessian = numeric_hessian(objective, best.theta);
    Eigen::LLT<Eigen::MatrixXd> llt(hessian);
    if (llt.info() == Eigen::Success) {
      const Eigen::MatrixXd cov =
          2.0 * llt.solve(Eigen::MatrixXd::Identity(hessian.rows(), hessian.cols()));
      for (int k = 0; k < model.free_count(); ++k) {
        if (cov(k, k) > 0.0) se[k] = std::sqrt(cov(k, k));
      }
      result.se_available = true;
    } else {
      result.se_available = false;  // estimates still returned
    }
  }

  if (result.se_available) {
    for (int k = 0; k < model.free_count(); ++k) {
      if (se[k] <= 0.0) continue;
      result.paths[k].se = se[k];
      result.paths[k].z = result.paths[k].estimate / se[k];
      result.paths[k].p_value = normal_two_sided_p(*result.paths[k].z);
    }
  }
  return result;
}

std::pair<double, int> baseline_model(const SemData& data) {
  const Eigen::MatrixXd sample = data.covariance();
  const Eigen::Index p = sample.rows();
  Eigen::LLT<Eigen::MatrixXd> llt(sample);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("sample covariance is not positive definite");
  }
  const double log_det_sample = log_det_from_llt(llt);
  const double log_det_diag = sample.diagonal().array().log().sum();
  const double f_baseline = log_det_diag - log_det_sample;  // = -ln|R|
  const double chi2 = std::max(0.0, (data.n() - 1) * f_baseline);
  const int df = static_cast<int>(p * (p - 1) / 2);
  return {chi2, df};
}

FitIndices fit_indices(double chi2_m, int df_m, double chi2_b, int df_b, int n) {
  if (df_m <= 0 || df_b <= 0) throw ZeroDf("fit indices need positive degrees of freedom");

  FitIndices out;
  const double excess_m = chi2_m - df_m;
  const double excess_b = chi2_b - df_b;
  const double numerator = std::max(excess_m, 0.0);
  const double denominator = std::max(std::max(excess_b, excess_m), 0.0);
  out.cfi = denominator == 0.0 ? 1.0 : 1.0 - numerator / denominator;

  const double ratio_b = chi2_b / df_b;
  const double ratio_m = chi2_m / df_m;
  if (std::abs(ratio_b - 1.0) < 1e-12) {
    out.tli = ratio_m <= 1.0 ? 1.0 : 0.0;
  } else {
    out.tli = std::clamp((ratio_b - ratio_m) / (ratio_b - 1.0), 0.0, 1.0);
  }

  out.rmsea = std::sqrt(std::max(chi2_m - df_m, 0.0) /
                        (static_cast<double>(df_m) * (n - 1)));
  return out;
}

StandardizedSolution standardize(const SemModel& model, const Eigen::VectorXd& theta) {
  const auto mats = model.materialize(theta);
  const Eigen::MatrixXd i_minus_b =
      Eigen::MatrixXd::Identity(model.num_eta(), model.num_eta()) - mats.b;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(i_minus_b);
  if (!lu.isInvertible()) throw SingularStructure("I - B is singular");
  const Eigen::MatrixXd a = lu.inverse();

  const Eigen::MatrixXd c_eta =
      a * (mats.gamma * mats.phi * mats.gamma.transpose() + mats.psi) * a.transpose();
  const Eigen::MatrixXd sigma_yy =
      mats.lambda * c_eta * mats.lambda.transpose() + mats.theta;

  StandardizedSolution sol;
  sol.eta_sd = c_eta.diagonal().cwiseMax(0.0).cwiseSqrt();
  sol.xi_sd = mats.phi.diagonal().cwiseMax(0.0).cwiseSqrt();
  sol.y_sd = sigma_yy.diagonal().cwiseMax(0.0).cwiseSqrt();

  const auto inv = [](const Eigen::VectorXd& v) {
    return v.unaryExpr([](double x) { return x > 0.0 ? 1.0 / x : 0.0; });
  };
  const Eigen::VectorXd eta_inv = inv(sol.eta_sd);
  const Eigen::VectorXd xi_inv = inv(sol.xi_sd);
  const Eigen::VectorXd y_inv = inv(sol.y_sd);

  sol.lambda = y_inv.asDiagonal() * mats.lambda * sol.eta_sd.asDiagonal();
  sol.b = eta_inv.asDiagonal() * mats.b * sol.eta_sd.asDiagonal();
  sol.gamma = eta_inv.asDiagonal() * mats.gamma * sol.xi_sd.asDiagonal();
  sol.phi = xi_inv.asDiagonal() * mats.phi * xi_inv.asDiagonal();
  sol.psi = eta_inv.asDiagonal() * mats.psi * eta_inv.asDiagonal();
  sol.theta = y_inv.asDiagonal() * mats.theta * y_inv.asDiagonal();
  return sol;
}

double standardized_value(const StandardizedSolution& sol, const ParamRef& ref) {
  switch (ref.block) {
    case Block::LambdaY: return sol.lambda(ref.row, ref.col);
    case Block::B: return sol.b(ref.row, ref.col);
    case Block::Gamma: return sol.gamma(ref.row, ref.col);
    case Block::Phi: return sol.phi(ref.row, ref.col);
    case Block::Psi: return sol.psi(ref.row, ref.col);
    case Block::ThetaEps: return sol.theta(ref.row, ref.col);
  }
  return 0.0;
}

}  // namespace selfsense::sem
