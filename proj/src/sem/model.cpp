#include "selfsense/sem/model.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "selfsense/errors.hpp"

namespace selfsense::sem {

SemModel::SemModel(int num_y, int num_eta, int num_xi) {
  lambda_fixed = Eigen::MatrixXd::Zero(num_y, num_eta);
  b_fixed = Eigen::MatrixXd::Zero(num_eta, num_eta);
  gamma_fixed = Eigen::MatrixXd::Zero(num_eta, num_xi);
  phi_fixed = Eigen::MatrixXd::Zero(num_xi, num_xi);
  psi_fixed = Eigen::MatrixXd::Zero(num_eta, num_eta);
  theta_fixed = Eigen::MatrixXd::Zero(num_y, num_y);
  lambda_index = Eigen::MatrixXi::Constant(num_y, num_eta, -1);
  b_index = Eigen::MatrixXi::Constant(num_eta, num_eta, -1);
  gamma_index = Eigen::MatrixXi::Constant(num_eta, num_xi, -1);
  phi_index = Eigen::MatrixXi::Constant(num_xi, num_xi, -1);
  psi_index = Eigen::MatrixXi::Constant(num_eta, num_eta, -1);
  theta_index = Eigen::MatrixXi::Constant(num_y, num_y, -1);
}

int SemModel::add_free(Block block, int row, int col, const std::string& name) {
  const int index = free_count();
  switch (block) {
    case Block::LambdaY: lambda_index(row, col) = index; break;
    case Block::B: b_index(row, col) = index; break;
    case Block::Gamma: gamma_index(row, col) = index; break;
    case Block::Phi:
      phi_index(row, col) = index;
      phi_index(col, row) = index;
      break;
    case Block::Psi: psi_index(row, col) = index; break;
    case Block::ThetaEps: theta_index(row, col) = index; break;
  }
  params_.push_back({block, row, col, name});
  return index;
}

SemModel::Matrices SemModel::materialize(const Eigen::VectorXd& theta) const {
  auto fill = [&](const Eigen::MatrixXd& fixed, const Eigen::MatrixXi& index) {
    Eigen::MatrixXd out = fixed;
    for (Eigen::Index i = 0; i < index.rows(); ++i) {
      for (Eigen::Index j = 0; j < index.cols(); ++j) {
        if (index(i, j) >= 0) out(i, j) = theta[index(i, j)];
      }
    }
    return out;
  };
  return {fill(lambda_fixed, lambda_index), fill(b_fixed, b_index),
          fill(gamma_fixed, gamma_index), fill(phi_fixed, phi_index),
          fill(psi_fixed, psi_index), fill(theta_fixed, theta_index)};
}

Eigen::VectorXd SemModel::default_start(const Eigen::MatrixXd& sample_cov) const {
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(free_count());
  for (int k = 0; k < free_count(); ++k) {
    const ParamRef& p = params_[k];
    switch (p.block) {
      case Block::Phi:
        theta[k] = sample_cov(num_y() + p.row, num_y() + p.col);
        break;
      case Block::Psi: {
        // Latents anchored to an indicator inherit its variance scale.
        int indicator = -1;
        for (int i = 0; i < num_y(); ++i) {
          if (lambda_fixed(i, p.row) != 0.0 || lambda_index(i, p.row) >= 0) indicator = i;
        }
        theta[k] = 0.5 * (indicator >= 0 ? sample_cov(indicator, indicator) : 1.0);
        break;
      }
      case Block::ThetaEps:
        theta[k] = 0.1;
        break;
      case Block::LambdaY:
        theta[k] = 1.0;
        break;
      case Block::B:
      case Block::Gamma:
        theta[k] = 0.0;
        break;
    }
  }
  return theta;
}

SemModel SemModel::paper_model() {
  SemModel m;
  constexpr int PPM = 0, DA = 1, MA = 2, EA = 3, SI = 4;

  // Single rubric indicator per awareness/identification latent: unit
  // loading, zero measurement error (latent == indicator).
  m.lambda_fixed(0, DA) = 1.0;   // rubric_Dimensions
  m.lambda_fixed(1, MA) = 1.0;   // rubric_Movement
  m.lambda_fixed(2, EA) = 1.0;   // rubric_Image
  m.lambda_fixed(3, SI) = 1.0;   // rubric_Individual

  auto path = [&](const char* from, const char* to) {
    return std::string(from) + " -> " + to;
  };

  // Structural paths among latents. Memory's outgoing path to
  // self-identification is fixed at 1: the latent has no indicator of its
  // own, so this pins its scale.
  m.b_fixed(SI, PPM) = 1.0;
  m.add_free(Block::B, DA, PPM, path(kEtaNames[PPM], kEtaNames[DA]));
  m.add_free(Block::B, MA, PPM, path(kEtaNames[PPM], kEtaNames[MA]));
  m.add_free(Block::B, MA, EA, path(kEtaNames[EA], kEtaNames[MA]));
  m.add_free(Block::B, MA, SI, path(kEtaNames[SI], kEtaNames[MA]));
  m.add_free(Block::B, SI, DA, path(kEtaNames[DA], kEtaNames[SI]));
  // MovementAwareness -> SelfIdentification is deliberately absent.

  // Exogenous paths: all six inputs feed PastPresentMemory; visual input
  // feeds EnvironmentalAwareness.
  for (int j = 0; j < kNumXi; ++j) {
    m.add_free(Block::Gamma, PPM, j, path(kXiNames[j], kEtaNames[PPM]));
  }
  m.add_free(Block::Gamma, EA, 1, path(kXiNames[1], kEtaNames[EA]));

  // Free exogenous covariance (lower triangle) and diagonal disturbances.
  for (int i = 0; i < kNumXi; ++i) {
    for (int j = 0; j <= i; ++j) {
      const std::string name =
          i == j ? "var(" + std::string(kXiNames[i]) + ")"
                 : "cov(" + std::string(kXiNames[i]) + "," + kXiNames[j] + ")";
      m.add_free(Block::Phi, i, j, name);
    }
  }
  for (int i = 0; i < kNumEta; ++i) {
    m.add_free(Block::Psi, i, i, "var(zeta_" + std::string(kEtaNames[i]) + ")");
  }
  return m;
}

Eigen::MatrixXd implied_covariance(const SemModel& model, const Eigen::VectorXd& theta) {
  const auto mats = model.materialize(theta);
  const int ny = model.num_y(), neta = model.num_eta(), nxi = model.num_xi();
  const Eigen::MatrixXd i_minus_b = Eigen::MatrixXd::Identity(neta, neta) - mats.b;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(i_minus_b);
  if (!lu.isInvertible()) {
    throw SingularStructure("I - B is singular for this parameter vector");
  }
  const Eigen::MatrixXd a = lu.inverse();

  const Eigen::MatrixXd c_eta =
      a * (mats.gamma * mats.phi * mats.gamma.transpose() + mats.psi) * a.transpose();
  const Eigen::MatrixXd sigma_yy =
      mats.lambda * c_eta * mats.lambda.transpose() + mats.theta;
  const Eigen::MatrixXd sigma_yxi = mats.lambda * a * mats.gamma * mats.phi;

  Eigen::MatrixXd sigma(ny + nxi, ny + nxi);
  sigma.topLeftCorner(ny, ny) = sigma_yy;
  sigma.topRightCorner(ny, nxi) = sigma_yxi;
  sigma.bottomLeftCorner(nxi, ny) = sigma_yxi.transpose();
  sigma.bottomRightCorner(nxi, nxi) = mats.phi;
  return 0.5 * (sigma + sigma.transpose());
}

Eigen::MatrixXd simulate(const SemModel& model, const Eigen::VectorXd& theta, int n,
                         RandomStream& rng) {
  const auto mats = model.materialize(theta);
  const int ny = model.num_y(), neta = model.num_eta(), nxi = model.num_xi();
  const Eigen::MatrixXd i_minus_b = Eigen::MatrixXd::Identity(neta, neta) - mats.b;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(i_minus_b);
  if (!lu.isInvertible()) {
    throw SingularStructure("I - B is singular for this parameter vector");
  }
  const Eigen::MatrixXd a = lu.inverse();

  Eigen::LLT<Eigen::MatrixXd> phi_llt(mats.phi);
  if (phi_llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("Phi is not positive definite");
  }
  const Eigen::MatrixXd phi_chol = phi_llt.matrixL();
  const Eigen::VectorXd psi_sd = mats.psi.diagonal().cwiseMax(0.0).cwiseSqrt();
  const Eigen::VectorXd theta_sd = mats.theta.diagonal().cwiseMax(0.0).cwiseSqrt();

  Eigen::MatrixXd rows(n, ny + nxi);
  Eigen::VectorXd z_xi(nxi), zeta(neta), eps(ny);
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i < nxi; ++i) z_xi[i] = rng.normal();
    for (int i = 0; i < neta; ++i) zeta[i] = psi_sd[i] * rng.normal();
    for (int i = 0; i < ny; ++i) eps[i] = theta_sd[i] * rng.normal();

    const Eigen::VectorXd xi = phi_chol * z_xi;
    const Eigen::VectorXd eta = a * (mats.gamma * xi + zeta);
    const Eigen::VectorXd y = mats.lambda * eta + eps;
    rows.row(r).head(ny) = y.transpose();
    rows.row(r).tail(nxi) = xi.transpose();
  }
  return rows;
}

}  // namespace selfsense::sem
