#pragma once

#include <utility>

#include <Eigen/Core>

#include "convfy/inf_conv.hpp"
#include "convfy/negentropy.hpp"
#include "convfy/target_loss.hpp"

namespace convfy {

// The convolutional Fenchel-Young loss
//
//   L(theta, y) = min_{pi in simplex(N)} Omega*(theta + L pi)
//                 + Omega_T(rho(y)) - <theta, rho(y)>,
//
// where Omega_T = Omega + T is the base negentropy shifted by the negated
// transformed Bayes risk of the target loss. Construction checks that the
// base negentropy is compatible with the encoding (Shannon requires one-hot)
// and precomputes Omega_T(rho(y)) for every label. Immutable afterwards;
// all member calls are pure.
class ConvFYLoss {
 public:
  ConvFYLoss(DecomposedTargetLoss loss, Negentropy omega,
             double solver_tol = 1e-9);

  const DecomposedTargetLoss& target() const { return loss_; }
  const Negentropy& base() const { return omega_; }
  double solver_tol() const { return tol_; }

  // Solves the infimal-convolution problem at theta. Dispatches to the
  // exact multiclass solver for (0-1, Shannon), the box form for
  // (Hamming, squared norm), and projected gradient otherwise.
  PiSolution solve(const Eigen::VectorXd& theta) const;

  // Omega_T(p) = Omega(p) + T(p).
  double omega_T_value(const Eigen::VectorXd& p) const;

  // Precomputed Omega_T(rho(y)), 1-based label.
  double omega_T_at_label(int y) const;

  double loss_value(const Eigen::VectorXd& theta, int y) const;
  Eigen::VectorXd loss_grad(const Eigen::VectorXd& theta, int y) const;

  // grad of the infimal convolution at theta (envelope theorem).
  Eigen::VectorXd conjugate_grad(const Eigen::VectorXd& theta) const;

  // E_{y~eta}[L(theta, y)], via one solve.
  double surrogate_risk(const Eigen::VectorXd& theta,
                        const ClassDistribution& eta) const;

  // Closed-form Bayes risk E[Omega_T(rho(y))] - Omega_T(E[rho(y)]);
  // no optimization over theta.
  double surrogate_bayes_risk(const ClassDistribution& eta) const;

  // Closed-form regret Omega_T*(theta) - <theta, mu> + Omega_T(mu) with
  // mu = mean_embedding(eta); >= -1e-10.
  double surrogate_regret(const Eigen::VectorXd& theta,
                          const ClassDistribution& eta) const;
  double surrogate_regret(const PiSolution& solution,
                          const Eigen::VectorXd& theta,
                          const ClassDistribution& eta) const;

  // Splits the surrogate regret into the Fenchel-Young term
  // Omega*(z) - <z, mu> + Omega(mu) (>= 0) and the mixture term
  // sum_t pi_t Regret(t, eta) (>= 0); the two add up to surrogate_regret.
  std::pair<double, double> regret_decomposition(
      const Eigen::VectorXd& theta, const ClassDistribution& eta,
      const PiSolution& solution) const;

 private:
  DecomposedTargetLoss loss_;
  Negentropy omega_;
  double tol_;
  Eigen::VectorXd omega_T_rho_;  // Omega_T(rho(y)) per label
};

}  // namespace convfy
