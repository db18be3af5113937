#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "convfy/negentropy.hpp"
#include "convfy/target_loss.hpp"

namespace convfy {

enum class SolveMethod { algorithm1, projected_gradient, box_form };

const char* to_string(SolveMethod m);

// A minimizer of  min_{pi in simplex(N)} Omega*(theta + L pi)  together
// with the perturbed point z = theta + L pi, the optimal value, and solver
// diagnostics. stationarity_gap stores the magnitude of
// min_t <grad Omega*(z), loss_vec(t)> - <grad Omega*(z), L pi>, which is
// nonpositive everywhere and ~0 at an optimum (the Frank-Wolfe gap).
struct PiSolution {
  Eigen::VectorXd pi;
  Eigen::VectorXd perturbed_point;
  double objective = 0.0;
  SolveMethod method = SolveMethod::projected_gradient;
  long iterations = 0;
  double stationarity_gap = 0.0;
};

class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(const std::string& what, PiSolution last_iterate)
      : std::runtime_error(what), last(std::move(last_iterate)) {}
  PiSolution last;
};

// Frank-Wolfe gap of the simplex problem at pi with z = theta + L pi.
double frank_wolfe_gap(const DecomposedTargetLoss& loss,
                       const Negentropy& omega, const Eigen::VectorXd& pi,
                       const Eigen::VectorXd& z);

// The sort-and-threshold step shared with the exact multiclass solver:
// tau = (sum of the `support` largest entries - 1) / support where support
// is the largest k with 1 + k theta_[k] > sum_{i<=k} theta_[i].
struct SimplexThreshold {
  double tau = 0.0;
  int support = 0;
};
SimplexThreshold multiclass_shannon_threshold(const Eigen::VectorXd& theta);

// Exact O(K log K) solution for the 0-1 loss with Shannon base negentropy:
// pi_i = max(theta_i - tau, 0) is the unique minimizer.
PiSolution solve_pi_multiclass_shannon(const Eigen::VectorXd& theta);

// Projected-gradient descent over the simplex with Armijo backtracking,
// uniform initialization, and the Frank-Wolfe gap as stopping certificate.
// Throws ConvergenceFailure (carrying the last iterate and its gap) after
// 1e5 iterations. For a Shannon base the loss must use one-hot encoding.
PiSolution solve_pi_generic(const DecomposedTargetLoss& loss,
                            const Negentropy& omega,
                            const Eigen::VectorXd& theta, double tol);

// Low-dimensional form for the Hamming loss: minimizes Omega*(theta + nu)
// over the box [0,1]^rho_dim and expands nu* into the product-form pi with
// pi_t = prod_i nu*_i^{bit} (1-nu*_i)^{1-bit}, which satisfies L pi = nu*.
struct BoxSolution {
  Eigen::VectorXd nu_star;
  PiSolution solution;
};
BoxSolution solve_box_hamming(const DecomposedTargetLoss& loss,
                              const Negentropy& omega,
                              const Eigen::VectorXd& theta, double tol);

// Envelope-theorem gradient: grad Omega*(z) at the perturbed point, equal
// to the gradient of the infimal convolution for any minimizer pi.
Eigen::VectorXd conv_conjugate_grad(const Negentropy& omega,
                                    const PiSolution& solution);

// Reduces the support of pi to at most affine_dimension(loss) + 1 while
// preserving L pi, the total mass, and nonnegativity (Caratheodory).
Eigen::VectorXd caratheodory_sparsify(const DecomposedTargetLoss& loss,
                                      const Eigen::VectorXd& pi);

}  // namespace convfy
