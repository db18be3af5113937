#pragma once

#include <Eigen/Core>

namespace convfy {

enum class NegentropyKind { shannon, squared_norm };
enum class DomainDescriptor { full_space, probability_simplex };

// A base negentropy Omega with finite conjugate everywhere, its conjugate
// gradient, and the strong-convexity modulus (w.r.t. the 2-norm) that
// governs the smoothness of the induced losses.
struct Negentropy {
  int dim = 0;
  NegentropyKind kind = NegentropyKind::shannon;
  double strong_convexity_modulus = 1.0;
  DomainDescriptor domain = DomainDescriptor::probability_simplex;

  static Negentropy shannon(int dim);
  static Negentropy squared_norm(int dim);

  double value(const Eigen::VectorXd& p) const;
  double conjugate(const Eigen::VectorXd& theta) const;
  Eigen::VectorXd conjugate_grad(const Eigen::VectorXd& theta) const;
};

// Shannon negentropy <p, ln p> on the simplex, with 0 ln 0 = 0. Inputs off
// the simplex beyond 1e-9 raise std::domain_error rather than being
// projected silently.
double shannon_value(const Eigen::VectorXd& p);

// log-sum-exp with max-subtraction.
double shannon_conjugate(const Eigen::VectorXd& theta);

// softmax with max-subtraction; sums to 1 within 1e-12.
Eigen::VectorXd shannon_conjugate_grad(const Eigen::VectorXd& theta);

// The self-conjugate pair 0.5 ||.||^2.
double squared_norm_value(const Eigen::VectorXd& p);
double squared_norm_conjugate(const Eigen::VectorXd& theta);
Eigen::VectorXd squared_norm_conjugate_grad(const Eigen::VectorXd& theta);

// Euclidean projection onto the simplex by sort-and-threshold: the unique
// tau with sum_i max(v_i - tau, 0) = 1.
Eigen::VectorXd simplex_project(const Eigen::VectorXd& v);

}  // namespace convfy
