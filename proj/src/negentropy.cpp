#include "convfy/negentropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace convfy {

namespace {

void check_finite(const Eigen::VectorXd& v, const char* what) {
  if (!v.allFinite()) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

Negentropy Negentropy::shannon(int dim) {
  if (dim < 1) throw std::invalid_argument("negentropy dimension must be positive");
  return Negentropy{dim, NegentropyKind::shannon, 1.0,
                    DomainDescriptor::probability_simplex};
}

Negentropy Negentropy::squared_norm(int dim) {
  if (dim < 1) throw std::invalid_argument("negentropy dimension must be positive");
  return Negentropy{dim, NegentropyKind::squared_norm, 1.0,
                    DomainDescriptor::full_space};
}

double Negentropy::value(const Eigen::VectorXd& p) const {
  if (p.size() != dim) throw std::invalid_argument("negentropy argument dimension mismatch");
  return kind == NegentropyKind::shannon ? shannon_value(p) : squared_norm_value(p);
}

double Negentropy::conjugate(const Eigen::VectorXd& theta) const {
  if (theta.size() != dim) throw std::invalid_argument("conjugate argument dimension mismatch");
  return kind == NegentropyKind::shannon ? shannon_conjugate(theta)
                                         : squared_norm_conjugate(theta);
}

Eigen::VectorXd Negentropy::conjugate_grad(const Eigen::VectorXd& theta) const {
  if (theta.size() != dim) throw std::invalid_argument("conjugate argument dimension mismatch");
  return kind == NegentropyKind::shannon ? shannon_conjugate_grad(theta)
                                         : squared_norm_conjugate_grad(theta);
}

double shannon_value(const Eigen::VectorXd& p) {
  check_finite(p, "shannon argument");
  double sum = 0.0;
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p[i] < -1e-9) throw std::domain_error("shannon argument has a negative entry");
    sum += p[i];
    if (p[i] > 0.0) entropy += p[i] * std::log(p[i]);  // 0 ln 0 = 0
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::domain_error("shannon argument is off the simplex");
  }
  return entropy;
}

double shannon_conjugate(const Eigen::VectorXd& theta) {
  check_finite(theta, "log-sum-exp argument");
  const double m = theta.maxCoeff();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i) acc += std::exp(theta[i] - m);
  return m + std::log(acc);
}

Eigen::VectorXd shannon_conjugate_grad(const Eigen::VectorXd& theta) {
  check_finite(theta, "softmax argument");
  const double m = theta.maxCoeff();
  Eigen::VectorXd out(theta.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    out[i] = std::exp(theta[i] - m);
    acc += out[i];
  }
  return out / acc;
}

double squared_norm_value(const Eigen::VectorXd& p) {
  check_finite(p, "squared-norm argument");
  return 0.5 * p.squaredNorm();
}

double squared_norm_conjugate(const Eigen::VectorXd& theta) {
  check_finite(theta, "squared-norm argument");
  return 0.5 * theta.squaredNorm();
}

Eigen::VectorXd squared_norm_conjugate_grad(const Eigen::VectorXd& theta) {
  check_finite(theta, "squared-norm argument");
  return theta;
}

Eigen::VectorXd simplex_project(const Eigen::VectorXd& v) {
  check_finite(v, "projection argument");
  const Eigen::Index n = v.size();
  if (n == 0) throw std::invalid_argument("cannot project the empty vector");
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0;
  double tau = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    css += u[j];
    const double candidate = (css - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) {
      tau = candidate;
    } else {
      break;
    }
  }
  return (v.array() - tau).max(0.0).matrix();
}

}  // namespace convfy
