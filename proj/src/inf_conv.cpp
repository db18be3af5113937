#include "convfy/inf_conv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace convfy {

namespace {

void check_theta(const DecomposedTargetLoss& loss, const Negentropy& omega,
                 const Eigen::VectorXd& theta) {
  if (omega.dim != loss.rho_dim) {
    throw std::invalid_argument("negentropy dimension does not match the encoding");
  }
  if (theta.size() != loss.rho_dim) {
    throw std::invalid_argument("score dimension does not match the encoding");
  }
  if (!theta.allFinite()) throw std::invalid_argument("score must be finite");
}

}  // namespace

const char* to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::algorithm1: return "algorithm1";
    case SolveMethod::projected_gradient: return "projected_gradient";
    case SolveMethod::box_form: return "box_form";
  }
  return "unknown";
}

double frank_wolfe_gap(const DecomposedTargetLoss& loss, const Negentropy& omega,
                       const Eigen::VectorXd& pi, const Eigen::VectorXd& z) {
  const Eigen::VectorXd grad = loss.loss_matrix.transpose() * omega.conjugate_grad(z);
  return grad.dot(pi) - grad.minCoeff();
}

SimplexThreshold multiclass_shannon_threshold(const Eigen::VectorXd& theta) {
  if (theta.size() < 1) throw std::invalid_argument("empty score");
  if (!theta.allFinite()) throw std::invalid_argument("score must be finite");
  std::vector<double> sorted(theta.data(), theta.data() + theta.size());
  std::stable_sort(sorted.begin(), sorted.end(), std::greater<double>());

  // n = max{k : 1 + k*theta_[k] > sum_{i<=k} theta_[i]}, evaluated in exact
  // floating point; ties move tau continuously so either branch agrees.
  double css = 0.0;
  double chosen_css = sorted[0];
  int n = 1;
  for (std::size_t k = 1; k <= sorted.size(); ++k) {
    css += sorted[k - 1];
    if (1.0 + static_cast<double>(k) * sorted[k - 1] > css) {
      n = static_cast<int>(k);
      chosen_css = css;
    }
  }
  return SimplexThreshold{(chosen_css - 1.0) / static_cast<double>(n), n};
}

PiSolution solve_pi_multiclass_shannon(const Eigen::VectorXd& theta) {
  const SimplexThreshold thr = multiclass_shannon_threshold(theta);
  const Eigen::Index k = theta.size();
  Eigen::VectorXd pi(k);
  Eigen::VectorXd z(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    pi[i] = std::max(theta[i] - thr.tau, 0.0);
    z[i] = theta[i] + 1.0 - pi[i];  // L pi = 1 - pi for the 0-1 loss
  }

  PiSolution sol;
  sol.pi = std::move(pi);
  sol.perturbed_point = std::move(z);
  sol.objective = shannon_conjugate(sol.perturbed_point);
  sol.method = SolveMethod::algorithm1;
  sol.iterations = 0;
  // Gap of the equivalent simplex problem: max_t s_t - <s, pi> for the
  // softmax s of the perturbed point.
  const Eigen::VectorXd s = shannon_conjugate_grad(sol.perturbed_point);
  sol.stationarity_gap = std::abs(s.maxCoeff() - s.dot(sol.pi));
  return sol;
}

PiSolution solve_pi_generic(const DecomposedTargetLoss& loss,
                            const Negentropy& omega,
                            const Eigen::VectorXd& theta, double tol) {
  loss.validate();
  check_theta(loss, omega, theta);
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (omega.kind == NegentropyKind::shannon && !loss.one_hot_encoding()) {
    throw std::invalid_argument(
        "shannon base negentropy requires a one-hot label encoding");
  }

  const auto& L = loss.loss_matrix;
  const int n = loss.N;
  Eigen::VectorXd pi = Eigen::VectorXd::Constant(n, 1.0 / n);
  Eigen::VectorXd z = theta + L * pi;
  double value = omega.conjugate(z);

  constexpr long kMaxIters = 100000;
  constexpr double kArmijo = 1e-4;
  double step = 1.0;
  long it = 0;
  int stalls = 0;
  bool converged = false;

  for (; it < kMaxIters; ++it) {
    const Eigen::VectorXd grad = L.transpose() * omega.conjugate_grad(z);
    const double gap = grad.dot(pi) - grad.minCoeff();
    if (gap <= tol) {
      converged = true;
      break;
    }

    step = std::min(step * 2.0, 1e12);
    bool accepted = false;
    Eigen::VectorXd cand, zc;
    double vc = value;
    while (step >= 1e-20) {
      cand = simplex_project(pi - step * grad);
      zc = theta + L * cand;
      vc = omega.conjugate(zc);
      if (vc <= value + kArmijo * grad.dot(cand - pi)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no descent at any step size

    if ((cand - pi).lpNorm<Eigen::Infinity>() == 0.0) {
      if (++stalls >= 50) break;  // numerical fixed point
    } else {
      stalls = 0;
    }
    pi.swap(cand);
    z.swap(zc);
    value = vc;
  }

  PiSolution sol;
  sol.pi = pi;
  sol.perturbed_point = z;
  sol.objective = omega.conjugate(z);
  sol.method = SolveMethod::projected_gradient;
  sol.iterations = it;
  const double final_gap = frank_wolfe_gap(loss, omega, pi, z);
  sol.stationarity_gap = std::abs(final_gap);
  if (!converged && final_gap > tol) {
    throw ConvergenceFailure("projected gradient stopped above tolerance (gap " +
                                 std::to_string(final_gap) + ")",
                             sol);
  }
  return sol;
}

BoxSolution solve_box_hamming(const DecomposedTargetLoss& loss,
                              const Negentropy& omega,
                              const Eigen::VectorXd& theta, double tol) {
  loss.validate();
  if (loss.kind != TargetLossKind::hamming) {
    throw std::invalid_argument("box form requires the hamming target loss");
  }
  check_theta(loss, omega, theta);
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  const int d = loss.rho_dim;
  Eigen::VectorXd nu = Eigen::VectorXd::Constant(d, 0.5);
  double value = omega.conjugate(theta + nu);

  const auto clamp01 = [](Eigen::VectorXd v) {
    return v.array().min(1.0).max(0.0).matrix();
  };
  // Gap over the box: sum_i (g_i nu_i - min(0, g_i)).
  const auto box_gap = [](const Eigen::VectorXd& g, const Eigen::VectorXd& v) {
    double gap = 0.0;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      gap += g[i] * v[i] - std::min(0.0, g[i]);
    }
    return gap;
  };

  constexpr long kMaxIters = 100000;
  constexpr double kArmijo = 1e-4;
  double step = 1.0;
  long it = 0;
  int stalls = 0;
  bool converged = false;

  for (; it < kMaxIters; ++it) {
    const Eigen::VectorXd grad = omega.conjugate_grad(theta + nu);
    if (box_gap(grad, nu) <= tol) {
      converged = true;
      break;
    }
    step = std::min(step * 2.0, 1e12);
    bool accepted = false;
    Eigen::VectorXd cand;
    double vc = value;
    while (step >= 1e-20) {
      cand = clamp01(nu - step * grad);
      vc = omega.conjugate(theta + cand);
      if (vc <= value + kArmijo * grad.dot(cand - nu)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    if ((cand - nu).lpNorm<Eigen::Infinity>() == 0.0) {
      if (++stalls >= 50) break;
    } else {
      stalls = 0;
    }
    nu.swap(cand);
    value = vc;
  }

  // Expand nu* into the product-form selector over all 2^d predictions;
  // its image under the loss matrix is nu* again.
  Eigen::VectorXd pi(loss.N);
  for (int t = 1; t <= loss.N; ++t) {
    double prob = 1.0;
    for (int i = 0; i < d; ++i) {
      const double bit = loss.loss_matrix(i, t - 1);
      prob *= bit > 0.5 ? nu[i] : 1.0 - nu[i];
    }
    pi[t - 1] = prob;
  }

  BoxSolution out;
  out.nu_star = nu;
  out.solution.pi = std::move(pi);
  out.solution.perturbed_point = theta + nu;
  out.solution.objective = omega.conjugate(out.solution.perturbed_point);
  out.solution.method = SolveMethod::box_form;
  out.solution.iterations = it;
  const double gap =
      frank_wolfe_gap(loss, omega, out.solution.pi, out.solution.perturbed_point);
  out.solution.stationarity_gap = std::abs(gap);
  if (!converged && gap > tol) {
    throw ConvergenceFailure("box projected gradient stopped above tolerance (gap " +
                                 std::to_string(gap) + ")",
                             out.solution);
  }
  return out;
}

Eigen::VectorXd conv_conjugate_grad(const Negentropy& omega,
                                    const PiSolution& solution) {
  return omega.conjugate_grad(solution.perturbed_point);
}

Eigen::VectorXd caratheodory_sparsify(const DecomposedTargetLoss& loss,
                                      const Eigen::VectorXd& pi) {
  loss.validate();
  if (pi.size() != loss.N) throw std::invalid_argument("selector dimension mismatch");
  if (pi.minCoeff() < -1e-10 || std::abs(pi.sum() - 1.0) > 1e-9) {
    throw std::invalid_argument("selector must lie in the simplex");
  }

  Eigen::VectorXd out = pi.array().max(0.0).matrix();
  const int max_support = loss.affine_dimension() + 1;
  const auto& L = loss.loss_matrix;
  const int d = loss.rho_dim;

  while (true) {
    std::vector<int> support;
    for (int i = 0; i < loss.N; ++i) {
      if (out[i] > 0.0) support.push_back(i);
    }
    if (static_cast<int>(support.size()) <= max_support) break;

    // Any max_support + 1 columns are affinely dependent, so a kernel
    // vector supported on the leading ones suffices.
    const int m = max_support + 1;
    Eigen::MatrixXd stacked(d + 1, m);
    for (int j = 0; j < m; ++j) {
      stacked.block(0, j, d, 1) = L.col(support[j]);
      stacked(d, j) = 1.0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
    Eigen::VectorXd dir = svd.matrixV().col(m - 1);
    const double scale = std::max(1.0, svd.singularValues()[0]);
    if ((stacked * dir).lpNorm<Eigen::Infinity>() > 1e-7 * scale) {
      throw std::runtime_error(
          "sparsification failed to find a kernel direction");
    }

    // Deterministic sign: largest-magnitude entry positive. The ones-row of
    // the stacked matrix forces sum(dir) = 0, so negatives exist.
    int peak = 0;
    for (int j = 1; j < m; ++j) {
      if (std::abs(dir[j]) > std::abs(dir[peak])) peak = j;
    }
    if (dir[peak] < 0.0) dir = -dir;

    double gamma = std::numeric_limits<double>::infinity();
    int binding = -1;
    for (int j = 0; j < m; ++j) {
      if (dir[j] < 0.0) {
        const double ratio = out[support[j]] / (-dir[j]);
        if (ratio < gamma) {  // ties keep the lowest index
          gamma = ratio;
          binding = j;
        }
      }
    }
    if (binding < 0 || !std::isfinite(gamma)) {
      throw std::runtime_error("sparsification found no binding coordinate");
    }

    for (int j = 0; j < m; ++j) {
      out[support[j]] = std::max(out[support[j]] + gamma * dir[j], 0.0);
    }
    out[support[binding]] = 0.0;
  }
  return out;
}

}  // namespace convfy
