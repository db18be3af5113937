#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "convfy/fy_loss.hpp"
#include "convfy/inf_conv.hpp"
#include "convfy/target_loss.hpp"

namespace convfy {

enum class LinkKind {
  pi_argmax,
  sparsified,
  randomized,
  fast_multiclass,
  hamming_threshold
};

const char* to_string(LinkKind k);

// A prediction together with the selector value behind it. Deterministic
// kinds break ties to the lowest index.
struct LinkResult {
  int prediction = 1;  // 1-based index into the prediction enumeration
  Eigen::VectorXd pi_used;
  LinkKind kind = LinkKind::pi_argmax;
};

// argmax_t pi_t, lowest index on ties.
LinkResult pi_argmax_link(const PiSolution& solution);

// argmax_t theta_t for the multiclass/Shannon task; agrees with the
// pi-argmax link over the exact solver output.
LinkResult fast_multiclass_link(const Eigen::VectorXd& theta);

// Caratheodory-sparsified selector followed by argmax; the recorded pi has
// support at most affine_dimension(loss) + 1, so its maximum exceeds
// 1 / (affdim + 1).
LinkResult sparsified_link(const DecomposedTargetLoss& loss,
                           const PiSolution& solution);

// Samples t with probability pi_t using a seeded deterministic generator.
LinkResult randomized_link(const PiSolution& solution, std::uint64_t seed);

// Coordinate-wise thresholding of the box solution: bit i is 1 iff
// nu*_i > 0.5 (ties toward 0); equals the argmax of the product-form pi
// whenever no coordinate sits exactly at 0.5.
LinkResult hamming_threshold_link(const Eigen::VectorXd& nu_star);

// Estimate of E_{y~eta}[rho(y)] read off the envelope gradient at theta,
// with the task-specific decoding (class probabilities for one-hot
// encodings, per-label marginals (1 - estimate)/2 for Hamming). The decoding
// is trustworthy near surrogate risk minimizers (Fisher consistency).
struct ProbabilityEstimate {
  Eigen::VectorXd mean_rho_estimate;
  std::optional<Eigen::VectorXd> decoded;
};

ProbabilityEstimate probability_estimate(const ConvFYLoss& fy,
                                         const Eigen::VectorXd& theta);

}  // namespace convfy
