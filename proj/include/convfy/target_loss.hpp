#pragma once

#include <string>

#include <Eigen/Core>

namespace convfy {

// Class distribution eta in the K-simplex. Validated on construction:
// nonnegative entries summing to 1 within 1e-12.
class ClassDistribution {
 public:
  explicit ClassDistribution(Eigen::VectorXd eta);

  const Eigen::VectorXd& eta() const { return eta_; }
  int num_classes() const { return static_cast<int>(eta_.size()); }
  double operator[](int y) const { return eta_[y - 1]; }  // 1-based

 private:
  Eigen::VectorXd eta_;
};

// Score vector theta in R^rho_dim.
using Score = Eigen::VectorXd;

enum class TargetLossKind { zero_one, hamming, top_k, custom };

// A discrete target loss l(t, y) over predictions t in [N] and labels
// y in [K], stored in decomposed form
//
//     l(t, y) = <rho(y), loss_vec(t)> + c(y),
//
// where rho(y) is column y of `rho` (the label encoding, dimension rho_dim)
// and loss_vec(t) is column t of `loss_matrix`. Labels and predictions are
// 1-based indices into enumeration orders fixed by each constructor
// (lexicographic for subsets and bit-vectors).
struct DecomposedTargetLoss {
  int K = 0;        // number of classes
  int N = 0;        // number of predictions
  int rho_dim = 0;  // encoding dimension
  Eigen::MatrixXd rho;          // rho_dim x K
  Eigen::MatrixXd loss_matrix;  // rho_dim x N
  Eigen::VectorXd c;            // K
  std::string name;
  TargetLossKind kind = TargetLossKind::custom;

  // l(t, y) from the decomposition.
  double reconstruct(int t, int y) const;

  // <eta, l(t, .)>, enumerated over the prediction columns.
  double target_risk(int t, const ClassDistribution& eta) const;

  // min_t <eta, l(t, .)>.
  double bayes_risk(const ClassDistribution& eta) const;

  // target_risk(t) - bayes_risk; always >= 0.
  double target_regret(int t, const ClassDistribution& eta) const;

  // Risks of all N predictions at once (loss_matrix^T mu + <eta, c>).
  Eigen::VectorXd all_risks(const ClassDistribution& eta) const;

  // T(p) = -min_t <p, loss_vec(t)>, the negated affinely transformed
  // Bayes risk.
  double transformed_bayes_negative(const Eigen::VectorXd& p) const;

  // E_{y~eta}[rho(y)] = rho * eta.
  Eigen::VectorXd mean_embedding(const ClassDistribution& eta) const;

  // Dimension of the affine hull of the loss_matrix columns: rank of
  // [loss_vec(t) - loss_vec(1)]_{t=2..N} with singular values below
  // 1e-9 * sigma_max treated as zero.
  int affine_dimension() const;

  // True when rho is the K x K identity, i.e. conv(rho(Y)) is the simplex.
  bool one_hot_encoding() const;

  void validate() const;  // throws std::invalid_argument on a bad instance
};

// 0-1 loss over K classes: rho = I, loss_matrix = 11^T - I, c = 0.
DecomposedTargetLoss make_zero_one(int K);

// Hamming loss over bit-vectors of length rho_dim (K = N = 2^rho_dim):
// rho(y) = 1 - 2 nu(y), loss_vec(t) = nu(t), c(y) = sum of bits of y.
DecomposedTargetLoss make_hamming(int rho_dim);

// Top-k loss: predictions are the C(K, k) size-k subsets of [K] in
// lexicographic order; loss_vec(S)_y = 1 iff y not in S; rho = I, c = 0.
DecomposedTargetLoss make_top_k(int K, int k);

// Trivial decomposition of a raw K x N loss table (raw(y, t) = l(t, y)).
DecomposedTargetLoss from_matrix(const Eigen::MatrixXd& raw,
                                 std::string name = "matrix");

// Loads a K-rows-by-N-columns CSV table (header row optional) and applies
// from_matrix.
DecomposedTargetLoss from_matrix_csv(const std::string& path);

// Bit-vector nu(y) of the 1-based hamming label y, most significant bit
// first, and its inverse. Index 1 is the all-zeros vector.
Eigen::VectorXd hamming_bits(int rho_dim, int y);
int hamming_index(const Eigen::VectorXd& bits);

// n choose k without overflow for desk-scale arguments.
long long binomial(int n, int k);

}  // namespace convfy
