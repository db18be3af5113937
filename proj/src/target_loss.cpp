#include "convfy/target_loss.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/SVD>

namespace convfy {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

ClassDistribution::ClassDistribution(Eigen::VectorXd eta) : eta_(std::move(eta)) {
  require(eta_.size() >= 1, "class distribution must be non-empty");
  for (Eigen::Index i = 0; i < eta_.size(); ++i) {
    require(std::isfinite(eta_[i]) && eta_[i] >= 0.0,
            "class distribution entries must be finite and nonnegative");
  }
  require(std::abs(eta_.sum() - 1.0) <= 1e-12,
          "class distribution must sum to 1 within 1e-12");
}

void DecomposedTargetLoss::validate() const {
  require(K >= 1 && N >= 1 && rho_dim >= 1, "empty target loss");
  require(rho.rows() == rho_dim && rho.cols() == K, "rho shape mismatch");
  require(loss_matrix.rows() == rho_dim && loss_matrix.cols() == N,
          "loss_matrix shape mismatch");
  require(c.size() == K, "remainder size mismatch");
  require(rho.allFinite() && loss_matrix.allFinite() && c.allFinite(),
          "target loss entries must be finite");
}

double DecomposedTargetLoss::reconstruct(int t, int y) const {
  require(t >= 1 && t <= N, "prediction index out of range");
  require(y >= 1 && y <= K, "label index out of range");
  return rho.col(y - 1).dot(loss_matrix.col(t - 1)) + c[y - 1];
}

Eigen::VectorXd DecomposedTargetLoss::all_risks(const ClassDistribution& eta) const {
  require(eta.num_classes() == K, "class distribution dimension mismatch");
  const Eigen::VectorXd mu = rho * eta.eta();
  const double base = c.dot(eta.eta());
  return (loss_matrix.transpose() * mu).array() + base;
}

double DecomposedTargetLoss::target_risk(int t, const ClassDistribution& eta) const {
  require(t >= 1 && t <= N, "prediction index out of range");
  return all_risks(eta)[t - 1];
}

double DecomposedTargetLoss::bayes_risk(const ClassDistribution& eta) const {
  return all_risks(eta).minCoeff();
}

double DecomposedTargetLoss::target_regret(int t, const ClassDistribution& eta) const {
  require(t >= 1 && t <= N, "prediction index out of range");
  const Eigen::VectorXd risks = all_risks(eta);
  return risks[t - 1] - risks.minCoeff();
}

double DecomposedTargetLoss::transformed_bayes_negative(const Eigen::VectorXd& p) const {
  require(p.size() == rho_dim, "point dimension mismatch");
  require(p.allFinite(), "point must be finite");
  return -(loss_matrix.transpose() * p).minCoeff();
}

Eigen::VectorXd DecomposedTargetLoss::mean_embedding(const ClassDistribution& eta) const {
  require(eta.num_classes() == K, "class distribution dimension mismatch");
  return rho * eta.eta();
}

int DecomposedTargetLoss::affine_dimension() const {
  if (N <= 1) return 0;
  Eigen::MatrixXd diffs(rho_dim, N - 1);
  for (int t = 1; t < N; ++t) {
    diffs.col(t - 1) = loss_matrix.col(t) - loss_matrix.col(0);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  const double cutoff = 1e-9 * sv[0];
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > cutoff) ++rank;
  }
  return rank;
}

bool DecomposedTargetLoss::one_hot_encoding() const {
  if (rho_dim != K) return false;
  return rho.isIdentity(0.0);
}

DecomposedTargetLoss make_zero_one(int K) {
  require(K >= 2, "0-1 loss needs at least 2 classes");
  DecomposedTargetLoss loss;
  loss.K = loss.N = loss.rho_dim = K;
  loss.rho = Eigen::MatrixXd::Identity(K, K);
  loss.loss_matrix = Eigen::MatrixXd::Ones(K, K) - Eigen::MatrixXd::Identity(K, K);
  loss.c = Eigen::VectorXd::Zero(K);
  loss.name = "zero_one:" + std::to_string(K);
  loss.kind = TargetLossKind::zero_one;
  loss.validate();
  return loss;
}

DecomposedTargetLoss make_hamming(int rho_dim) {
  require(rho_dim >= 1, "hamming loss needs at least 1 bit");
  if (rho_dim > 16) {
    throw std::length_error("hamming loss with rho_dim > 16 exceeds desk scale");
  }
  const int n = 1 << rho_dim;
  DecomposedTargetLoss loss;
  loss.K = loss.N = n;
  loss.rho_dim = rho_dim;
  loss.rho.resize(rho_dim, n);
  loss.loss_matrix.resize(rho_dim, n);
  loss.c.resize(n);
  for (int y = 1; y <= n; ++y) {
    const Eigen::VectorXd bits = hamming_bits(rho_dim, y);
    loss.loss_matrix.col(y - 1) = bits;
    loss.rho.col(y - 1) = Eigen::VectorXd::Ones(rho_dim) - 2.0 * bits;
    loss.c[y - 1] = bits.sum();
  }
  loss.name = "hamming:" + std::to_string(rho_dim);
  loss.kind = TargetLossKind::hamming;
  loss.validate();
  return loss;
}

DecomposedTargetLoss make_top_k(int K, int k) {
  require(K >= 2, "top-k loss needs at least 2 classes");
  require(k >= 1 && k < K, "subset size must satisfy 1 <= k < K");
  const long long count = binomial(K, k);
  if (count > 200000) {
    throw std::length_error("top-k loss with C(K,k) > 2e5 exceeds desk scale");
  }
  const int n = static_cast<int>(count);
  DecomposedTargetLoss loss;
  loss.K = loss.rho_dim = K;
  loss.N = n;
  loss.rho = Eigen::MatrixXd::Identity(K, K);
  loss.loss_matrix.resize(K, n);
  loss.c = Eigen::VectorXd::Zero(K);

  // Lexicographic enumeration of the k-subsets of [K].
  std::vector<int> subset(k);
  for (int i = 0; i < k; ++i) subset[i] = i + 1;
  int col = 0;
  while (true) {
    Eigen::VectorXd v = Eigen::VectorXd::Ones(K);
    for (int member : subset) v[member - 1] = 0.0;
    loss.loss_matrix.col(col++) = v;
    int i = k - 1;
    while (i >= 0 && subset[i] == K - (k - 1 - i)) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  require(col == n, "subset enumeration mismatch");
  loss.name = "topk:" + std::to_string(K) + ":" + std::to_string(k);
  loss.kind = TargetLossKind::top_k;
  loss.validate();
  return loss;
}

DecomposedTargetLoss from_matrix(const Eigen::MatrixXd& raw, std::string name) {
  require(raw.rows() >= 1 && raw.cols() >= 1, "raw loss table must be non-empty");
  require(raw.allFinite(), "raw loss table entries must be finite");
  const int K = static_cast<int>(raw.rows());
  const int N = static_cast<int>(raw.cols());
  DecomposedTargetLoss loss;
  loss.K = loss.rho_dim = K;
  loss.N = N;
  loss.rho = Eigen::MatrixXd::Identity(K, K);
  loss.loss_matrix = raw;  // column t is the loss vector of prediction t
  loss.c = Eigen::VectorXd::Zero(K);
  loss.name = std::move(name);
  loss.kind = TargetLossKind::custom;
  loss.validate();
  return loss;
}

DecomposedTargetLoss from_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open loss table file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size()) numeric = false;
        row.push_back(v);
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      // Only an initial header row may be non-numeric.
      if (first) {
        first = false;
        continue;
      }
      throw std::invalid_argument("non-numeric row in loss table: " + path);
    }
    first = false;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::invalid_argument("ragged rows in loss table: " + path);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("empty loss table: " + path);
  Eigen::MatrixXd raw(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      raw(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return from_matrix(raw, "matrix:" + path);
}

Eigen::VectorXd hamming_bits(int rho_dim, int y) {
  require(rho_dim >= 1 && rho_dim <= 31, "bit width out of range");
  require(y >= 1 && y <= (1 << rho_dim), "hamming label out of range");
  Eigen::VectorXd bits(rho_dim);
  const int v = y - 1;
  for (int i = 0; i < rho_dim; ++i) {
    bits[i] = (v >> (rho_dim - 1 - i)) & 1;  // most significant bit first
  }
  return bits;
}

int hamming_index(const Eigen::VectorXd& bits) {
  int v = 0;
  for (Eigen::Index i = 0; i < bits.size(); ++i) {
    v = (v << 1) | (bits[i] > 0.5 ? 1 : 0);
  }
  return v + 1;
}

long long binomial(int n, int k) {
  require(n >= 0 && k >= 0 && k <= n, "bad binomial arguments");
  k = std::min(k, n - k);
  long long result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > (1LL << 50)) throw std::length_error("binomial overflow");
  }
  return result;
}

}  // namespace convfy
