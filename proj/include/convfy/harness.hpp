#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "convfy/fy_loss.hpp"
#include "convfy/inf_conv.hpp"
#include "convfy/negentropy.hpp"
#include "convfy/target_loss.hpp"

namespace convfy {

// Bad task strings, unknown entropies and the like. The CLI maps this to
// exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Task descriptors accepted on the command line:
//   multiclass:K | hamming:RHO | topk:K:k | matrix:FILE
struct TaskSpec {
  enum class Family { multiclass, hamming, topk, matrix };
  Family family = Family::multiclass;
  int K = 0;
  int k = 0;
  int rho_dim = 0;
  std::string file;
  std::string text;
};

TaskSpec parse_task(const std::string& text);
DecomposedTargetLoss build_target(const TaskSpec& spec);

// entropy name is "shannon" or "sqnorm".
Negentropy make_base_entropy(const std::string& name, int dim);

// ---------------------------------------------------------------------------
// Regret-bound verification campaigns.

struct RegretRecord {
  double surrogate_regret = 0.0;
  double target_regret = 0.0;
  double bound_constant = 0.0;
  double ratio = 0.0;  // NaN when skipped as 0/0
  bool violated = false;
};

struct RegretReport {
  std::string task;
  std::string base_entropy;
  std::string link;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<RegretRecord> records;
  double max_ratio = 0.0;  // over trials with a defined ratio
  int violations = 0;

  bool pass() const { return violations == 0; }
};

// Samples theta with i.i.d. uniform[-5,5] entries and eta uniform on the
// simplex, then checks target regret <= bound_constant * surrogate regret
// + 1e-9 per trial. The bound constant is N for link "argmax",
// affine_dimension + 1 for "sparse", and 1 for "random" (expectation form:
// the target side is the pi-mixture of target regrets). Trials draw
// independent per-index streams, so records merge deterministically.
RegretReport verify_bounds(const std::string& task, const std::string& entropy,
                           int trials, std::uint64_t seed,
                           const std::string& link = "argmax",
                           double tol = 1e-9);

// ---------------------------------------------------------------------------
// Gradient check: loss_grad vs central finite differences of loss_value.

struct GradCheckReport {
  std::string task;
  std::string base_entropy;
  int samples = 0;
  std::uint64_t seed = 0;
  double step = 0.0;
  double max_rel_error = 0.0;
  bool pass = false;  // max_rel_error <= 1e-4
};

GradCheckReport grad_check(const std::string& task, const std::string& entropy,
                           int samples, std::uint64_t seed, double step = 1e-5,
                           double tol = 1e-10);

// ---------------------------------------------------------------------------
// Property suites: nonnegativity, midpoint convexity, gradient Lipschitz
// constant 1/mu, regret-decomposition identity, vertex dominance.

struct PropertyReport {
  std::string task;
  std::string base_entropy;
  int samples = 0;
  std::uint64_t seed = 0;
  double min_loss_value = 0.0;            // >= -1e-10 required
  double convexity_violation = 0.0;       // <= 1e-9 required
  double smoothness_violation = 0.0;      // <= 1e-8 required
  double decomposition_error = 0.0;       // <= 1e-8 required
  double lower_bound_violation = 0.0;     // mixture - regret, <= 1e-9
  double vertex_dominance_violation = 0.0;  // <= 1e-8 required
  bool pass = false;
};

PropertyReport property_check(const std::string& task,
                              const std::string& entropy, int samples,
                              std::uint64_t seed, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Fisher consistency: minimize the surrogate risk for interior eta by
// full-batch gradient descent with backtracking, then compare the
// probability estimate against the true mean embedding.

struct FisherRecord {
  bool converged = false;
  int steps = 0;
  double error = 0.0;          // inf-norm vs mean embedding
  double decoded_error = 0.0;  // inf-norm of the decoded statistic
};

struct FisherReport {
  std::string task;
  std::string base_entropy;
  int eta_samples = 0;
  std::uint64_t seed = 0;
  int gd_steps = 0;
  std::vector<FisherRecord> records;
  double max_error = 0.0;
  bool all_converged = false;
  bool pass = false;  // all converged and max_error <= 1e-3
};

FisherReport fisher_check(const std::string& task, const std::string& entropy,
                          int eta_samples, std::uint64_t seed,
                          int gd_steps = 20000, double gd_lr = 1.0,
                          double tol = 1e-11);

// ---------------------------------------------------------------------------
// Synthetic training demonstration.

struct TrainTrace {
  int epoch = 0;
  double mean_surrogate_regret = 0.0;
  double mean_target_regret = 0.0;
  double grad_norm = 0.0;
};

struct TrainResult {
  std::string task;
  std::string base_entropy;
  int n_samples = 0;
  int n_features = 0;
  double lr = 0.0;
  std::uint64_t seed = 0;
  std::vector<TrainTrace> trace;
  bool per_epoch_bound_ok = false;  // mean target <= N * mean surrogate + 1e-9
};

// Draws features x ~ N(0, I), builds conditionals eta(x) from a random
// linear teacher, samples labels, and trains a linear score model by
// full-batch gradient descent on the convolutional FY loss. Each trace row
// is logged before the epoch's update, so row 0 is the initial state.
TrainResult train_synthetic(const std::string& task, const std::string& entropy,
                            int n_samples, int n_features, int epochs,
                            double lr, std::uint64_t seed, double tol = 1e-9);

// CSV with the fixed header epoch,mean_surrogate_regret,mean_target_regret,grad_norm.
void write_train_csv(const TrainResult& result, const std::string& path);

// ---------------------------------------------------------------------------
// JSON serialization with stable field order.

nlohmann::ordered_json to_json(const RegretReport& report,
                               bool include_records = true);
nlohmann::ordered_json to_json(const GradCheckReport& report);
nlohmann::ordered_json to_json(const PropertyReport& report);
nlohmann::ordered_json to_json(const FisherReport& report);
nlohmann::ordered_json to_json(const PiSolution& solution);

}  // namespace convfy
