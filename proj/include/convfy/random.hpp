#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace convfy {

// One splitmix64 step; used to derive independent per-trial streams so that
// trials can be evaluated in any order (or in parallel) and still reproduce.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial_index) {
  return splitmix64(seed ^ splitmix64(trial_index + 1));
}

// mt19937_64 is bit-exact across standard libraries; the distribution
// transforms below are hand-rolled so whole campaigns reproduce from the
// seed independently of the vendor's <random> implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Exp(1); argument of log is in (0, 1].
  double exponential() { return -std::log1p(-uniform01()); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  Eigen::VectorXd uniform_vector(int n, double a, double b) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(a, b);
    return v;
  }

  Eigen::VectorXd normal_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  // Uniform on the simplex by normalizing i.i.d. exponentials.
  Eigen::VectorXd simplex_uniform(int k) {
    Eigen::VectorXd v(k);
    for (int i = 0; i < k; ++i) v[i] = exponential();
    const double s = v.sum();
    return v / s;
  }

  // Samples an index in [1, n] with probabilities proportional to w (w >= 0).
  int categorical(const Eigen::VectorXd& w) {
    const double u = uniform01() * w.sum();
    double acc = 0.0;
    for (int i = 0; i < w.size(); ++i) {
      acc += w[i];
      if (u < acc) return i + 1;
    }
    return static_cast<int>(w.size());
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace convfy
