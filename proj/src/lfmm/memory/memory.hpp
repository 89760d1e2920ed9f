#pragma once

#include "lfmm/core/rng.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace lfmm::memory {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Key/value store for softmax-kernel retrieval. Row j of keys() and values()
// is observation j.
class MemoryBank {
 public:
  MemoryBank(int key_dim, int value_dim);

  void add(const Vector& key, const Vector& value);
  int size() const { return static_cast<int>(keys_.size()); }
  int key_dim() const { return key_dim_; }
  int value_dim() const { return value_dim_; }
  Matrix keys() const;
  Matrix values() const;

 private:
  int key_dim_;
  int value_dim_;
  std::vector<Vector> keys_;
  std::vector<Vector> values_;
};

// softmax(beta * K q), computed with the maximum subtracted.
Vector retrieval_weights(const MemoryBank& bank, const Vector& q, double beta = 1.0);

// sum_j softmax(q . k_j) v_j. Throws EmptyMemory for an empty bank.
Vector retrieve_exact(const MemoryBank& bank, const Vector& q);

// Repeats retrieval `steps` times. Between steps the query moves by `eta`
// toward the key-space image of the retrieved value under the bank's
// least-squares value-to-key map. `beta` is the inverse temperature of the
// energy; steps = 1 with beta = 1 is retrieve_exact.
Vector hopfield_retrieve(const MemoryBank& bank, const Vector& q, int steps, double eta = 1.0,
                         double beta = 1.0);

// Positive random features for the softmax kernel:
// phi(x) = m^-1/2 exp(-|x|^2 / 2) (exp(w_1 . x), ..., exp(w_m . x)),
// w_i standard normal, so E[phi(x) . phi(y)] = exp(x . y).
class FeatureMap {
 public:
  FeatureMap(int m, int dim, std::uint64_t seed);

  int m() const { return static_cast<int>(w_.rows()); }
  int dim() const { return static_cast<int>(w_.cols()); }
  std::uint64_t seed() const { return seed_; }
  const Matrix& projections() const { return w_; }

  Vector operator()(const Vector& x) const;

 private:
  Matrix w_;
  std::uint64_t seed_;
};

// Kernel estimate phi(x) . phi(y).
double kernel_estimate(const FeatureMap& features, const Vector& x, const Vector& y);

// Constant-size memory state: A = sum phi(k_j) v_j^T (m x d) and
// z = sum phi(k_j) (m).
class LinearizedMemory {
 public:
  LinearizedMemory(const FeatureMap& features, int value_dim);

  void add(const Vector& key, const Vector& value);
  void add(const MemoryBank& bank);
  // phi(q) A / (phi(q) . z). Throws EmptyMemory before the first add and
  // NearZeroNormalizer when the normalizer drops below 1e-12.
  Vector retrieve(const Vector& q) const;

  const Matrix& accumulator() const { return a_; }
  const Vector& normalizer() const { return z_; }
  std::int64_t count() const { return count_; }
  const FeatureMap& features() const { return features_; }

 private:
  FeatureMap features_;
  Matrix a_;
  Vector z_;
  std::int64_t count_ = 0;
};

Vector retrieve_linearized(const LinearizedMemory& memory, const Vector& q);

struct MemoryBenchParams {
  int key_dim = 64;
  int value_dim = 64;
  int length = 32;
  std::vector<int> feature_counts = {16, 64, 256};
  int trials = 50;
  std::uint64_t seed = 0;
};

struct MemoryBenchRow {
  int m = 0;
  double median_rel_error = 0.0;
  double mean_rel_error = 0.0;
};

// Relative error |linearized - exact| / |exact| over random unit-norm banks
// and queries. Trial t uses the same bank and query for every m.
std::vector<MemoryBenchRow> run_memory_bench(const MemoryBenchParams& params);

// Uniformly distributed direction of unit length.
Vector random_unit(int dim, CounterRng& rng);

}  // namespace lfmm::memory
