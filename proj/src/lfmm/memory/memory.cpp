#include "lfmm/memory/memory.hpp"

#include "lfmm/core/error.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>

namespace lfmm::memory {

MemoryBank::MemoryBank(int key_dim, int value_dim) : key_dim_(key_dim), value_dim_(value_dim) {
  if (key_dim < 1 || value_dim < 1) fail(ErrorCode::InvalidArgument, "memory dimensions must be positive");
}

void MemoryBank::add(const Vector& key, const Vector& value) {
  if (key.size() != key_dim_ || value.size() != value_dim_)
    fail(ErrorCode::InvalidArgument, "key or value has the wrong dimension");
  keys_.push_back(key);
  values_.push_back(value);
}

Matrix MemoryBank::keys() const {
  Matrix k(size(), key_dim_);
  for (int j = 0; j < size(); ++j) k.row(j) = keys_[j].transpose();
  return k;
}

Matrix MemoryBank::values() const {
  Matrix v(size(), value_dim_);
  for (int j = 0; j < size(); ++j) v.row(j) = values_[j].transpose();
  return v;
}

Vector retrieval_weights(const MemoryBank& bank, const Vector& q, double beta) {
  if (bank.size() == 0) fail(ErrorCode::EmptyMemory, "memory bank is empty");
  if (q.size() != bank.key_dim()) fail(ErrorCode::InvalidArgument, "query has the wrong dimension");
  Vector logits = beta * (bank.keys() * q);
  logits.array() -= logits.maxCoeff();
  Vector w = logits.array().exp();
  return w / w.sum();
}

Vector retrieve_exact(const MemoryBank& bank, const Vector& q) {
  const Vector w = retrieval_weights(bank, q);
  return bank.values().transpose() * w;
}

Vector hopfield_retrieve(const MemoryBank& bank, const Vector& q, int steps, double eta, double beta) {
  if (steps < 1) fail(ErrorCode::InvalidArgument, "hopfield_retrieve needs at least one step");
  if (!(eta > 0.0 && eta <= 1.0)) fail(ErrorCode::InvalidArgument, "eta must lie in (0, 1]");
  if (bank.size() == 0) fail(ErrorCode::EmptyMemory, "memory bank is empty");
  const Matrix k = bank.keys();
  const Matrix v = bank.values();
  // Least-squares W with V W ~ K.
  const Matrix w = v.completeOrthogonalDecomposition().pseudoInverse() * k;
  Vector query = q;
  Vector out;
  for (int s = 0; s < steps; ++s) {
    out = v.transpose() * retrieval_weights(bank, query, beta);
    if (s + 1 < steps) query = (1.0 - eta) * query + eta * (w.transpose() * out);
  }
  return out;
}

FeatureMap::FeatureMap(int m, int dim, std::uint64_t seed) : w_(m, dim), seed_(seed) {
  if (m < 1 || dim < 1) fail(ErrorCode::InvalidArgument, "feature map needs m >= 1 and dim >= 1");
  CounterRng rng(seed);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < dim; ++j) w_(i, j) = rng.normal();
}

Vector FeatureMap::operator()(const Vector& x) const {
  if (x.size() != dim()) fail(ErrorCode::InvalidArgument, "feature input has the wrong dimension");
  const double scale = std::exp(-0.5 * x.squaredNorm()) / std::sqrt(static_cast<double>(m()));
  return ((w_ * x).array().exp() * scale).matrix();
}

double kernel_estimate(const FeatureMap& f, const Vector& x, const Vector& y) { return f(x).dot(f(y)); }

LinearizedMemory::LinearizedMemory(const FeatureMap& features, int value_dim)
    : features_(features), a_(Matrix::Zero(features.m(), value_dim)), z_(Vector::Zero(features.m())) {
  if (value_dim < 1) fail(ErrorCode::InvalidArgument, "value dimension must be positive");
}

void LinearizedMemory::add(const Vector& key, const Vector& value) {
  if (value.size() != a_.cols()) fail(ErrorCode::InvalidArgument, "value has the wrong dimension");
  const Vector phi = features_(key);
  a_.noalias() += phi * value.transpose();
  z_ += phi;
  ++count_;
}

void LinearizedMemory::add(const MemoryBank& bank) {
  const Matrix k = bank.keys(), v = bank.values();
  for (int j = 0; j < bank.size(); ++j) add(k.row(j).transpose(), v.row(j).transpose());
}

Vector LinearizedMemory::retrieve(const Vector& q) const {
  if (count_ == 0) fail(ErrorCode::EmptyMemory, "linearized memory is empty");
  const Vector phi = features_(q);
  const double norm = phi.dot(z_);
  if (!(norm >= 1e-12)) fail(ErrorCode::NearZeroNormalizer, "feature normalizer is below 1e-12");
  return (a_.transpose() * phi) / norm;
}

Vector retrieve_linearized(const LinearizedMemory& memory, const Vector& q) { return memory.retrieve(q); }

Vector random_unit(int dim, CounterRng& rng) {
  Vector v(dim);
  do {
    for (int i = 0; i < dim; ++i) v[i] = rng.normal();
  } while (v.norm() == 0.0);
  return v.normalized();
}

std::vector<MemoryBenchRow> run_memory_bench(const MemoryBenchParams& p) {
  if (p.trials < 1 || p.length < 1 || p.feature_counts.empty())
    fail(ErrorCode::InvalidArgument, "memory bench needs trials, length and feature counts");
  const CounterRng root(p.seed);
  std::vector<MemoryBenchRow> rows;
  for (std::size_t mi = 0; mi < p.feature_counts.size(); ++mi) {
    const int m = p.feature_counts[mi];
    std::vector<double> errors;
    for (int t = 0; t < p.trials; ++t) {
      CounterRng data = root.split(static_cast<std::uint64_t>(t));
      MemoryBank bank(p.key_dim, p.value_dim);
      for (int j = 0; j < p.length; ++j) {
        const Vector k = random_unit(p.key_dim, data);
        bank.add(k, random_unit(p.value_dim, data));
      }
      const Vector q = random_unit(p.key_dim, data);
      const Vector exact = retrieve_exact(bank, q);
      LinearizedMemory lin(FeatureMap(m, p.key_dim, root.split(1'000'000 + static_cast<std::uint64_t>(t)).next_u64()),
                           p.value_dim);
      lin.add(bank);
      errors.push_back((lin.retrieve(q) - exact).norm() / exact.norm());
    }
    MemoryBenchRow row;
    row.m = m;
    double sum = 0.0;
    for (double e : errors) sum += e;
    row.mean_rel_error = sum / static_cast<double>(errors.size());
    std::sort(errors.begin(), errors.end());
    const std::size_t n = errors.size();
    row.median_rel_error = n % 2 ? errors[n / 2] : 0.5 * (errors[n / 2 - 1] + errors[n / 2]);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace lfmm::memory
