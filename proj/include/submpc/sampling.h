// Copyright 2026 The SubMPC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Random subsampling of sequence positions and the estimators built on it.
//
// Given m positions I drawn uniformly without replacement from {1..n}, the
// partial frequency L(x, y) counts sampled positions holding (x, y). L is
// hypergeometric, so P_hat = L / m is an unbiased estimate of the joint type
// with summed variance at most 1/m. The function estimate
//
//   F_hat = (1/m) sum_{i in I} f1(x_i, y_i) = (1/m) sum_{x,y} f1(x, y) L(x, y)
//
// then has expected absolute error at most ||f1||_2 / sqrt(m) for every pair
// of sequences, regardless of n.

#ifndef SUBMPC_SAMPLING_H_
#define SUBMPC_SAMPLING_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "submpc/function_table.h"
#include "submpc/random_source.h"
#include "submpc/rational.h"

namespace submpc {

inline constexpr std::uint64_t kDefaultSubsetBudget = 1'000'000;

// Thrown when an exhaustive computation would exceed its configured budget.
class BudgetExceededError : public std::runtime_error {
 public:
  BudgetExceededError(const std::string& what, BigInt required, BigInt budget)
      : std::runtime_error(what + ": requires " + required.str() + ", budget " + budget.str()),
        required_(std::move(required)),
        budget_(std::move(budget)) {}
  const BigInt& required() const { return required_; }
  const BigInt& budget() const { return budget_; }

 private:
  BigInt required_;
  BigInt budget_;
};

// m distinct positions in {1..n}, kept sorted ascending.
class IndexSet {
 public:
  // Throws std::invalid_argument unless the indices are distinct, in range
  // and 1 <= m <= n.
  IndexSet(std::uint64_t n, std::vector<std::uint64_t> indices);

  std::uint64_t n() const { return n_; }
  std::uint64_t m() const { return indices_.size(); }
  const std::vector<std::uint64_t>& indices() const { return indices_; }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::uint64_t n_;
  std::vector<std::uint64_t> indices_;
};

// Partial Fisher-Yates over a reusable position array. Each call costs O(m)
// after construction, which matters for Monte Carlo loops with large n.
class IndexSampler {
 public:
  explicit IndexSampler(std::uint64_t n);

  // Draws m positions; every m-subset has probability 1 / C(n, m).
  IndexSet Sample(std::uint64_t m, RandomSource& rng);
  // Same draw, unsorted and zero-based, without allocating an IndexSet.
  std::span<const std::uint64_t> SampleZeroBased(std::uint64_t m, RandomSource& rng);

 private:
  std::vector<std::uint64_t> positions_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> swaps_;
};

IndexSet SampleIndices(std::uint64_t n, std::uint64_t m, RandomSource& rng);

// Calls `fn` with every m-subset of {0..n-1} (zero-based, ascending) in
// lexicographic order.
void ForEachSubset(std::uint64_t n, std::uint64_t m,
                   const std::function<void(std::span<const std::uint32_t>)>& fn);

struct JointTypeEstimate {
  std::vector<std::uint64_t> counts;  // L(x, y), row-major
  std::uint64_t m = 0;

  Rational Probability(std::size_t cell) const { return Rational(counts[cell], m); }
  std::vector<Rational> Probabilities() const;
};

JointTypeEstimate PartialFrequency(const Sequence& x, const Sequence& y, const IndexSet& indices,
                                   std::size_t x_size, std::size_t y_size);

// F_hat from the per-position sum. In debug builds this is cross-checked
// against the partial-frequency expansion.
Rational EstimateFunction(const FunctionTable& f1, const Sequence& x, const Sequence& y,
                          const IndexSet& indices);
// F_hat from (1/m) sum_{x,y} f1(x, y) L(x, y).
Rational EstimateFunctionFromCounts(const FunctionTable& f1, const JointTypeEstimate& counts);

struct HypergeometricMoments {
  Rational mean;
  Rational variance;
};

// Mean and variance of P_hat(x, y) = L(x, y) / m when N(x, y) = `class_size`.
HypergeometricMoments HypergeometricStats(std::uint64_t n, std::uint64_t m,
                                          std::uint64_t class_size);

// P(L = k) for L ~ Hypergeometric(population n, successes K, draws m), exact.
Rational HypergeometricPmf(std::uint64_t n, std::uint64_t successes, std::uint64_t m,
                           std::uint64_t k);

struct MseBounds {
  Rational sigma_mse;  // sum of per-cell variances, <= 1/m
  double l2_bound;     // sqrt(sigma_mse), bounds E ||P_hat - P||_2
};

// `counts` is the full joint type N and must sum to n.
MseBounds MseAndL2Bounds(std::uint64_t n, std::uint64_t m, std::span<const std::uint64_t> counts);

// E|F_hat - f_n| over all C(n, m) index sets, exactly.
Rational ExactExpectedAbsError(const FunctionTable& f1, const Sequence& x, const Sequence& y,
                               std::uint64_t m, std::uint64_t budget = kDefaultSubsetBudget);

// Mean of |F_hat - f_n| over `trials` independently drawn index sets.
double SampledExpectedAbsError(const FunctionTable& f1, const Sequence& x, const Sequence& y,
                               std::uint64_t m, std::uint64_t trials, RandomSource& rng);

// Named sequence-pair generators, version 1. Symbols are alphabet positions:
//   all-match      x_i = 0, y_i = 0
//   all-mismatch   x_i = 0, y_i = 1 mod |Y|
//   half-mismatch  the first floor(n/2) positions mismatch, the rest match
//   periodic       x_i = i mod |X|, y_i = (i / |X|) mod |Y|
//   seeded-random  iid uniform symbols from SeededRandomSource(seed)
std::pair<Sequence, Sequence> GenerateSequences(std::string_view generator, std::uint64_t n,
                                                std::size_t x_size, std::size_t y_size,
                                                std::uint64_t seed = 0);
std::vector<std::string> SequenceGeneratorNames();

enum class DistortionMode { kExhaustive, kMonteCarlo };

struct DistortionSearchOptions {
  DistortionMode mode = DistortionMode::kExhaustive;
  // Monte Carlo: sampled index sets per candidate when C(n, m) > budget.
  std::uint64_t trials = 10'000;
  // Monte Carlo: additional iid random candidate pairs.
  std::uint64_t random_candidates = 8;
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultSubsetBudget;
};

struct DistortionEstimate {
  double value = 0;                 // best e_n found
  std::optional<Rational> exact;    // set when every candidate was enumerated exactly
  Sequence argmax_x;
  Sequence argmax_y;
  double bound = 0;                 // ||f1||_2 / sqrt(m)
  std::uint64_t candidates = 0;     // sequence pairs evaluated
  std::uint64_t trials = 0;         // 0 when the inner expectation was exact
};

// Maximizes E|F_hat - f_n| over sequence pairs of length n. Exhaustive mode
// visits all |X|^n |Y|^n pairs and checks the result against the bound;
// Monte Carlo mode searches structured adversarial pairs plus random ones
// and only reports the best lower bound it found. Both modes throw
// std::logic_error if the result exceeds ||f1||_2 / sqrt(m).
DistortionEstimate WorstCaseDistortion(const FunctionTable& f1, std::uint64_t n, std::uint64_t m,
                                       const DistortionSearchOptions& options);

}  // namespace submpc

#endif  // SUBMPC_SAMPLING_H_
