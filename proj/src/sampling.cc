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

#include "submpc/sampling.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace submpc {

IndexSet::IndexSet(std::uint64_t n, std::vector<std::uint64_t> indices)
    : n_(n), indices_(std::move(indices)) {
  if (indices_.empty()) throw std::invalid_argument("index set must be nonempty (m >= 1)");
  if (indices_.size() > n_) {
    throw std::invalid_argument("sample size m=" + std::to_string(indices_.size()) +
                                " exceeds n=" + std::to_string(n_));
  }
  std::sort(indices_.begin(), indices_.end());
  for (std::size_t j = 0; j < indices_.size(); ++j) {
    if (indices_[j] < 1 || indices_[j] > n_) {
      throw std::invalid_argument("index " + std::to_string(indices_[j]) + " outside [1, " +
                                  std::to_string(n_) + "]");
    }
    if (j > 0 && indices_[j] == indices_[j - 1]) {
      throw std::invalid_argument("duplicate index " + std::to_string(indices_[j]));
    }
  }
}

IndexSampler::IndexSampler(std::uint64_t n) : positions_(n) {
  std::iota(positions_.begin(), positions_.end(), std::uint64_t{0});
}

std::span<const std::uint64_t> IndexSampler::SampleZeroBased(std::uint64_t m, RandomSource& rng) {
  const std::uint64_t n = positions_.size();
  if (m == 0) throw std::invalid_argument("sample size m must be >= 1");
  if (m > n) {
    throw std::invalid_argument("sample size m=" + std::to_string(m) + " exceeds n=" +
                                std::to_string(n));
  }
  // Undo the previous draw so the array is the identity again.
  for (auto it = swaps_.rbegin(); it != swaps_.rend(); ++it) {
    std::swap(positions_[it->first], positions_[it->second]);
  }
  swaps_.clear();
  for (std::uint64_t j = 0; j < m; ++j) {
    const std::uint64_t r = j + rng.Uniform(n - j);
    std::swap(positions_[j], positions_[r]);
    swaps_.emplace_back(j, r);
  }
  return {positions_.data(), m};
}

IndexSet IndexSampler::Sample(std::uint64_t m, RandomSource& rng) {
  auto draw = SampleZeroBased(m, rng);
  std::vector<std::uint64_t> one_based(draw.begin(), draw.end());
  for (auto& i : one_based) ++i;
  return IndexSet(positions_.size(), std::move(one_based));
}

IndexSet SampleIndices(std::uint64_t n, std::uint64_t m, RandomSource& rng) {
  if (m == 0) throw std::invalid_argument("sample size m must be >= 1");
  if (m > n) {
    throw std::invalid_argument("sample size m=" + std::to_string(m) + " exceeds n=" +
                                std::to_string(n));
  }
  IndexSampler sampler(n);
  return sampler.Sample(m, rng);
}

void ForEachSubset(std::uint64_t n, std::uint64_t m,
                   const std::function<void(std::span<const std::uint32_t>)>& fn) {
  if (m > n) return;
  std::vector<std::uint32_t> subset(m);
  std::iota(subset.begin(), subset.end(), 0u);
  for (;;) {
    fn(subset);
    // Find the rightmost slot that can still move right.
    std::int64_t j = static_cast<std::int64_t>(m) - 1;
    while (j >= 0 && subset[j] == n - m + j) --j;
    if (j < 0) return;
    ++subset[j];
    for (std::uint64_t k = j + 1; k < m; ++k) subset[k] = subset[k - 1] + 1;
  }
}

std::vector<Rational> JointTypeEstimate::Probabilities() const {
  std::vector<Rational> out;
  out.reserve(counts.size());
  for (std::size_t c = 0; c < counts.size(); ++c) out.push_back(Probability(c));
  return out;
}

JointTypeEstimate PartialFrequency(const Sequence& x, const Sequence& y, const IndexSet& indices,
                                   std::size_t x_size, std::size_t y_size) {
  if (x.size() != y.size() || x.size() != indices.n()) {
    throw std::invalid_argument("sequence lengths do not match the index set's n");
  }
  JointTypeEstimate est{std::vector<std::uint64_t>(x_size * y_size, 0), indices.m()};
  for (std::uint64_t i : indices.indices()) {
    const Symbol a = x[i - 1], b = y[i - 1];
    if (a >= x_size || b >= y_size) {
      throw std::invalid_argument("symbol out of alphabet at position " + std::to_string(i));
    }
    ++est.counts[a * y_size + b];
  }
  return est;
}

Rational EstimateFunctionFromCounts(const FunctionTable& f1, const JointTypeEstimate& counts) {
  if (counts.counts.size() != f1.cell_count()) {
    throw std::invalid_argument("joint type size does not match f1");
  }
  Rational sum = 0;
  for (std::size_t c = 0; c < counts.counts.size(); ++c) {
    sum += f1.values()[c] * counts.counts[c];
  }
  return sum / counts.m;
}

Rational EstimateFunction(const FunctionTable& f1, const Sequence& x, const Sequence& y,
                          const IndexSet& indices) {
  f1.CheckSequences(x, y);
  if (x.size() != indices.n()) {
    throw std::invalid_argument("sequence length " + std::to_string(x.size()) +
                                " does not match index set n=" + std::to_string(indices.n()));
  }
  BigInt sum = 0;
  for (std::uint64_t i : indices.indices()) sum += f1.scaled_values()[f1.Cell(x[i - 1], y[i - 1])];
  Rational estimate(sum, f1.common_denominator() * indices.m());
  assert(estimate == EstimateFunctionFromCounts(
                         f1, PartialFrequency(x, y, indices, f1.x_size(), f1.y_size())));
  return estimate;
}

HypergeometricMoments HypergeometricStats(std::uint64_t n, std::uint64_t m,
                                          std::uint64_t class_size) {
  if (m == 0 || m > n) throw std::invalid_argument("require 1 <= m <= n");
  if (class_size > n) throw std::invalid_argument("class size exceeds n");
  HypergeometricMoments out{Rational(class_size, n), Rational(0)};
  if (n > 1) {
    const BigInt N = class_size;
    out.variance = Rational(N * (n - class_size) * (n - m), BigInt(m) * n * n * (n - 1));
  }
  return out;
}

Rational HypergeometricPmf(std::uint64_t n, std::uint64_t successes, std::uint64_t m,
                           std::uint64_t k) {
  if (successes > n || m > n) throw std::invalid_argument("invalid hypergeometric parameters");
  if (k > successes || k > m || m - k > n - successes) return 0;
  return Rational(Binomial(successes, k) * Binomial(n - successes, m - k), Binomial(n, m));
}

MseBounds MseAndL2Bounds(std::uint64_t n, std::uint64_t m, std::span<const std::uint64_t> counts) {
  const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (total != n) {
    throw std::invalid_argument("joint type sums to " + std::to_string(total) + ", expected n=" +
                                std::to_string(n));
  }
  Rational sigma = 0;
  for (std::uint64_t c : counts) sigma += HypergeometricStats(n, m, c).variance;
  if (sigma > Rational(1, m)) {
    throw std::logic_error("summed variance " + FormatRational(sigma) + " exceeds 1/m");
  }
  return {sigma, std::sqrt(ToDouble(sigma))};
}

namespace {

// Per-position D * f1(x_i, y_i).
std::vector<std::int64_t> ScaledTerms(const FunctionTable& f1, const Sequence& x,
                                      const Sequence& y) {
  std::vector<std::int64_t> terms(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) terms[i] = f1.scaled_values()[f1.Cell(x[i], y[i])];
  return terms;
}

// Sum over all m-subsets of |n * S_I - m * T| with S_I the subset sum and T
// the full sum. Dividing by C(n, m) * m * n * D gives E|F_hat - f_n|.
BigInt SumAbsDeviation(std::span<const std::int64_t> terms, std::uint64_t m) {
  const auto n = static_cast<__int128>(terms.size());
  const __int128 total = std::accumulate(terms.begin(), terms.end(), __int128{0});
  __int128 acc = 0;
  ForEachSubset(terms.size(), m, [&](std::span<const std::uint32_t> subset) {
    __int128 s = 0;
    for (std::uint32_t i : subset) s += terms[i];
    __int128 dev = n * s - static_cast<__int128>(m) * total;
    acc += dev < 0 ? -dev : dev;
  });
  // __int128 has no direct cpp_int conversion; go through two halves.
  const bool negative = acc < 0;
  unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(acc) : acc;
  BigInt out = static_cast<std::uint64_t>(mag >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(mag);
  return negative ? BigInt(-out) : out;
}

Rational ExpectedAbsErrorFromTerms(std::span<const std::int64_t> terms, std::uint64_t m,
                                   const BigInt& denominator) {
  const std::uint64_t n = terms.size();
  return Rational(SumAbsDeviation(terms, m), Binomial(n, m) * m * n * denominator);
}

double SampledAbsErrorFromTerms(std::span<const std::int64_t> terms, std::uint64_t m,
                                std::uint64_t trials, const BigInt& denominator,
                                IndexSampler& sampler, RandomSource& rng) {
  const std::uint64_t n = terms.size();
  const __int128 total = std::accumulate(terms.begin(), terms.end(), __int128{0});
  long double acc = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    __int128 s = 0;
    for (std::uint64_t i : sampler.SampleZeroBased(m, rng)) s += terms[i];
    const __int128 dev = static_cast<__int128>(n) * s - static_cast<__int128>(m) * total;
    acc += static_cast<long double>(dev < 0 ? -dev : dev);
  }
  return static_cast<double>(acc / trials /
                             (static_cast<long double>(m) * n * denominator.convert_to<long double>()));
}

void CheckBudget(const std::string& what, const BigInt& required, std::uint64_t budget) {
  if (required > budget) throw BudgetExceededError(what, required, budget);
}

}  // namespace

Rational ExactExpectedAbsError(const FunctionTable& f1, const Sequence& x, const Sequence& y,
                               std::uint64_t m, std::uint64_t budget) {
  f1.CheckSequences(x, y);
  if (m == 0 || m > x.size()) throw std::invalid_argument("require 1 <= m <= n");
  CheckBudget("subset enumeration", Binomial(x.size(), m), budget);
  const auto terms = ScaledTerms(f1, x, y);
  return ExpectedAbsErrorFromTerms(terms, m, f1.common_denominator());
}

double SampledExpectedAbsError(const FunctionTable& f1, const Sequence& x, const Sequence& y,
                               std::uint64_t m, std::uint64_t trials, RandomSource& rng) {
  f1.CheckSequences(x, y);
  if (m == 0 || m > x.size()) throw std::invalid_argument("require 1 <= m <= n");
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  IndexSampler sampler(x.size());
  return SampledAbsErrorFromTerms(ScaledTerms(f1, x, y), m, trials, f1.common_denominator(),
                                  sampler, rng);
}

std::vector<std::string> SequenceGeneratorNames() {
  return {"all-match", "all-mismatch", "half-mismatch", "periodic", "seeded-random"};
}

std::pair<Sequence, Sequence> GenerateSequences(std::string_view generator, std::uint64_t n,
                                                std::size_t x_size, std::size_t y_size,
                                                std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sequence length must be >= 1");
  Sequence x(n, 0), y(n, 0);
  const Symbol mismatch = static_cast<Symbol>(1 % y_size);
  if (generator == "all-match") {
  } else if (generator == "all-mismatch") {
    std::fill(y.begin(), y.end(), mismatch);
  } else if (generator == "half-mismatch") {
    std::fill(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n / 2), mismatch);
  } else if (generator == "periodic") {
    for (std::uint64_t i = 0; i < n; ++i) {
      x[i] = static_cast<Symbol>(i % x_size);
      y[i] = static_cast<Symbol>((i / x_size) % y_size);
    }
  } else if (generator == "seeded-random") {
    SeededRandomSource rng(seed);
    for (std::uint64_t i = 0; i < n; ++i) {
      x[i] = static_cast<Symbol>(rng.Uniform(x_size));
      y[i] = static_cast<Symbol>(rng.Uniform(y_size));
    }
  } else {
    throw std::invalid_argument("unknown sequence generator '" + std::string(generator) + "'");
  }
  return {std::move(x), std::move(y)};
}

namespace {

DistortionEstimate ExhaustiveSearch(const FunctionTable& f1, std::uint64_t n, std::uint64_t m,
                                    const DistortionSearchOptions& options) {
  const BigInt pairs = boost::multiprecision::pow(BigInt(f1.x_size() * f1.y_size()),
                                                  static_cast<unsigned>(n));
  CheckBudget("exhaustive distortion search", pairs * Binomial(n, m), options.budget);

  DistortionEstimate best;
  best.exact = Rational(0);
  best.argmax_x.assign(n, 0);
  best.argmax_y.assign(n, 0);
  // The expectation depends only on the multiset of per-position values, so
  // cache it by the sorted term vector.
  std::map<std::vector<std::int64_t>, Rational> cache;
  std::vector<std::size_t> cells(n, 0);
  const std::size_t cell_count = f1.cell_count();
  for (;;) {
    std::vector<std::int64_t> terms(n);
    for (std::uint64_t i = 0; i < n; ++i) terms[i] = f1.scaled_values()[cells[i]];
    std::sort(terms.begin(), terms.end());
    auto it = cache.find(terms);
    if (it == cache.end()) {
      it = cache.emplace(terms, ExpectedAbsErrorFromTerms(terms, m, f1.common_denominator()))
               .first;
    }
    ++best.candidates;
    if (it->second > *best.exact) {
      best.exact = it->second;
      for (std::uint64_t i = 0; i < n; ++i) {
        best.argmax_x[i] = static_cast<Symbol>(cells[i] / f1.y_size());
        best.argmax_y[i] = static_cast<Symbol>(cells[i] % f1.y_size());
      }
    }
    std::uint64_t i = 0;
    while (i < n && ++cells[i] == cell_count) cells[i++] = 0;
    if (i == n) break;
  }
  best.value = ToDouble(*best.exact);
  // e_n <= ||f1|| / sqrt(m)  <=>  m * e_n^2 <= ||f1||^2, checked exactly.
  if (*best.exact * *best.exact * m > f1.L2NormSquared()) {
    throw std::logic_error("exhaustive distortion " + FormatRational(*best.exact) +
                           " exceeds ||f1||_2/sqrt(m)");
  }
  return best;
}

DistortionEstimate MonteCarloSearch(const FunctionTable& f1, std::uint64_t n, std::uint64_t m,
                                    const DistortionSearchOptions& options) {
  std::vector<std::pair<Sequence, Sequence>> candidates;
  // Mixtures of the lowest- and highest-valued cells maximize the spread of
  // per-position values, which is where subsampling error peaks.
  const auto& v = f1.scaled_values();
  const std::size_t lo = std::min_element(v.begin(), v.end()) - v.begin();
  const std::size_t hi = std::max_element(v.begin(), v.end()) - v.begin();
  for (std::uint64_t eighth = 0; eighth <= 8; ++eighth) {
    const std::uint64_t high_count = n * eighth / 8;
    Sequence x(n), y(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      const std::size_t c = i < high_count ? hi : lo;
      x[i] = static_cast<Symbol>(c / f1.y_size());
      y[i] = static_cast<Symbol>(c % f1.y_size());
    }
    candidates.emplace_back(std::move(x), std::move(y));
  }
  for (const auto& name : SequenceGeneratorNames()) {
    if (name == "seeded-random") continue;
    candidates.push_back(GenerateSequences(name, n, f1.x_size(), f1.y_size()));
  }
  for (std::uint64_t r = 0; r < options.random_candidates; ++r) {
    candidates.push_back(
        GenerateSequences("seeded-random", n, f1.x_size(), f1.y_size(), options.seed + r));
  }

  DistortionEstimate best;
  const bool exact_inner = Binomial(n, m) <= options.budget;
  best.trials = exact_inner ? 0 : options.trials;
  if (exact_inner) best.exact = Rational(0);
  IndexSampler sampler(n);
  double best_value = -1;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const auto& [x, y] = candidates[c];
    const auto terms = ScaledTerms(f1, x, y);
    double value;
    if (exact_inner) {
      Rational e = ExpectedAbsErrorFromTerms(terms, m, f1.common_denominator());
      value = ToDouble(e);
      if (e > *best.exact) best.exact = e;
    } else {
      SeededRandomSource rng(options.seed, c);
      value = SampledAbsErrorFromTerms(terms, m, options.trials, f1.common_denominator(), sampler,
                                       rng);
    }
    ++best.candidates;
    if (value > best_value) {
      best_value = value;
      best.argmax_x = x;
      best.argmax_y = y;
    }
  }
  best.value = best_value;
  if (best.value > f1.L2Norm() / std::sqrt(static_cast<double>(m))) {
    throw std::logic_error("Monte Carlo distortion " + std::to_string(best.value) +
                           " exceeds ||f1||_2/sqrt(m)");
  }
  return best;
}

}  // namespace

DistortionEstimate WorstCaseDistortion(const FunctionTable& f1, std::uint64_t n, std::uint64_t m,
                                       const DistortionSearchOptions& options) {
  if (m == 0 || m > n) throw std::invalid_argument("require 1 <= m <= n");
  DistortionEstimate result = options.mode == DistortionMode::kExhaustive
                                  ? ExhaustiveSearch(f1, n, m, options)
                                  : MonteCarloSearch(f1, n, m, options);
  result.bound = f1.L2Norm() / std::sqrt(static_cast<double>(m));
  return result;
}

}  // namespace submpc
