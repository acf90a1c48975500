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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <map>
#include <set>

#include "submpc/random_source.h"
#include "submpc/sampling.h"

namespace submpc {
namespace {

// Every m-subset of {0..n-1} as a bitmask; the oracle for the enumerations.
std::vector<std::uint32_t> Masks(int n, int m) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) == m) out.push_back(mask);
  }
  return out;
}

Rational OracleExpectedAbsError(const FunctionTable& f1, const Sequence& x, const Sequence& y,
                                int m) {
  const int n = static_cast<int>(x.size());
  const Rational truth = f1.EvalSumType(x, y);
  const auto masks = Masks(n, m);
  Rational total = 0;
  for (std::uint32_t mask : masks) {
    Rational sum = 0;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) sum += f1(x[i], y[i]);
    }
    total += Abs(sum / m - truth);
  }
  return total / static_cast<long long>(masks.size());
}

Sequence FromBits(std::uint32_t bits, int n) {
  Sequence s(n);
  for (int i = 0; i < n; ++i) s[i] = bits >> i & 1;
  return s;
}

TEST(IndexSetTest, Validation) {
  EXPECT_NO_THROW(IndexSet(5, {5, 1, 3}));
  EXPECT_EQ(IndexSet(5, {5, 1, 3}).indices(), (std::vector<std::uint64_t>{1, 3, 5}));
  EXPECT_THROW(IndexSet(5, {0}), std::invalid_argument);
  EXPECT_THROW(IndexSet(5, {6}), std::invalid_argument);
  EXPECT_THROW(IndexSet(5, {2, 2}), std::invalid_argument);
  EXPECT_THROW(IndexSet(5, {}), std::invalid_argument);
}

TEST(IndexSamplerTest, ExactlyUniformOverSubsets) {
  for (std::uint64_t n = 1; n <= 6; ++n) {
    for (std::uint64_t m = 1; m <= n; ++m) {
      std::map<std::vector<std::uint64_t>, Rational> dist;
      EnumeratingRandomSource rng;
      do {
        const IndexSet s = SampleIndices(n, m, rng);
        dist[s.indices()] += rng.LeafWeight();
      } while (rng.Advance());
      ASSERT_EQ(BigInt(dist.size()), Binomial(n, m));
      for (const auto& [subset, p] : dist) {
        EXPECT_EQ(p, Rational(1) / Rational(Binomial(n, m))) << n << " " << m;
      }
    }
  }
}

TEST(IndexSamplerTest, ReusableSamplerStaysUniform) {
  IndexSampler sampler(4);
  SeededRandomSource rng(11);
  std::map<std::vector<std::uint64_t>, int> hits;
  for (int i = 0; i < 6000; ++i) hits[sampler.Sample(2, rng).indices()]++;
  ASSERT_EQ(hits.size(), 6u);
  for (const auto& [s, c] : hits) EXPECT_NEAR(c, 1000, 150);
}

TEST(ForEachSubsetTest, LexicographicAndComplete) {
  std::vector<std::vector<std::uint32_t>> seen;
  ForEachSubset(6, 3, [&](std::span<const std::uint32_t> s) { seen.emplace_back(s.begin(), s.end()); });
  ASSERT_EQ(seen.size(), 20u);
  EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
  EXPECT_EQ(std::set(seen.begin(), seen.end()).size(), 20u);
}

TEST(EstimatorTest, PartialFrequencyAndEstimate) {
  const auto f = HammingTable(2, 2);
  const Sequence x = {0, 1, 1, 0, 1};
  const Sequence y = {0, 0, 1, 1, 1};
  const IndexSet idx(5, {1, 2, 4});
  const auto l = PartialFrequency(x, y, idx, 2, 2);
  EXPECT_EQ(l.counts, (std::vector<std::uint64_t>{1, 1, 1, 0}));
  EXPECT_EQ(EstimateFunction(f, x, y, idx), Rational(2, 3));
  EXPECT_EQ(EstimateFunctionFromCounts(f, l), Rational(2, 3));
  EXPECT_EQ(EstimateFunction(f, x, y, IndexSet(5, {1, 2, 3, 4, 5})), f.EvalSumType(x, y));
}

// Mean N/n and variance N(n-N)(n-m)/(m n^2 (n-1)) of L/m, against subset
// enumeration in the test.
TEST(HypergeometricTest, MomentsMatchEnumeration) {
  for (int n = 1; n <= 10; ++n) {
    for (int big_n = 0; big_n <= n; ++big_n) {
      for (int m = 1; m <= n; ++m) {
        const auto masks = Masks(n, m);
        const std::uint32_t marked = (1u << big_n) - 1;
        Rational mean = 0, second = 0;
        for (std::uint32_t mask : masks) {
          const Rational p(std::popcount(mask & marked), m);
          mean += p;
          second += p * p;
        }
        mean /= static_cast<long long>(masks.size());
        second /= static_cast<long long>(masks.size());
        const auto stats = HypergeometricStats(n, m, big_n);
        ASSERT_EQ(stats.mean, mean);
        ASSERT_EQ(stats.variance, second - mean * mean) << n << " " << big_n << " " << m;
      }
    }
  }
}

TEST(HypergeometricTest, PmfMatchesCounting) {
  for (int n = 1; n <= 9; ++n) {
    for (int s = 0; s <= n; ++s) {
      for (int m = 1; m <= n; ++m) {
        const auto masks = Masks(n, m);
        std::map<int, long long> counts;
        for (std::uint32_t mask : masks) counts[std::popcount(mask & ((1u << s) - 1))]++;
        Rational total = 0;
        for (int k = 0; k <= m; ++k) {
          const Rational expected(counts[k], static_cast<long long>(masks.size()));
          EXPECT_EQ(HypergeometricPmf(n, s, m, k), expected);
          total += HypergeometricPmf(n, s, m, k);
        }
        EXPECT_EQ(total, 1);
      }
    }
  }
}

TEST(HypergeometricTest, MseBoundBelowOneOverM) {
  for (std::uint64_t n = 2; n <= 40; n += 3) {
    for (std::uint64_t m = 1; m <= n; m += 2) {
      const std::vector<std::uint64_t> counts = {n / 3, n / 4, n - n / 3 - n / 4, 0};
      const auto b = MseAndL2Bounds(n, m, counts);
      Rational oracle = 0;
      for (auto c : counts) {
        oracle += Rational(c * (n - c) * (n - m)) / Rational(m * n * n * (n - 1));
      }
      EXPECT_EQ(b.sigma_mse, oracle);
      EXPECT_LE(b.sigma_mse, Rational(1, m));
      EXPECT_NEAR(b.l2_bound, std::sqrt(ToDouble(oracle)), 1e-12);
    }
  }
  EXPECT_EQ(HypergeometricStats(1, 1, 1).variance, 0);
}

TEST(DistortionTest, ExactExpectedAbsErrorMatchesOracle) {
  const auto f = SquaredDifferenceTable(3, 3);
  SeededRandomSource rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 8;
    Sequence x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = rng.Uniform(3);
      y[i] = rng.Uniform(3);
    }
    for (int m = 1; m <= n; ++m) {
      EXPECT_EQ(ExactExpectedAbsError(f, x, y, m), OracleExpectedAbsError(f, x, y, m));
    }
    EXPECT_EQ(ExactExpectedAbsError(f, x, y, n), 0);
  }
}

TEST(DistortionTest, BudgetIsEnforced) {
  const auto f = HammingTable(2, 2);
  const Sequence x(30, 0), y(30, 1);
  EXPECT_THROW(ExactExpectedAbsError(f, x, y, 15, 1000), BudgetExceededError);
}

TEST(DistortionTest, ExhaustiveSearchMatchesBruteForce) {
  const auto f = HammingTable(2, 2);
  for (int n = 1; n <= 4; ++n) {
    for (int m = 1; m <= n; ++m) {
      Rational best = 0;
      for (std::uint32_t xb = 0; xb < (1u << n); ++xb) {
        for (std::uint32_t yb = 0; yb < (1u << n); ++yb) {
          best = std::max(best, OracleExpectedAbsError(f, FromBits(xb, n), FromBits(yb, n), m));
        }
      }
      DistortionSearchOptions options;
      const auto d = WorstCaseDistortion(f, n, m, options);
      ASSERT_TRUE(d.exact.has_value());
      EXPECT_EQ(*d.exact, best) << n << " " << m;
      EXPECT_EQ(OracleExpectedAbsError(f, d.argmax_x, d.argmax_y, m), best);
      EXPECT_LE(ToDouble(best), d.bound);
      EXPECT_DOUBLE_EQ(d.bound, std::sqrt(2.0 / m));
    }
  }
}

TEST(DistortionTest, SampledErrorConvergesToExact) {
  const auto f = HammingTable(2, 2);
  const auto [x, y] = GenerateSequences("half-mismatch", 12, 2, 2);
  const double exact = ToDouble(ExactExpectedAbsError(f, x, y, 4));
  SeededRandomSource rng(9);
  EXPECT_NEAR(SampledExpectedAbsError(f, x, y, 4, 40'000, rng), exact, 0.01);
}

TEST(DistortionTest, MonteCarloStaysBelowBound) {
  const auto f = HammingTable(2, 2);
  DistortionSearchOptions options;
  options.mode = DistortionMode::kMonteCarlo;
  options.trials = 2000;
  const auto d = WorstCaseDistortion(f, 200, 10, options);
  EXPECT_GT(d.value, 0);
  EXPECT_LE(d.value, d.bound);
  EXPECT_FALSE(d.exact.has_value());
}

TEST(GeneratorTest, Definitions) {
  {
    const auto [x, y] = GenerateSequences("half-mismatch", 7, 2, 2);
    EXPECT_EQ(x, Sequence(7, 0));
    EXPECT_EQ(y, (Sequence{1, 1, 1, 0, 0, 0, 0}));
  }
  {
    const auto [x, y] = GenerateSequences("periodic", 6, 2, 3);
    EXPECT_EQ(x, (Sequence{0, 1, 0, 1, 0, 1}));
    EXPECT_EQ(y, (Sequence{0, 0, 1, 1, 2, 2}));
  }
  {
    const auto [x, y] = GenerateSequences("all-mismatch", 3, 2, 2);
    EXPECT_EQ(y, Sequence(3, 1));
  }
  EXPECT_EQ(GenerateSequences("seeded-random", 50, 3, 3, 4),
            GenerateSequences("seeded-random", 50, 3, 3, 4));
  EXPECT_NE(GenerateSequences("seeded-random", 50, 3, 3, 4),
            GenerateSequences("seeded-random", 50, 3, 3, 5));
  EXPECT_THROW(GenerateSequences("nope", 3, 2, 2), std::invalid_argument);
}

}  // namespace
}  // namespace submpc
