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

// Acceptance checks. Prints one line per criterion and exits nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "submpc/analysis.h"
#include "submpc/protocols.h"
#include "submpc/random_source.h"
#include "submpc/sampling.h"
#include "support/broken_otp.h"

namespace submpc {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int Lg(std::uint64_t v) {
  int bits = 0;
  while ((std::uint64_t{1} << bits) < v) ++bits;
  return bits;
}

Rational PlainEstimate(const FunctionTable& f1, const Sequence& x, const Sequence& y,
                       const IndexSet& indices) {
  Rational sum = 0;
  for (auto i : indices.indices()) sum += f1(x[i - 1], y[i - 1]);
  return sum / static_cast<long long>(indices.m());
}

// 1. Mean N/n and variance N(n-N)(n-m)/(m n^2 (n-1)) of every cell of
// P_hat, over all joint types of binary pairs, n <= 10.
Outcome ExactMoments() {
  std::uint64_t checks = 0;
  for (std::uint64_t n = 1; n <= 10; ++n) {
    for (std::uint64_t a = 0; a <= n; ++a) {
      for (std::uint64_t b = 0; a + b <= n; ++b) {
        for (std::uint64_t c = 0; a + b + c <= n; ++c) {
          const std::uint64_t counts[4] = {a, b, c, n - a - b - c};
          Sequence x, y;
          for (Symbol cell = 0; cell < 4; ++cell) {
            for (std::uint64_t k = 0; k < counts[cell]; ++k) {
              x.push_back(cell / 2);
              y.push_back(cell % 2);
            }
          }
          for (std::uint64_t m = 1; m <= n; ++m) {
            std::uint64_t sum[4] = {}, sum_sq[4] = {}, subsets = 0;
            ForEachSubset(n, m, [&](std::span<const std::uint32_t> s) {
              std::vector<std::uint64_t> one_based(s.begin(), s.end());
              for (auto& i : one_based) ++i;
              const auto l = PartialFrequency(x, y, IndexSet(n, one_based), 2, 2);
              for (int cell = 0; cell < 4; ++cell) {
                sum[cell] += l.counts[cell];
                sum_sq[cell] += l.counts[cell] * l.counts[cell];
              }
              ++subsets;
            });
            if (BigInt(subsets) != Binomial(n, m)) return {false, "subset count mismatch"};
            for (int cell = 0; cell < 4; ++cell) {
              const std::uint64_t big_n = counts[cell];
              const Rational mean = Rational(sum[cell]) / Rational(subsets * m);
              const Rational var =
                  Rational(sum_sq[cell]) / Rational(subsets * m * m) - mean * mean;
              const Rational want_var =
                  n == 1 ? Rational(0)
                         : Rational(big_n * (n - big_n) * (n - m)) / Rational(m * n * n * (n - 1));
              const auto lib = HypergeometricStats(n, m, big_n);
              if (mean != Rational(big_n, n) || var != want_var || lib.mean != mean ||
                  lib.variance != var) {
                return {false, "n=" + std::to_string(n) + " m=" + std::to_string(m) + " N=" +
                                   std::to_string(big_n) + " mismatch"};
              }
              ++checks;
            }
          }
        }
      }
    }
  }
  return {true, std::to_string(checks) + " (type, m, cell) checks, zero tolerance"};
}

// 2. Exhaustive worst case, e_n^2 * m <= ||f1||_2^2 in exact arithmetic.
Outcome DistortionBound() {
  DistortionSearchOptions options;
  Rational worst_ratio = 0;
  std::uint64_t cells = 0;
  for (const auto& f1 : {HammingTable(2, 2), EqualityTable(2, 2)}) {
    for (std::uint64_t n = 1; n <= 6; ++n) {
      for (std::uint64_t m = 1; m <= n; ++m) {
        const auto d = WorstCaseDistortion(f1, n, m, options);
        if (!d.exact) return {false, "inner expectation not exact"};
        const Rational lhs = *d.exact * *d.exact * static_cast<long long>(m);
        if (lhs > f1.L2NormSquared()) {
          return {false, f1.name() + " n=" + std::to_string(n) + " m=" + std::to_string(m) +
                             " e_n=" + FormatRational(*d.exact) + " exceeds bound"};
        }
        worst_ratio = std::max(worst_ratio, lhs / f1.L2NormSquared());
        ++cells;
      }
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%llu cells, max (e_n/bound)^2 = %.4f",
                static_cast<unsigned long long>(cells), ToDouble(worst_ratio));
  return {true, buf};
}

// 3. Random instances per protocol against the plaintext estimate.
Outcome ProtocolCorrectness() {
  SeededRandomSource rng(20261019);
  const std::vector<std::string> names = {"hamming", "equality", "sqdiff", "product"};
  for (ProtocolId id : kAllProtocols) {
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t xs = 1 + rng.Uniform(3), ys = 1 + rng.Uniform(3);
      const FunctionTable f1 = BuiltinTable(names[rng.Uniform(names.size())], xs, ys);
      const std::uint64_t n = 1 + rng.Uniform(24);
      const std::uint64_t m = 1 + rng.Uniform(n);
      Sequence x(n), y(n);
      for (auto& s : x) s = rng.Uniform(xs);
      for (auto& s : y) s = rng.Uniform(ys);
      const auto r = RunProtocol(id, f1, x, y, m, rng.Uniform(1u << 30));
      if (r.estimate != PlainEstimate(f1, x, y, r.indices)) {
        return {false, std::string(ProtocolName(id)) + " trial " + std::to_string(trial)};
      }
    }
  }
  return {true, "3 x 1000 instances, all exact"};
}

// 4. m = n gives f_n exactly.
Outcome FullSample() {
  int runs = 0;
  for (ProtocolId id : kAllProtocols) {
    for (const auto& f1 : {HammingTable(2, 2), EqualityTable(3, 3), SquaredDifferenceTable(3, 3),
                           ProductTable(2, 3)}) {
      for (std::uint64_t n = 1; n <= 16; ++n) {
        const auto [x, y] = GenerateSequences("seeded-random", n, f1.x_size(), f1.y_size(), n);
        const auto r = RunProtocol(id, f1, x, y, n, n);
        if (r.estimate != f1.EvalSumType(x, y)) {
          return {false, std::string(ProtocolName(id)) + " " + f1.name() + " n=" + std::to_string(n)};
        }
        ++runs;
      }
    }
  }
  return {true, std::to_string(runs) + " runs"};
}

// 5. Metered bits against the cost formulas, computed here.
Outcome CostReconciliation() {
  std::string detail;
  for (ProtocolId id : kAllProtocols) {
    int cells = 0;
    for (std::size_t xs : {2u, 3u}) {
      for (std::size_t ys : {2u, 4u}) {
        for (std::uint64_t m : {1u, 2u, 5u, 8u, 13u, 20u}) {
          const std::uint64_t n = 3 * m + xs;
          const FunctionTable f1 = ProductTable(xs, ys);  // rank one
          const auto [x, y] = GenerateSequences("periodic", n, xs, ys);
          const auto r = RunProtocol(id, f1, x, y, m, cells + 1);
          const std::uint64_t lp = Lg(r.params.modulus);
          std::uint64_t formula = 0;
          switch (id) {
            case ProtocolId::kOneTimePad:
              formula = 2 * m * (Lg(xs) + Lg(ys) + xs * ys * lp) + 3 * lp;
              break;
            case ProtocolId::kPolyL:
              formula = (2 * m * (xs + ys) + 2) * lp;
              break;
            case ProtocolId::kPolyDirect:
              formula = (4 * m + 2) * lp;
              break;
          }
          formula += m * Lg(n);
          if (r.total_bits != formula) {
            return {false, std::string(ProtocolName(id)) + " m=" + std::to_string(m) + " metered " +
                               std::to_string(r.total_bits) + " formula " + std::to_string(formula)};
          }
          ++cells;
        }
      }
    }
    detail += std::string(detail.empty() ? "" : ", ") + std::string(ProtocolName(id)) + " " +
              std::to_string(cells) + " cells";
  }
  return {true, detail};
}

// 6. Exact audits at n=2, m=1, binary, smallest admissible prime; the
// salt-stripped control must fail against Charlie.
Outcome PrivacyAudits() {
  const auto f1 = HammingTable(2, 2);
  Outcome out;
  for (ProtocolId id : kAllProtocols) {
    for (const auto& r : AuditAll(MakeAuditTarget(id, f1, 2, 1))) {
      out.detail += std::string(out.detail.empty() ? "" : " ") + std::string(ProtocolName(id)) +
                    "/" + std::string(AuditDefinitionName(r.definition)) + "(p=" +
                    std::to_string(r.modulus) + ")=" + (r.pass ? "ok" : "TV " + FormatRational(r.worst_distance));
      out.pass &= r.pass;
    }
  }
  const auto control = AuditAll(testing::MakeSaltStrippedOtpTarget(ProductTable(2, 2), 2, 1));
  const bool control_caught = !control[static_cast<int>(AuditDefinition::kAgainstCharlie)].pass;
  out.detail += std::string("; salt-stripped control ") + (control_caught ? "caught" : "NOT caught");
  out.pass &= control_caught;
  ProtocolOptions masked;
  masked.opening = OpeningMode::kMasked;
  bool masked_pass = true;
  for (ProtocolId id : {ProtocolId::kPolyL, ProtocolId::kPolyDirect}) {
    for (const auto& r : AuditAll(MakeAuditTarget(id, f1, 2, 1, masked))) masked_pass &= r.pass;
  }
  out.detail += std::string("; masked-opening variants ") + (masked_pass ? "pass" : "fail");
  return out;
}

// 7. R with m = ceil(sqrt n) for poly-l, binary alphabets, from live runs.
Outcome VanishingRate() {
  const auto f1 = HammingTable(2, 2);
  std::vector<Rational> rates;
  for (int e = 6; e <= 16; ++e) {
    const std::uint64_t n = std::uint64_t{1} << e;
    const auto m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    const auto [x, y] = GenerateSequences("seeded-random", n, 2, 2, e);
    rates.push_back(RunProtocol(ProtocolId::kPolyL, f1, x, y, m, e).rate);
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < rates.size(); ++i) decreasing &= rates[i] < rates[i - 1];
  const Rational ratio = rates.back() / rates.front();
  char buf[128];
  std::snprintf(buf, sizeof buf, "R(2^6)=%.4f R(2^16)=%.4f ratio=%.4f, strictly decreasing: %s",
                ToDouble(rates.front()), ToDouble(rates.back()), ToDouble(ratio),
                decreasing ? "yes" : "no");
  return {decreasing && ratio < Rational(1, 10), buf};
}

// 8. Sampled E|F_hat - f_n| against sqrt(2)/10 and an exact hypergeometric
// expectation computed here from log-gamma.
Outcome MonteCarloDistortion() {
  const std::uint64_t n = 10'000, m = 100, trials = 10'000;
  const auto f1 = HammingTable(2, 2);
  const auto [x, y] = GenerateSequences("half-mismatch", n, 2, 2);
  SeededRandomSource rng(8);
  const double mean = SampledExpectedAbsError(f1, x, y, m, trials, rng);
  const double big_k = n / 2;
  auto log_choose = [](double a, double b) {
    return std::lgamma(a + 1) - std::lgamma(b + 1) - std::lgamma(a - b + 1);
  };
  double oracle = 0;
  for (std::uint64_t k = 0; k <= m; ++k) {
    const double logp = log_choose(big_k, k) + log_choose(n - big_k, m - k) - log_choose(n, m);
    oracle += std::exp(logp) * std::abs(static_cast<double>(k) / m - 0.5);
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "mean=%.5f bound=%.5f exact=%.5f", mean, std::sqrt(2.0) / 10,
                oracle);
  return {mean <= std::sqrt(2.0) / 10 && mean <= 3 * oracle, buf};
}

}  // namespace
}  // namespace submpc

int main() {
  using Check = std::pair<const char*, std::function<submpc::Outcome()>>;
  const std::vector<Check> checks = {
      {"estimator moments exact, n <= 10", submpc::ExactMoments},
      {"worst-case distortion within bound, n <= 6", submpc::DistortionBound},
      {"protocol estimates match plaintext oracle", submpc::ProtocolCorrectness},
      {"m = n returns f_n exactly", submpc::FullSample},
      {"metered bits equal cost formulas", submpc::CostReconciliation},
      {"exact privacy audits, n=2 m=1 binary", submpc::PrivacyAudits},
      {"rate vanishes with m = ceil(sqrt n)", submpc::VanishingRate},
      {"Monte Carlo distortion, n=10^4 m=100", submpc::MonteCarloDistortion},
  };
  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    submpc::Outcome o;
    try {
      o = checks[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu: %s  %s: %s (%.1fs)\n", i + 1, o.pass ? "PASS" : "FAIL",
                checks[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
