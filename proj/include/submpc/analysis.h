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

// Verification instruments: exact privacy audits, distortion experiments and
// communication-cost tables.
//
// A privacy audit replaces every random draw of a run (including Alice's
// choice of I) by an EnumeratingRandomSource, so each input pair yields the
// exact distribution of each party's serialized view. The three conditions
// checked are
//
//   alice    P(V_A; x, y) = P(V_A; x, y')        for all x, y, y'
//   bob      P(V_B; x, y) = P(V_B; x', y)        for all x, x', y
//   charlie  P(V_C | F_hat; x, y) = P(V_C | F_hat; x', y')
//            for every F_hat in both supports
//
// with equality of exact rationals, never a tolerance.

#ifndef SUBMPC_ANALYSIS_H_
#define SUBMPC_ANALYSIS_H_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "submpc/function_table.h"
#include "submpc/protocols.h"
#include "submpc/random_source.h"
#include "submpc/rational.h"
#include "submpc/sampling.h"

namespace submpc {

inline constexpr std::uint64_t kDefaultAuditBudget = 100'000'000;

enum class AuditDefinition { kAgainstAlice, kAgainstBob, kAgainstCharlie };
inline constexpr std::array<AuditDefinition, 3> kAllAuditDefinitions = {
    AuditDefinition::kAgainstAlice, AuditDefinition::kAgainstBob,
    AuditDefinition::kAgainstCharlie};

std::string_view AuditDefinitionName(AuditDefinition definition);  // "alice", "bob", "charlie"

// One run with every draw taken from `rng`, reduced to what the auditor
// compares.
struct SampledRun {
  std::array<std::string, 3> views;  // canonical serializations, by Party
  Rational estimate;
};
using RunSampler =
    std::function<SampledRun(const Sequence& x, const Sequence& y, RandomSource& rng)>;

// What is being audited. Any sampler can be plugged in, which is how tests
// check that a deliberately broken protocol fails.
struct AuditTarget {
  std::string name;
  RunSampler sampler;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::size_t x_size = 0;
  std::size_t y_size = 0;
  std::uint64_t modulus = 0;
  bool fixed_indices = false;  // I conditioned on, not enumerated: weaker
};

// Audit target for a library protocol. The field defaults to SelectField.
AuditTarget MakeAuditTarget(ProtocolId id, const FunctionTable& f1, std::uint64_t n,
                            std::uint64_t m, const ProtocolOptions& options = {});

using ViewDistribution = std::map<std::string, Rational>;

// Exact distributions of one input pair's run.
struct RunDistribution {
  Sequence x;
  Sequence y;
  std::array<ViewDistribution, 3> views;
  std::map<Rational, Rational> estimate;                  // P(F_hat)
  std::map<Rational, ViewDistribution> charlie_given;     // P(V_C | F_hat)
  BigInt leaves = 0;
};

// Number of randomness outcomes for one run, from a dry run with all draws 0.
// Draw bounds must not depend on earlier outcomes.
BigInt RandomnessSpaceSize(const RunSampler& sampler, const Sequence& x, const Sequence& y);

RunDistribution EnumerateRun(const RunSampler& sampler, const Sequence& x, const Sequence& y);

// (1/2) sum_v |P(v) - Q(v)|, exact.
Rational TotalVariation(const ViewDistribution& p, const ViewDistribution& q);

struct AuditOptions {
  std::uint64_t budget = kDefaultAuditBudget;  // total leaves over all input pairs
};

struct PrivacyReport {
  std::string protocol;
  AuditDefinition definition = AuditDefinition::kAgainstAlice;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::size_t x_size = 0;
  std::size_t y_size = 0;
  std::uint64_t modulus = 0;
  bool fixed_indices = false;
  std::uint64_t input_pairs = 0;
  std::uint64_t comparisons = 0;
  BigInt enumeration_size = 0;  // leaves visited over all input pairs
  Rational worst_distance = 0;
  bool pass = true;             // worst_distance == 0
  std::string witness;          // the worst comparison, if any distance > 0
};

// All |X|^n |Y|^n input pairs for the target's alphabets, x-major.
std::vector<std::pair<Sequence, Sequence>> AllInputPairs(const AuditTarget& target);

PrivacyReport AuditPrivacyAlice(const AuditTarget& target, const Sequence& x_fixed,
                                const std::vector<Sequence>& y_variants,
                                const AuditOptions& options = {});
PrivacyReport AuditPrivacyBob(const AuditTarget& target, const Sequence& y_fixed,
                              const std::vector<Sequence>& x_variants,
                              const AuditOptions& options = {});
PrivacyReport AuditPrivacyCharlie(const AuditTarget& target,
                                  const std::vector<std::pair<Sequence, Sequence>>& input_pairs,
                                  const AuditOptions& options = {});

// All three definitions over every input pair, enumerating each pair once.
// Alice's report covers every fixed x, Bob's every fixed y.
std::array<PrivacyReport, 3> AuditAll(const AuditTarget& target,
                                      const AuditOptions& options = {});

// ---------------------------------------------------------------------------

struct DistortionReport {
  std::string f1_name;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  DistortionMode method = DistortionMode::kExhaustive;
  double e_n = 0;
  std::optional<Rational> exact;  // when every expectation was enumerated
  double bound = 0;               // ||f1||_2 / sqrt(m)
  Sequence argmax_x;
  Sequence argmax_y;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;       // 0 for exact inner expectations
  std::string protocol;
  Rational rate = 0;              // realized k / n of one protocol run
};

struct DistortionExperimentOptions {
  DistortionSearchOptions search;
  ProtocolId protocol = ProtocolId::kPolyL;
};

// One report per (n, m) cell with m <= n, in (n, m) order. Each cell also
// runs `protocol` once on the argmax pair to record its realized rate.
std::vector<DistortionReport> DistortionExperiment(const FunctionTable& f1,
                                                   const std::vector<std::uint64_t>& n_list,
                                                   const std::vector<std::uint64_t>& m_list,
                                                   const DistortionExperimentOptions& options);

// ---------------------------------------------------------------------------

enum class MRule { kFixed, kSqrt, kEqualN, kCustom };

struct MRuleSpec {
  MRule rule = MRule::kSqrt;
  std::uint64_t fixed = 1;             // kFixed
  std::vector<std::uint64_t> custom;   // kCustom, one m per n
};

// m for the i-th entry of an n list: fixed, ceil(sqrt n) or n, capped at n.
std::uint64_t ResolveM(const MRuleSpec& spec, std::uint64_t n, std::size_t position);

struct CommRow {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t modulus = 0;
  std::uint64_t index_bits = 0;
  std::uint64_t extra_bits = 0;
  std::uint64_t total_bits = 0;      // k
  Rational rate = 0;                 // k / n
  std::optional<std::uint64_t> metered;  // live run, when requested
};

struct CommReportOptions {
  std::optional<std::uint64_t> modulus;  // default SelectField per m
  OpeningMode opening = OpeningMode::kPlain;
  bool live = false;                     // also run the protocol and meter it
  std::uint64_t seed = 1;
};

// k and R per n from the closed forms. With `live`, runs the protocol on an
// all-match pair and throws std::logic_error if metered bits differ.
std::vector<CommRow> CommReport(ProtocolId id, const FunctionTable& f1,
                                const std::vector<std::uint64_t>& n_list, const MRuleSpec& rule,
                                const CommReportOptions& options = {});

}  // namespace submpc

#endif  // SUBMPC_ANALYSIS_H_
