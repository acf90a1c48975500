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

#include <cmath>

#include "submpc/analysis.h"
#include "support/broken_otp.h"

namespace submpc {
namespace {

const PrivacyReport& Report(const std::array<PrivacyReport, 3>& reports, AuditDefinition d) {
  return reports[static_cast<int>(d)];
}

// Toy target: Bob sees x[0] xor a uniform bit when `pad` is set, x[0] in
// the clear otherwise. Charlie sees nothing.
AuditTarget ToyTarget(bool pad) {
  AuditTarget t;
  t.name = pad ? "toy-padded" : "toy-leaky";
  t.n = 1;
  t.m = 1;
  t.x_size = 2;
  t.y_size = 2;
  t.sampler = [pad](const Sequence& x, const Sequence&, RandomSource& rng) {
    const std::uint64_t r = rng.Uniform(2);
    SampledRun run;
    run.views[0] = "alice r=" + std::to_string(r);
    run.views[1] = "bob " + std::to_string(pad ? (x[0] ^ r) : x[0]);
    run.views[2] = "charlie";
    run.estimate = 0;
    return run;
  };
  return t;
}

TEST(TotalVariationTest, Basics) {
  const ViewDistribution p = {{"a", Rational(1, 2)}, {"b", Rational(1, 2)}};
  const ViewDistribution q = {{"a", Rational(1, 4)}, {"c", Rational(3, 4)}};
  EXPECT_EQ(TotalVariation(p, p), 0);
  EXPECT_EQ(TotalVariation(p, q), Rational(3, 4));
  EXPECT_EQ(TotalVariation(q, p), Rational(3, 4));
}

TEST(AuditorTest, DetectsToyLeakAndPassesToyPad) {
  const auto leaky = AuditAll(ToyTarget(false));
  EXPECT_TRUE(Report(leaky, AuditDefinition::kAgainstAlice).pass);
  EXPECT_FALSE(Report(leaky, AuditDefinition::kAgainstBob).pass);
  EXPECT_EQ(Report(leaky, AuditDefinition::kAgainstBob).worst_distance, 1);
  const auto padded = AuditAll(ToyTarget(true));
  for (const auto& r : padded) EXPECT_TRUE(r.pass) << AuditDefinitionName(r.definition);
}

TEST(AuditorTest, EnumerationMatchesRandomnessSpace) {
  const auto target = MakeAuditTarget(ProtocolId::kOneTimePad, HammingTable(2, 2), 2, 1);
  const Sequence x = {0, 1}, y = {1, 1};
  const auto dist = EnumerateRun(target.sampler, x, y);
  EXPECT_EQ(dist.leaves, RandomnessSpaceSize(target.sampler, x, y));
  Rational total = 0;
  for (const auto& [v, p] : dist.views[0]) total += p;
  EXPECT_EQ(total, 1);
  // F_hat is one of the two coordinates, each with probability 1/2.
  EXPECT_EQ(dist.estimate.size(), 2u);
  EXPECT_EQ(dist.estimate.at(1), Rational(1, 2));
}

TEST(AuditorTest, BudgetCheckedBeforeEnumerating) {
  const auto target = MakeAuditTarget(ProtocolId::kOneTimePad, HammingTable(2, 2), 2, 1);
  AuditOptions options;
  options.budget = 1000;
  EXPECT_THROW(AuditAll(target, options), BudgetExceededError);
}

TEST(PrivacyAuditTest, OneTimePadPassesAllDefinitions) {
  for (const auto& f1 : {HammingTable(2, 2), ProductTable(2, 2)}) {
    const auto reports = AuditAll(MakeAuditTarget(ProtocolId::kOneTimePad, f1, 2, 1));
    for (const auto& r : reports) {
      EXPECT_TRUE(r.pass) << f1.name() << " " << AuditDefinitionName(r.definition) << " "
                          << r.witness;
      EXPECT_EQ(r.modulus, 3u);
      EXPECT_EQ(r.input_pairs, 16u);
    }
  }
}

// Sending F(1) and F(2) in the clear lets Charlie, who holds F(3), recover
// the quadratic and more than F_hat. Recorded here so a change in either
// the protocol or the auditor shows up.
TEST(PrivacyAuditTest, PlainOpeningLeaksToCharlie) {
  for (ProtocolId id : {ProtocolId::kPolyL, ProtocolId::kPolyDirect}) {
    const auto reports = AuditAll(MakeAuditTarget(id, HammingTable(2, 2), 2, 1));
    EXPECT_TRUE(Report(reports, AuditDefinition::kAgainstAlice).pass);
    EXPECT_TRUE(Report(reports, AuditDefinition::kAgainstBob).pass);
    const auto& charlie = Report(reports, AuditDefinition::kAgainstCharlie);
    EXPECT_FALSE(charlie.pass);
    EXPECT_EQ(charlie.worst_distance, Rational(4, 5));
    EXPECT_FALSE(charlie.witness.empty());
  }
}

TEST(PrivacyAuditTest, MaskedOpeningPassesAllDefinitions) {
  ProtocolOptions options;
  options.opening = OpeningMode::kMasked;
  for (ProtocolId id : {ProtocolId::kPolyL, ProtocolId::kPolyDirect}) {
    const auto reports = AuditAll(MakeAuditTarget(id, HammingTable(2, 2), 2, 1, options));
    for (const auto& r : reports) {
      EXPECT_TRUE(r.pass) << r.protocol << " " << AuditDefinitionName(r.definition) << " "
                          << r.witness;
      EXPECT_EQ(r.modulus, 5u);
    }
  }
}

TEST(PrivacyAuditTest, SaltStrippedControlFailsCharlie) {
  const auto reports = AuditAll(testing::MakeSaltStrippedOtpTarget(ProductTable(2, 2), 2, 1));
  EXPECT_TRUE(Report(reports, AuditDefinition::kAgainstAlice).pass);
  EXPECT_TRUE(Report(reports, AuditDefinition::kAgainstBob).pass);
  EXPECT_FALSE(Report(reports, AuditDefinition::kAgainstCharlie).pass);
  EXPECT_EQ(Report(reports, AuditDefinition::kAgainstCharlie).worst_distance, Rational(2, 3));
}

// With a shift-invariant f1 the stripped shares reveal nothing beyond
// F_hat, so the control needs x * y to be a meaningful check.
TEST(PrivacyAuditTest, SaltStrippedControlUndetectableWithHamming) {
  const auto reports = AuditAll(testing::MakeSaltStrippedOtpTarget(HammingTable(2, 2), 2, 1));
  EXPECT_TRUE(Report(reports, AuditDefinition::kAgainstCharlie).pass);
}

TEST(PrivacyAuditTest, FixedIndicesFlagged) {
  ProtocolOptions options;
  options.fixed_indices = IndexSet(2, {1});
  const auto target = MakeAuditTarget(ProtocolId::kOneTimePad, HammingTable(2, 2), 2, 1, options);
  EXPECT_TRUE(target.fixed_indices);
  for (const auto& r : AuditAll(target)) EXPECT_TRUE(r.fixed_indices);
}

TEST(DistortionExperimentTest, RowsAndBounds) {
  DistortionExperimentOptions options;
  const auto rows = DistortionExperiment(HammingTable(2, 2), {3, 4}, {1, 2, 4}, options);
  ASSERT_EQ(rows.size(), 5u);  // (3,4) skipped
  for (const auto& r : rows) {
    EXPECT_LE(r.e_n, r.bound);
    ASSERT_TRUE(r.exact.has_value());
    EXPECT_DOUBLE_EQ(r.e_n, ToDouble(*r.exact));
    EXPECT_GT(r.rate, 0);
  }
  EXPECT_EQ(rows.back().e_n, 0);  // m = n
}

TEST(CommReportTest, RulesAndLiveMetering) {
  MRuleSpec sqrt_rule;
  EXPECT_EQ(ResolveM(sqrt_rule, 64, 0), 8u);
  EXPECT_EQ(ResolveM(sqrt_rule, 65, 0), 9u);
  EXPECT_EQ(ResolveM({MRule::kFixed, 10, {}}, 4, 0), 4u);
  EXPECT_EQ(ResolveM({MRule::kCustom, 1, {3, 5}}, 100, 1), 5u);
  EXPECT_EQ(ResolveM({MRule::kEqualN, 1, {}}, 17, 0), 17u);

  CommReportOptions options;
  options.live = true;
  for (ProtocolId id : kAllProtocols) {
    const auto rows = CommReport(id, HammingTable(2, 2), {16, 64, 256}, sqrt_rule, options);
    ASSERT_EQ(rows.size(), 3u);
    for (const auto& r : rows) {
      ASSERT_TRUE(r.metered.has_value());
      EXPECT_EQ(*r.metered, r.total_bits);
      EXPECT_EQ(r.rate, Rational(r.total_bits, r.n));
    }
  }
  EXPECT_TRUE(CommReport(ProtocolId::kPolyL, HammingTable(2, 2), {}, sqrt_rule).empty());
}

}  // namespace
}  // namespace submpc
