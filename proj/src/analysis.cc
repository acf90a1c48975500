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

#include "submpc/analysis.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

#include "submpc/field.h"

namespace submpc {

std::string_view AuditDefinitionName(AuditDefinition definition) {
  switch (definition) {
    case AuditDefinition::kAgainstAlice: return "alice";
    case AuditDefinition::kAgainstBob: return "bob";
    case AuditDefinition::kAgainstCharlie: return "charlie";
  }
  return "?";
}

AuditTarget MakeAuditTarget(ProtocolId id, const FunctionTable& f1, std::uint64_t n,
                            std::uint64_t m, const ProtocolOptions& options) {
  if (m == 0 || m > n) throw std::invalid_argument("require 1 <= m <= n");
  ProtocolOptions resolved = options;
  if (!resolved.modulus) resolved.modulus = SelectField(id, f1, m).modulus();
  AuditTarget target;
  target.name = std::string(ProtocolName(id));
  if (resolved.opening == OpeningMode::kMasked) target.name += "+masked";
  target.n = n;
  target.m = m;
  target.x_size = f1.x_size();
  target.y_size = f1.y_size();
  target.modulus = *resolved.modulus;
  target.fixed_indices = resolved.fixed_indices.has_value();
  target.sampler = [id, f1, m, resolved](const Sequence& x, const Sequence& y,
                                         RandomSource& rng) {
    const ProtocolResult r = RunProtocol(id, f1, x, y, m, PartySources{&rng, &rng, &rng}, resolved);
    SampledRun run{{}, r.estimate};
    for (Party p : kAllParties) {
      run.views[static_cast<int>(p)] = r.view(p).Serialize(r.widths);
    }
    return run;
  };
  return target;
}

BigInt RandomnessSpaceSize(const RunSampler& sampler, const Sequence& x, const Sequence& y) {
  RecordingRandomSource recorder;
  sampler(x, y, recorder);
  return recorder.SpaceSize();
}

RunDistribution EnumerateRun(const RunSampler& sampler, const Sequence& x, const Sequence& y) {
  RunDistribution dist;
  dist.x = x;
  dist.y = y;
  EnumeratingRandomSource source;
  do {
    SampledRun run = sampler(x, y, source);
    const Rational weight = source.LeafWeight();
    for (int p = 0; p < 3; ++p) dist.views[p][run.views[p]] += weight;
    dist.estimate[run.estimate] += weight;
    dist.charlie_given[run.estimate][run.views[2]] += weight;
    ++dist.leaves;
  } while (source.Advance());
  for (auto& [estimate, views] : dist.charlie_given) {
    const Rational& total = dist.estimate.at(estimate);
    for (auto& [view, weight] : views) weight /= total;
  }
  return dist;
}

Rational TotalVariation(const ViewDistribution& p, const ViewDistribution& q) {
  Rational sum = 0;
  auto pi = p.begin();
  auto qi = q.begin();
  while (pi != p.end() || qi != q.end()) {
    if (qi == q.end() || (pi != p.end() && pi->first < qi->first)) {
      sum += pi++->second;
    } else if (pi == p.end() || qi->first < pi->first) {
      sum += qi++->second;
    } else {
      sum += Abs(pi++->second - qi++->second);
    }
  }
  return sum / 2;
}

std::vector<std::pair<Sequence, Sequence>> AllInputPairs(const AuditTarget& target) {
  auto all_sequences = [&](std::size_t alphabet) {
    std::vector<Sequence> out;
    Sequence s(target.n, 0);
    for (;;) {
      out.push_back(s);
      std::uint64_t i = 0;
      while (i < target.n && ++s[i] == alphabet) s[i++] = 0;
      if (i == target.n) break;
    }
    return out;
  };
  std::vector<std::pair<Sequence, Sequence>> pairs;
  for (const auto& x : all_sequences(target.x_size)) {
    for (const auto& y : all_sequences(target.y_size)) pairs.emplace_back(x, y);
  }
  return pairs;
}

namespace {

std::string SequenceText(const Sequence& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

std::string PairText(const RunDistribution& d) {
  return "(x=" + SequenceText(d.x) + " y=" + SequenceText(d.y) + ")";
}

// Budget is checked against the exact total before any enumeration starts;
// then each pair is enumerated on its own worker.
std::vector<RunDistribution> EnumerateAll(const AuditTarget& target,
                                          const std::vector<std::pair<Sequence, Sequence>>& pairs,
                                          const AuditOptions& options, BigInt* total_leaves) {
  BigInt required = 0;
  for (const auto& [x, y] : pairs) required += RandomnessSpaceSize(target.sampler, x, y);
  if (required > options.budget) {
    throw BudgetExceededError("privacy audit of " + target.name, required, options.budget);
  }
  std::vector<RunDistribution> out(pairs.size());
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t begin = 0; begin < pairs.size(); begin += workers) {
    const std::size_t end = std::min(pairs.size(), begin + workers);
    std::vector<std::future<RunDistribution>> futures;
    for (std::size_t i = begin; i < end; ++i) {
      futures.push_back(std::async(std::launch::async, EnumerateRun, std::cref(target.sampler),
                                   std::cref(pairs[i].first), std::cref(pairs[i].second)));
    }
    for (std::size_t i = begin; i < end; ++i) out[i] = futures[i - begin].get();
  }
  *total_leaves = 0;
  for (const auto& d : out) *total_leaves += d.leaves;
  return out;
}

PrivacyReport EmptyReport(const AuditTarget& target, AuditDefinition definition) {
  PrivacyReport report;
  report.protocol = target.name;
  report.definition = definition;
  report.n = target.n;
  report.m = target.m;
  report.x_size = target.x_size;
  report.y_size = target.y_size;
  report.modulus = target.modulus;
  report.fixed_indices = target.fixed_indices;
  return report;
}

void Record(PrivacyReport& report, const Rational& distance, const std::string& witness) {
  ++report.comparisons;
  if (distance > report.worst_distance) {
    report.worst_distance = distance;
    report.witness = witness;
  }
  report.pass = report.worst_distance == 0;
}

// Pairwise comparison of one party's unconditional view distributions
// within each group of runs that share the fixed input.
void CompareUnconditional(PrivacyReport& report, const std::vector<const RunDistribution*>& group,
                          int party) {
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (std::size_t j = i + 1; j < group.size(); ++j) {
      Record(report, TotalVariation(group[i]->views[party], group[j]->views[party]),
             PairText(*group[i]) + " vs " + PairText(*group[j]));
    }
  }
}

void CompareConditional(PrivacyReport& report, const std::vector<RunDistribution>& runs) {
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (std::size_t j = i + 1; j < runs.size(); ++j) {
      for (const auto& [estimate, views] : runs[i].charlie_given) {
        auto other = runs[j].charlie_given.find(estimate);
        if (other == runs[j].charlie_given.end()) continue;
        Record(report, TotalVariation(views, other->second),
               PairText(runs[i]) + " vs " + PairText(runs[j]) + " given F_hat=" +
                   FormatRational(estimate));
      }
    }
  }
}

std::vector<std::pair<Sequence, Sequence>> WithFixed(const Sequence& fixed,
                                                     const std::vector<Sequence>& variants,
                                                     bool fixed_is_x) {
  std::vector<std::pair<Sequence, Sequence>> pairs;
  for (const auto& v : variants) {
    pairs.push_back(fixed_is_x ? std::make_pair(fixed, v) : std::make_pair(v, fixed));
  }
  return pairs;
}

PrivacyReport AuditOneSided(const AuditTarget& target, AuditDefinition definition,
                            const std::vector<std::pair<Sequence, Sequence>>& pairs,
                            const AuditOptions& options) {
  PrivacyReport report = EmptyReport(target, definition);
  const auto runs = EnumerateAll(target, pairs, options, &report.enumeration_size);
  report.input_pairs = runs.size();
  std::vector<const RunDistribution*> group;
  for (const auto& r : runs) group.push_back(&r);
  CompareUnconditional(report, group, definition == AuditDefinition::kAgainstAlice ? 0 : 1);
  return report;
}

}  // namespace

PrivacyReport AuditPrivacyAlice(const AuditTarget& target, const Sequence& x_fixed,
                                const std::vector<Sequence>& y_variants,
                                const AuditOptions& options) {
  return AuditOneSided(target, AuditDefinition::kAgainstAlice,
                       WithFixed(x_fixed, y_variants, true), options);
}

PrivacyReport AuditPrivacyBob(const AuditTarget& target, const Sequence& y_fixed,
                              const std::vector<Sequence>& x_variants,
                              const AuditOptions& options) {
  return AuditOneSided(target, AuditDefinition::kAgainstBob,
                       WithFixed(y_fixed, x_variants, false), options);
}

PrivacyReport AuditPrivacyCharlie(const AuditTarget& target,
                                  const std::vector<std::pair<Sequence, Sequence>>& input_pairs,
                                  const AuditOptions& options) {
  PrivacyReport report = EmptyReport(target, AuditDefinition::kAgainstCharlie);
  const auto runs = EnumerateAll(target, input_pairs, options, &report.enumeration_size);
  report.input_pairs = runs.size();
  CompareConditional(report, runs);
  return report;
}

std::array<PrivacyReport, 3> AuditAll(const AuditTarget& target, const AuditOptions& options) {
  const auto pairs = AllInputPairs(target);
  BigInt leaves;
  const auto runs = EnumerateAll(target, pairs, options, &leaves);

  std::array<PrivacyReport, 3> reports = {
      EmptyReport(target, AuditDefinition::kAgainstAlice),
      EmptyReport(target, AuditDefinition::kAgainstBob),
      EmptyReport(target, AuditDefinition::kAgainstCharlie)};
  for (auto& r : reports) {
    r.input_pairs = runs.size();
    r.enumeration_size = leaves;
  }
  std::map<Sequence, std::vector<const RunDistribution*>> by_x, by_y;
  for (const auto& r : runs) {
    by_x[r.x].push_back(&r);
    by_y[r.y].push_back(&r);
  }
  for (const auto& [x, group] : by_x) CompareUnconditional(reports[0], group, 0);
  for (const auto& [y, group] : by_y) CompareUnconditional(reports[1], group, 1);
  CompareConditional(reports[2], runs);
  return reports;
}

// ---------------------------------------------------------------------------

std::vector<DistortionReport> DistortionExperiment(const FunctionTable& f1,
                                                   const std::vector<std::uint64_t>& n_list,
                                                   const std::vector<std::uint64_t>& m_list,
                                                   const DistortionExperimentOptions& options) {
  std::vector<DistortionReport> reports;
  for (std::uint64_t n : n_list) {
    for (std::uint64_t m : m_list) {
      if (m == 0 || m > n) continue;
      const DistortionEstimate est = WorstCaseDistortion(f1, n, m, options.search);
      DistortionReport r;
      r.f1_name = f1.name();
      r.n = n;
      r.m = m;
      r.method = options.search.mode;
      r.e_n = est.value;
      r.exact = est.exact;
      r.bound = est.bound;
      r.argmax_x = est.argmax_x;
      r.argmax_y = est.argmax_y;
      r.seed = options.search.seed;
      r.trials = est.trials;
      r.protocol = std::string(ProtocolName(options.protocol));
      const ProtocolResult run =
          RunProtocol(options.protocol, f1, r.argmax_x, r.argmax_y, m, options.search.seed);
      r.rate = run.rate;
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

// ---------------------------------------------------------------------------

std::uint64_t ResolveM(const MRuleSpec& spec, std::uint64_t n, std::size_t position) {
  std::uint64_t m = 0;
  switch (spec.rule) {
    case MRule::kFixed: m = spec.fixed; break;
    case MRule::kEqualN: m = n; break;
    case MRule::kSqrt: {
      m = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
      while (m * m < n) ++m;
      while (m > 0 && (m - 1) * (m - 1) >= n) --m;
      break;
    }
    case MRule::kCustom:
      if (position >= spec.custom.size()) {
        throw std::invalid_argument("custom m list shorter than n list");
      }
      m = spec.custom[position];
      break;
  }
  if (m == 0) throw std::invalid_argument("m must be >= 1");
  return std::min(m, n);
}

std::vector<CommRow> CommReport(ProtocolId id, const FunctionTable& f1,
                                const std::vector<std::uint64_t>& n_list, const MRuleSpec& rule,
                                const CommReportOptions& options) {
  std::vector<CommRow> rows;
  for (std::size_t pos = 0; pos < n_list.size(); ++pos) {
    CommRow row;
    row.n = n_list[pos];
    if (row.n == 0) throw std::invalid_argument("n must be >= 1");
    row.m = ResolveM(rule, row.n, pos);
    const PrimeField minimum = SelectField(id, f1, row.m);
    row.modulus = minimum.modulus();
    if (options.modulus) {
      const PrimeField requested(*options.modulus);
      if (requested.modulus() < minimum.modulus()) {
        throw std::invalid_argument("field F_" + std::to_string(requested.modulus()) +
                                    " too small at m=" + std::to_string(row.m) +
                                    "; need p >= " + std::to_string(minimum.modulus()));
      }
      row.modulus = requested.modulus();
    }
    row.index_bits = IndexBits(row.n, row.m);
    row.extra_bits = ExtraBitsClosedForm(id, f1.x_size(), f1.y_size(), row.m, row.modulus,
                                         ProductRank(f1), options.opening);
    row.total_bits = row.index_bits + row.extra_bits;
    row.rate = Rational(row.total_bits, row.n);
    if (options.live) {
      const auto [x, y] = GenerateSequences("all-match", row.n, f1.x_size(), f1.y_size());
      ProtocolOptions run_options;
      run_options.modulus = row.modulus;
      run_options.opening = options.opening;
      const ProtocolResult run = RunProtocol(id, f1, x, y, row.m, options.seed, run_options);
      row.metered = run.total_bits;
      if (run.total_bits != row.total_bits) {
        throw std::logic_error("metered " + std::to_string(run.total_bits) + " bits != closed form " +
                               std::to_string(row.total_bits) + " at n=" + std::to_string(row.n));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace submpc
