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

#include "submpc/report.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace submpc {

namespace {

std::string SequenceString(const Sequence& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(s[i]);
  }
  return out;
}

std::string MethodName(DistortionMode mode) {
  return mode == DistortionMode::kExhaustive ? "exhaustive" : "monte_carlo";
}

// Left-aligned columns separated by two spaces.
std::string Align(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    out << line << '\n';
  }
  return out.str();
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string CsvField(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json ToJson(const PrivacyReport& r) {
  nlohmann::ordered_json j;
  j["protocol"] = r.protocol;
  j["definition"] = std::string(AuditDefinitionName(r.definition));
  j["n"] = r.n;
  j["m"] = r.m;
  j["x_size"] = r.x_size;
  j["y_size"] = r.y_size;
  j["modulus"] = r.modulus;
  j["fixed_indices"] = r.fixed_indices;
  j["input_pairs"] = r.input_pairs;
  j["comparisons"] = r.comparisons;
  j["enumeration_size"] = r.enumeration_size.str();
  j["worst_distance"] = FormatRational(r.worst_distance);
  j["verdict"] = r.pass ? "pass" : "fail";
  if (!r.witness.empty()) j["witness"] = r.witness;
  return j;
}

nlohmann::ordered_json ToJson(const DistortionReport& r) {
  nlohmann::ordered_json j;
  j["f1"] = r.f1_name;
  j["n"] = r.n;
  j["m"] = r.m;
  j["method"] = MethodName(r.method);
  j["e_n"] = r.e_n;
  if (r.exact) j["e_n_exact"] = FormatRational(*r.exact);
  j["bound"] = r.bound;
  j["within_bound"] = r.e_n <= r.bound;
  j["argmax_x"] = SequenceString(r.argmax_x);
  j["argmax_y"] = SequenceString(r.argmax_y);
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["protocol"] = r.protocol;
  j["rate"] = FormatRational(r.rate);
  return j;
}

nlohmann::ordered_json ToJson(const CommRow& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["modulus"] = r.modulus;
  j["index_bits"] = r.index_bits;
  j["extra_bits"] = r.extra_bits;
  j["k"] = r.total_bits;
  j["rate"] = FormatRational(r.rate);
  j["rate_decimal"] = ToDouble(r.rate);
  if (r.metered) j["metered_bits"] = *r.metered;
  return j;
}

std::string FormatPrivacyText(std::span<const PrivacyReport> reports) {
  std::vector<std::vector<std::string>> rows = {
      {"protocol", "against", "n", "m", "p", "I", "pairs", "leaves", "worst_tv", "verdict"}};
  for (const auto& r : reports) {
    rows.push_back({r.protocol, std::string(AuditDefinitionName(r.definition)),
                    std::to_string(r.n), std::to_string(r.m), std::to_string(r.modulus),
                    r.fixed_indices ? "fixed" : "enumerated", std::to_string(r.input_pairs),
                    r.enumeration_size.str(), FormatRational(r.worst_distance),
                    r.pass ? "pass" : "FAIL"});
  }
  std::string out = Align(rows);
  for (const auto& r : reports) {
    if (!r.pass) {
      out += "witness (" + std::string(AuditDefinitionName(r.definition)) + "): " + r.witness +
             '\n';
    }
  }
  return out;
}

std::string DistortionCsv(std::span<const DistortionReport> reports) {
  std::string out = "n,m,e_n,bound,R,protocol,method,seed,trials\n";
  for (const auto& r : reports) {
    out += std::to_string(r.n) + ',' + std::to_string(r.m) + ',' + FormatDouble(r.e_n) + ',' +
           FormatDouble(r.bound) + ',' + FormatDouble(ToDouble(r.rate)) + ',' +
           CsvField(r.protocol) + ',' + MethodName(r.method) + ',' + std::to_string(r.seed) +
           ',' + std::to_string(r.trials) + '\n';
  }
  return out;
}

std::string DistortionText(std::span<const DistortionReport> reports) {
  std::vector<std::vector<std::string>> rows = {
      {"n", "m", "e_n", "exact", "bound", "R", "method", "trials"}};
  for (const auto& r : reports) {
    rows.push_back({std::to_string(r.n), std::to_string(r.m), FormatDouble(r.e_n),
                    r.exact ? FormatRational(*r.exact) : "-", FormatDouble(r.bound),
                    FormatDouble(ToDouble(r.rate)), MethodName(r.method),
                    std::to_string(r.trials)});
  }
  return Align(rows);
}

std::string CommCsv(std::span<const CommRow> rows) {
  std::string out = "n,m,p,index_bits,extra_bits,k,R\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + std::to_string(r.m) + ',' + std::to_string(r.modulus) +
           ',' + std::to_string(r.index_bits) + ',' + std::to_string(r.extra_bits) + ',' +
           std::to_string(r.total_bits) + ',' + FormatDouble(ToDouble(r.rate)) + '\n';
  }
  return out;
}

std::string CommText(std::span<const CommRow> rows) {
  std::vector<std::vector<std::string>> table = {
      {"n", "m", "p", "index_bits", "extra_bits", "k", "R"}};
  for (const auto& r : rows) {
    table.push_back({std::to_string(r.n), std::to_string(r.m), std::to_string(r.modulus),
                     std::to_string(r.index_bits), std::to_string(r.extra_bits),
                     std::to_string(r.total_bits), FormatDouble(ToDouble(r.rate))});
  }
  return Align(table);
}

}  // namespace submpc
