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

// Serializers for analysis results. Exact quantities are written as
// rational strings ("3/8"); doubles use a fixed 17-significant-digit form so
// output is byte-stable across runs.

#ifndef SUBMPC_REPORT_H_
#define SUBMPC_REPORT_H_

#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "submpc/analysis.h"

namespace submpc {

std::string FormatDouble(double value);
// RFC 4180 quoting: fields with a comma, quote or newline are quoted.
std::string CsvField(const std::string& field);

nlohmann::ordered_json ToJson(const PrivacyReport& report);
nlohmann::ordered_json ToJson(const DistortionReport& report);
nlohmann::ordered_json ToJson(const CommRow& row);

std::string FormatPrivacyText(std::span<const PrivacyReport> reports);

// Columns: n,m,e_n,bound,R,protocol,method,seed,trials
std::string DistortionCsv(std::span<const DistortionReport> reports);
std::string DistortionText(std::span<const DistortionReport> reports);

// Columns: n,m,p,index_bits,extra_bits,k,R
std::string CommCsv(std::span<const CommRow> rows);
std::string CommText(std::span<const CommRow> rows);

}  // namespace submpc

#endif  // SUBMPC_REPORT_H_
