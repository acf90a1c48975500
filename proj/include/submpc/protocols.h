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

// The three subsampled secure-computation protocols. Each run starts with
// Alice drawing m positions I and sending them to Bob; Charlie ends up with
//
//   F_hat = (1/m) sum_{i in I} f1(x_i, y_i)
//
// computed exactly over a prime field.
//
//   otp          one-time pads over the alphabets plus additive shares of the
//                partial frequency L; cost independent of f1.
//   poly-l       degree-1 polynomial shares of the symbol indicators of x_i
//                and y_i; each party evaluates sum f1 * g * h at its own
//                abscissa and Charlie interpolates the degree-2 result.
//   poly-direct  degree-1 shares of a_k(x_i) and b_k(y_i) for a product form
//                f1 = sum_k a_k(x) b_k(y); one multiplication level.
//
// Abscissas are fixed: Alice 1, Bob 2, Charlie 3. The polynomial protocols
// therefore need p >= 5.

#ifndef SUBMPC_PROTOCOLS_H_
#define SUBMPC_PROTOCOLS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "submpc/field.h"
#include "submpc/function_table.h"
#include "submpc/rational.h"
#include "submpc/sampling.h"
#include "submpc/transport.h"

namespace submpc {

enum class ProtocolId { kOneTimePad, kPolyL, kPolyDirect };
inline constexpr std::array<ProtocolId, 3> kAllProtocols = {
    ProtocolId::kOneTimePad, ProtocolId::kPolyL, ProtocolId::kPolyDirect};

std::string_view ProtocolName(ProtocolId id);  // "otp", "poly-l", "poly-direct"
ProtocolId ParseProtocolId(std::string_view name);

// How the polynomial protocols open the final degree-2 sharing to Charlie.
//   kPlain   F(1) and F(2) are sent as is (the published cost).
//   kMasked  Alice draws a uniform u and sends it to Bob. Alice sends
//            3 F(1) + u and Bob sends -3 F(2) - u, so Charlie only learns
//            3 F(1) - 3 F(2), which with his own F(3) gives F(0) and nothing
//            about the higher coefficients of F. Costs one extra field
//            element.
enum class OpeningMode { kPlain, kMasked };

// Raised when a run's internal cross-checks fail (e.g. L_A + L_B != L).
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ProtocolOptions {
  // Field modulus; must be prime and at least SelectField's choice.
  std::optional<std::uint64_t> modulus;
  // Use this I instead of Alice drawing one. Audits in this mode are weaker.
  std::optional<IndexSet> fixed_indices;
  OpeningMode opening = OpeningMode::kPlain;
};

struct ProtocolParameters {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t modulus = 0;
  std::optional<std::uint64_t> seed;
  std::size_t x_size = 0;
  std::size_t y_size = 0;
  std::size_t rank = 0;        // product-form terms, poly-direct only
  BigInt denominator = 1;      // field values carry D * f1
  OpeningMode opening = OpeningMode::kPlain;
};

struct ProtocolResult {
  ProtocolId protocol;
  Rational estimate;
  IndexSet indices;
  std::array<View, 3> views{};
  std::vector<Message> transcript{};
  BitWidths widths{};
  std::uint64_t total_bits = 0;
  std::uint64_t index_bits = 0;  // m * ceil(log2 n)
  Rational rate{};               // total_bits / n
  ProtocolParameters params{};

  const View& view(Party party) const { return views[static_cast<int>(party)]; }
  std::uint64_t extra_bits() const { return total_bits - index_bits; }
};

// Smallest admissible field for the protocol: MinFieldSize over the values
// the protocol actually sums, raised to 5 for the polynomial protocols.
PrimeField SelectField(ProtocolId id, const FunctionTable& f1, std::uint64_t m);

ProtocolResult RunProtocol(ProtocolId id, const FunctionTable& f1, const Sequence& x,
                           const Sequence& y, std::uint64_t m, const PartySources& sources,
                           const ProtocolOptions& options = {});

// Each party draws from its own stream split from `seed`.
ProtocolResult RunProtocol(ProtocolId id, const FunctionTable& f1, const Sequence& x,
                           const Sequence& y, std::uint64_t m, std::uint64_t seed,
                           const ProtocolOptions& options = {});

ProtocolResult RunProtocolOtp(const FunctionTable& f1, const Sequence& x, const Sequence& y,
                              std::uint64_t m, std::uint64_t seed);
ProtocolResult RunProtocolPolyL(const FunctionTable& f1, const Sequence& x, const Sequence& y,
                                std::uint64_t m, std::uint64_t seed);
ProtocolResult RunProtocolPolyDirect(const FunctionTable& f1, const Sequence& x,
                                     const Sequence& y, std::uint64_t m, std::uint64_t seed);

// Bits to send I: m * ceil(log2 n).
std::uint64_t IndexBits(std::uint64_t n, std::uint64_t m);

// Closed-form bits beyond I, with log|F| read as ceil(log2 p):
//   otp          2m(lg|X| + lg|Y| + |X||Y| lg p) + 3 lg p
//   poly-l       (2m(|X| + |Y|) + 2) lg p
//   poly-direct  (4 m r + 2) lg p
// plus lg p for kMasked openings. `rank` is only used by poly-direct.
std::uint64_t ExtraBitsClosedForm(ProtocolId id, std::size_t x_size, std::size_t y_size,
                                  std::uint64_t m, std::uint64_t modulus, std::size_t rank = 1,
                                  OpeningMode opening = OpeningMode::kPlain);

// Number of product-form terms poly-direct will use for f1.
std::size_t ProductRank(const FunctionTable& f1);

// Line-oriented dump: one "round from->to tag bits hex" line per message,
// then each party's local randomness as "label bound value" lines.
std::string DumpTranscript(const ProtocolResult& result);

}  // namespace submpc

#endif  // SUBMPC_PROTOCOLS_H_
