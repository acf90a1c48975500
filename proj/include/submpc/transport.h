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

// In-process network between Alice, Bob and Charlie. Three reliable
// bidirectional channels deliver messages in program order. Every message is
// metered in bits and recorded in the sender's and receiver's views, and
// every random draw a party makes is recorded in its own view, so a view is
// exactly "all messages sent or received plus local randomness".

#ifndef SUBMPC_TRANSPORT_H_
#define SUBMPC_TRANSPORT_H_

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "submpc/random_source.h"
#include "submpc/rational.h"

namespace submpc {

enum class Party : std::uint8_t { kAlice = 0, kBob = 1, kCharlie = 2 };
inline constexpr std::array<Party, 3> kAllParties = {Party::kAlice, Party::kBob, Party::kCharlie};

std::string_view PartyName(Party party);

// What one payload entry is, which fixes its bit cost.
enum class PayloadUnit : std::uint8_t { kIndex, kXSymbol, kYSymbol, kFieldElement };

// Bits per payload unit: ceil(log2 n), ceil(log2 |X|), ceil(log2 |Y|),
// ceil(log2 p).
struct BitWidths {
  int index = 0;
  int x_symbol = 0;
  int y_symbol = 0;
  int field_element = 0;

  int Of(PayloadUnit unit) const;
};

struct Message {
  Party from;
  Party to;
  int round = 0;
  std::string tag;
  PayloadUnit unit;
  std::vector<std::uint64_t> values;
  std::uint64_t bit_cost = 0;

  // Fixed-width big-endian encoding of `values`; width is the unit's bit
  // count rounded up to whole bytes (at least one byte).
  std::vector<std::uint8_t> Payload(const BitWidths& widths) const;
  std::string PayloadHex(const BitWidths& widths) const;
};

struct RandomDraw {
  std::string label;
  std::uint64_t bound;
  std::uint64_t value;
};

struct View {
  Party party = Party::kAlice;
  std::vector<RandomDraw> randomness;
  std::vector<Message> sent;
  std::vector<Message> received;
  std::optional<Rational> output;

  // Canonical, injective text form; two views are equal iff their
  // serializations are equal.
  std::string Serialize(const BitWidths& widths) const;
};

// Adapts a shared random source into one party's labeled, recorded stream.
class PartyRandom final : public RandomSource {
 public:
  PartyRandom(RandomSource& source, View& view) : source_(source), view_(view) {}

  std::uint64_t Uniform(std::uint64_t bound) override;

  // Label attached to subsequent draws.
  void SetLabel(std::string label) { label_ = std::move(label); }

 private:
  RandomSource& source_;
  View& view_;
  std::string label_ = "rand";
};

// The randomness each party draws from. All three may alias one source (the
// privacy auditor does this to enumerate the joint randomness space).
struct PartySources {
  RandomSource* alice;
  RandomSource* bob;
  RandomSource* charlie;

  RandomSource& For(Party party) const;
};

// Owns the channels, the meter and the three views for one protocol run.
class Transport {
 public:
  Transport(BitWidths widths, const PartySources& sources);
  Transport(const Transport&) = delete;
  Transport& operator=(const Transport&) = delete;

  void Send(Party from, Party to, int round, std::string tag, PayloadUnit unit,
            std::vector<std::uint64_t> values);

  // Pops the oldest undelivered message on from->to, which must carry `tag`.
  // Throws std::logic_error on an empty channel or tag mismatch.
  std::vector<std::uint64_t> Receive(Party to, Party from, std::string_view tag);

  PartyRandom& Random(Party party, std::string label);

  const BitWidths& widths() const { return widths_; }
  std::uint64_t total_bits() const { return total_bits_; }
  const std::vector<Message>& transcript() const { return transcript_; }
  View& view(Party party) { return views_[static_cast<int>(party)]; }

  // Moves the views out; the transport is unusable afterwards.
  std::array<View, 3> TakeViews();

 private:
  BitWidths widths_;
  std::array<View, 3> views_;
  std::array<std::optional<PartyRandom>, 3> random_;
  std::array<std::array<std::deque<std::size_t>, 3>, 3> inbox_;  // [to][from] -> transcript idx
  std::vector<Message> transcript_;
  std::uint64_t total_bits_ = 0;
};

}  // namespace submpc

#endif  // SUBMPC_TRANSPORT_H_
