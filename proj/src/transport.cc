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

#include "submpc/transport.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace submpc {

std::string_view PartyName(Party party) {
  switch (party) {
    case Party::kAlice: return "alice";
    case Party::kBob: return "bob";
    case Party::kCharlie: return "charlie";
  }
  return "?";
}

int BitWidths::Of(PayloadUnit unit) const {
  switch (unit) {
    case PayloadUnit::kIndex: return index;
    case PayloadUnit::kXSymbol: return x_symbol;
    case PayloadUnit::kYSymbol: return y_symbol;
    case PayloadUnit::kFieldElement: return field_element;
  }
  return 0;
}

std::vector<std::uint8_t> Message::Payload(const BitWidths& widths) const {
  const int bytes = std::max(1, (widths.Of(unit) + 7) / 8);
  std::vector<std::uint8_t> out;
  out.reserve(values.size() * bytes);
  for (std::uint64_t v : values) {
    for (int b = bytes - 1; b >= 0; --b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
  }
  return out;
}

std::string Message::PayloadHex(const BitWidths& widths) const {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (std::uint8_t byte : Payload(widths)) {
    out.push_back(kHex[byte >> 4]);
    out.push_back(kHex[byte & 0xf]);
  }
  return out;
}

namespace {

void WriteMessage(std::ostringstream& out, char kind, const Message& msg,
                  const BitWidths& widths) {
  out << kind << ' ' << msg.round << ' ' << PartyName(msg.from) << "->" << PartyName(msg.to)
      << ' ' << msg.tag << ' ' << msg.bit_cost << ' ' << msg.values.size() << ' '
      << msg.PayloadHex(widths) << '\n';
}

}  // namespace

std::string View::Serialize(const BitWidths& widths) const {
  std::ostringstream out;
  out << "view " << PartyName(party) << '\n';
  for (const auto& draw : randomness) {
    out << "R " << draw.label << ' ' << draw.bound << ' ' << draw.value << '\n';
  }
  for (const auto& msg : sent) WriteMessage(out, 'S', msg, widths);
  for (const auto& msg : received) WriteMessage(out, 'V', msg, widths);
  if (output) out << "O " << FormatRational(*output) << '\n';
  return out.str();
}

std::uint64_t PartyRandom::Uniform(std::uint64_t bound) {
  const std::uint64_t value = source_.Uniform(bound);
  view_.randomness.push_back({label_, bound, value});
  return value;
}

RandomSource& PartySources::For(Party party) const {
  RandomSource* source = party == Party::kAlice ? alice : party == Party::kBob ? bob : charlie;
  if (source == nullptr) throw std::invalid_argument("missing random source for party");
  return *source;
}

Transport::Transport(BitWidths widths, const PartySources& sources) : widths_(widths) {
  for (Party p : kAllParties) {
    const int i = static_cast<int>(p);
    views_[i].party = p;
    random_[i].emplace(sources.For(p), views_[i]);
  }
}

void Transport::Send(Party from, Party to, int round, std::string tag, PayloadUnit unit,
                     std::vector<std::uint64_t> values) {
  if (from == to) throw std::logic_error("party cannot send to itself");
  Message msg{from, to, round, std::move(tag), unit, std::move(values), 0};
  msg.bit_cost = msg.values.size() * static_cast<std::uint64_t>(widths_.Of(unit));
  total_bits_ += msg.bit_cost;
  views_[static_cast<int>(from)].sent.push_back(msg);
  views_[static_cast<int>(to)].received.push_back(msg);
  inbox_[static_cast<int>(to)][static_cast<int>(from)].push_back(transcript_.size());
  transcript_.push_back(std::move(msg));
}

std::vector<std::uint64_t> Transport::Receive(Party to, Party from, std::string_view tag) {
  auto& queue = inbox_[static_cast<int>(to)][static_cast<int>(from)];
  if (queue.empty()) {
    throw std::logic_error(std::string(PartyName(to)) + " expected '" + std::string(tag) +
                           "' from " + std::string(PartyName(from)) + " but channel is empty");
  }
  const Message& msg = transcript_[queue.front()];
  if (msg.tag != tag) {
    throw std::logic_error(std::string(PartyName(to)) + " expected '" + std::string(tag) +
                           "' but got '" + msg.tag + "'");
  }
  queue.pop_front();
  return msg.values;
}

PartyRandom& Transport::Random(Party party, std::string label) {
  PartyRandom& r = *random_[static_cast<int>(party)];
  r.SetLabel(std::move(label));
  return r;
}

std::array<View, 3> Transport::TakeViews() {
  for (auto& r : random_) r.reset();
  return std::move(views_);
}

}  // namespace submpc
