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

#include "submpc/random_source.h"

#include <stdexcept>
#include <string>

namespace submpc {

SeededRandomSource::SeededRandomSource(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x5eedu};
  engine_.seed(seq);
}

std::uint64_t SeededRandomSource::Uniform(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Uniform bound must be >= 1");
  if ((bound & (bound - 1)) == 0) return engine_() & (bound - 1);
  // Reject the lowest 2^64 mod bound words; the rest split evenly.
  const std::uint64_t excess = -bound % bound;
  for (;;) {
    const std::uint64_t word = engine_();
    if (word >= excess) return word % bound;
  }
}

std::uint64_t EnumeratingRandomSource::Uniform(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Uniform bound must be >= 1");
  if (cursor_ < path_.size()) {
    if (path_[cursor_].bound != bound) {
      throw std::logic_error("enumerated consumer changed draw bound at depth " +
                             std::to_string(cursor_));
    }
    return path_[cursor_++].value;
  }
  path_.push_back({0, bound});
  ++cursor_;
  return 0;
}

bool EnumeratingRandomSource::Advance() {
  // Drop draws the last pass did not reach, then bump the deepest digit
  // that still has room.
  path_.resize(cursor_);
  cursor_ = 0;
  while (!path_.empty()) {
    Choice& last = path_.back();
    if (last.value + 1 < last.bound) {
      ++last.value;
      return true;
    }
    path_.pop_back();
  }
  return false;
}

BigInt EnumeratingRandomSource::LeafDenominator() const {
  BigInt d = 1;
  for (std::size_t i = 0; i < cursor_; ++i) d *= path_[i].bound;
  return d;
}

Rational EnumeratingRandomSource::LeafWeight() const { return Rational(1, LeafDenominator()); }

std::uint64_t RecordingRandomSource::Uniform(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Uniform bound must be >= 1");
  size_ *= bound;
  ++draws_;
  return 0;
}

}  // namespace submpc
