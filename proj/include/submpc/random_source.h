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

#ifndef SUBMPC_RANDOM_SOURCE_H_
#define SUBMPC_RANDOM_SOURCE_H_

#include <cstdint>
#include <random>
#include <vector>

#include "submpc/rational.h"

namespace submpc {

// Every random draw made by a protocol or sampler goes through this
// interface, so that a run can be replayed from a seed or driven through
// every possible outcome by the privacy auditor.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  // Exactly uniform over [0, bound). `bound` must be >= 1.
  virtual std::uint64_t Uniform(std::uint64_t bound) = 0;
};

// mt19937_64 with exact rejection sampling. Output is a pure function of the
// seed, independent of the standard library's distribution implementations.
class SeededRandomSource final : public RandomSource {
 public:
  explicit SeededRandomSource(std::uint64_t seed) : engine_(seed) {}
  // Independent stream `stream` derived from a run seed.
  SeededRandomSource(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t Uniform(std::uint64_t bound) override;

 private:
  std::mt19937_64 engine_;
};

// Walks the full tree of draw outcomes in depth-first order. Each pass of the
// consumer (one protocol run) sees one leaf; Advance() moves to the next leaf
// and returns false once all leaves have been visited. The consumer may ask
// for different bounds on different branches.
//
//   EnumeratingRandomSource source;
//   do {
//     Run(source);
//     Record(source.LeafWeight());
//   } while (source.Advance());
class EnumeratingRandomSource final : public RandomSource {
 public:
  std::uint64_t Uniform(std::uint64_t bound) override;

  bool Advance();

  // Probability of the leaf just visited: prod 1 / bound_j.
  Rational LeafWeight() const;
  // prod bound_j for the leaf just visited.
  BigInt LeafDenominator() const;

 private:
  struct Choice {
    std::uint64_t value;
    std::uint64_t bound;
  };
  std::vector<Choice> path_;
  std::size_t cursor_ = 0;
};

// Records the bounds requested during one pass and returns 0 for each draw.
// Used to size a randomness space before enumerating it.
class RecordingRandomSource final : public RandomSource {
 public:
  std::uint64_t Uniform(std::uint64_t bound) override;

  // Product of all bounds seen so far.
  const BigInt& SpaceSize() const { return size_; }
  std::size_t DrawCount() const { return draws_; }

 private:
  BigInt size_ = 1;
  std::size_t draws_ = 0;
};

}  // namespace submpc

#endif  // SUBMPC_RANDOM_SOURCE_H_
