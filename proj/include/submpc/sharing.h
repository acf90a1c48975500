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

// Information-theoretic masking primitives: cyclic-shift one-time pads over
// an ordered alphabet, two-party additive shares, and degree-1 polynomial
// shares evaluated at the fixed abscissas 1, 2, 3.
//
// A ShareTriple holds all three evaluations; which party may see which
// coordinate is enforced by the protocol engine, not here.

#ifndef SUBMPC_SHARING_H_
#define SUBMPC_SHARING_H_

#include <cstddef>
#include <cstdint>

#include "submpc/field.h"
#include "submpc/function_table.h"
#include "submpc/random_source.h"

namespace submpc {

struct PadSymbol {
  std::uint32_t shift = 0;
  std::size_t alphabet_size = 1;
};

enum class PadDirection { kEncrypt, kDecrypt };

// Uniform shift over {0, ..., alphabet_size - 1}.
PadSymbol DrawPad(std::size_t alphabet_size, RandomSource& rng);

// Cyclic shift of `symbol` by the pad, forward to encrypt, backward to
// decrypt. Throws std::invalid_argument for a symbol outside the alphabet.
Symbol PadShift(Symbol symbol, const PadSymbol& pad, PadDirection direction);

FieldElement RandomFieldElement(const PrimeField& field, RandomSource& rng);

struct AdditiveShares {
  FieldElement share_a;
  FieldElement share_b;
};

// share_a uniform, share_b = secret - share_a.
AdditiveShares AdditiveSplit(const FieldElement& secret, RandomSource& rng);

// Evaluations of a polynomial at abscissas 1, 2, 3.
struct ShareTriple {
  FieldElement at_1;
  FieldElement at_2;
  FieldElement at_3;

  // 1-based abscissa.
  const FieldElement& at(int abscissa) const;
  friend bool operator==(const ShareTriple&, const ShareTriple&) = default;
};

// g(t) = slope * t + secret with a uniform slope.
ShareTriple Degree1Share(const FieldElement& secret, RandomSource& rng);
ShareTriple Degree1ShareWithSlope(const FieldElement& secret, const FieldElement& slope);

enum class TripleOp { kAdd, kMul, kScale };

// Coordinate-wise op. kScale multiplies `a` by the scalar `c` and ignores `b`.
ShareTriple TriplePointwise(const ShareTriple& a, const ShareTriple& b, TripleOp op,
                            const FieldElement* c = nullptr);

inline ShareTriple operator+(const ShareTriple& a, const ShareTriple& b) {
  return TriplePointwise(a, b, TripleOp::kAdd);
}
inline ShareTriple operator*(const ShareTriple& a, const ShareTriple& b) {
  return TriplePointwise(a, b, TripleOp::kMul);
}
ShareTriple Scale(const ShareTriple& a, const FieldElement& c);

// Value at zero of the degree-<=2 polynomial through the three coordinates.
FieldElement ReconstructTriple(const ShareTriple& shares);

// Secret of a degree-1 sharing from the first two coordinates: 2 g(1) - g(2).
FieldElement ReconstructDegree1(const FieldElement& at_1, const FieldElement& at_2);

}  // namespace submpc

#endif  // SUBMPC_SHARING_H_
