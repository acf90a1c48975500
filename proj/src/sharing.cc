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

#include "submpc/sharing.h"

#include <array>
#include <stdexcept>
#include <string>

namespace submpc {

PadSymbol DrawPad(std::size_t alphabet_size, RandomSource& rng) {
  if (alphabet_size == 0) throw std::invalid_argument("empty alphabet");
  return {static_cast<std::uint32_t>(rng.Uniform(alphabet_size)), alphabet_size};
}

Symbol PadShift(Symbol symbol, const PadSymbol& pad, PadDirection direction) {
  if (symbol >= pad.alphabet_size) {
    throw std::invalid_argument("symbol " + std::to_string(symbol) + " outside alphabet of size " +
                                std::to_string(pad.alphabet_size));
  }
  if (pad.shift >= pad.alphabet_size) throw std::invalid_argument("pad shift out of range");
  const std::size_t k = pad.alphabet_size;
  return static_cast<Symbol>(direction == PadDirection::kEncrypt
                                 ? (symbol + pad.shift) % k
                                 : (symbol + k - pad.shift) % k);
}

FieldElement RandomFieldElement(const PrimeField& field, RandomSource& rng) {
  return FieldElement(field, rng.Uniform(field.modulus()));
}

AdditiveShares AdditiveSplit(const FieldElement& secret, RandomSource& rng) {
  FieldElement a = RandomFieldElement(secret.field(), rng);
  return {a, secret - a};
}

const FieldElement& ShareTriple::at(int abscissa) const {
  switch (abscissa) {
    case 1: return at_1;
    case 2: return at_2;
    case 3: return at_3;
  }
  throw std::out_of_range("share abscissa must be 1, 2 or 3");
}

ShareTriple Degree1ShareWithSlope(const FieldElement& secret, const FieldElement& slope) {
  const PrimeField field = secret.field();
  return {secret + slope, secret + slope * FieldElement(field, 2),
          secret + slope * FieldElement(field, 3)};
}

ShareTriple Degree1Share(const FieldElement& secret, RandomSource& rng) {
  return Degree1ShareWithSlope(secret, RandomFieldElement(secret.field(), rng));
}

ShareTriple TriplePointwise(const ShareTriple& a, const ShareTriple& b, TripleOp op,
                            const FieldElement* c) {
  switch (op) {
    case TripleOp::kAdd: return {a.at_1 + b.at_1, a.at_2 + b.at_2, a.at_3 + b.at_3};
    case TripleOp::kMul: return {a.at_1 * b.at_1, a.at_2 * b.at_2, a.at_3 * b.at_3};
    case TripleOp::kScale:
      if (c == nullptr) throw std::invalid_argument("scale requires a scalar");
      return {a.at_1 * *c, a.at_2 * *c, a.at_3 * *c};
  }
  throw std::invalid_argument("unknown triple op");
}

ShareTriple Scale(const ShareTriple& a, const FieldElement& c) {
  return TriplePointwise(a, a, TripleOp::kScale, &c);
}

FieldElement ReconstructTriple(const ShareTriple& shares) {
  const PrimeField field = shares.at_1.field();
  const std::array<InterpolationPoint, 3> points = {
      InterpolationPoint{FieldElement(field, 1), shares.at_1},
      InterpolationPoint{FieldElement(field, 2), shares.at_2},
      InterpolationPoint{FieldElement(field, 3), shares.at_3},
  };
  return InterpolateAtZero(points);
}

FieldElement ReconstructDegree1(const FieldElement& at_1, const FieldElement& at_2) {
  return at_1 + at_1 - at_2;
}

}  // namespace submpc
