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

// Prime-field arithmetic used by every protocol, plus the signed encoding
// that carries rational function values through the field and back.
//
// Encoded integers live in the centered window (-p/2, p/2). Field sizing
// reserves a factor of two over the largest magnitude a protocol can produce
// so that decoding is unambiguous for negative sums as well.

#ifndef SUBMPC_FIELD_H_
#define SUBMPC_FIELD_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>

#include "submpc/rational.h"

namespace submpc {

bool IsPrime(std::uint64_t value);

// Smallest prime strictly greater than `bound`, never below 3.
std::uint64_t SmallestPrimeAbove(const BigInt& bound);

// Number of bits needed to transmit one of `count` equally likely values,
// i.e. ceil(log2(count)). Zero for count <= 1.
int CeilLog2(std::uint64_t count);

class PrimeField {
 public:
  // Throws std::invalid_argument unless `modulus` is a prime >= 3.
  explicit PrimeField(std::uint64_t modulus);

  std::uint64_t modulus() const { return modulus_; }
  int bits_per_element() const { return bits_per_element_; }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  friend class FieldElement;
  struct Verified {};
  PrimeField(std::uint64_t modulus, Verified)
      : modulus_(modulus), bits_per_element_(CeilLog2(modulus)) {}

  std::uint64_t modulus_;
  int bits_per_element_;
};

class FieldElement {
 public:
  // Reduces `value` modulo the field.
  FieldElement(const PrimeField& field, std::uint64_t value);
  static FieldElement FromSigned(const PrimeField& field, std::int64_t value);
  static FieldElement Zero(const PrimeField& field) { return FieldElement(field, 0); }
  static FieldElement One(const PrimeField& field) { return FieldElement(field, 1); }

  std::uint64_t value() const { return value_; }
  PrimeField field() const { return PrimeField(modulus_, PrimeField::Verified{}); }
  std::uint64_t modulus() const { return modulus_; }

  // Signed representative in (-p/2, p/2).
  std::int64_t Centered() const;

  FieldElement Inverse() const;

  FieldElement& operator+=(const FieldElement& other);
  FieldElement& operator-=(const FieldElement& other);
  FieldElement& operator*=(const FieldElement& other);
  FieldElement& operator/=(const FieldElement& other);
  FieldElement operator-() const;

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend bool operator==(const FieldElement&, const FieldElement&) = default;

  std::string ToString() const { return std::to_string(value_); }

 private:
  FieldElement(std::uint64_t modulus, std::uint64_t value, bool /*reduced*/)
      : modulus_(modulus), value_(value) {}
  void CheckSameField(const FieldElement& other) const;

  std::uint64_t modulus_;
  std::uint64_t value_;
};

// Smallest prime p > 2 * m * scaled_max_abs, where scaled_max_abs is
// D * max|f1| for common denominator D. This is the field every protocol
// run uses unless a larger one is requested.
PrimeField MinFieldSize(const BigInt& scaled_max_abs, std::uint64_t sample_count);

// Returns (q * D) mod p. Throws std::invalid_argument when q * D is not an
// integer or |q * D| >= p / 2.
FieldElement EncodeRational(const Rational& q, const BigInt& common_denominator,
                            const PrimeField& field);

// Interprets `e` as its centered representative v and returns v / (D * scale).
Rational DecodeCentered(const FieldElement& e, const BigInt& common_denominator,
                        const BigInt& scale);

using InterpolationPoint = std::pair<FieldElement, FieldElement>;

// Lagrange interpolation evaluated at zero. Abscissas must be distinct and
// nonzero. For abscissas (1, 2, 3) the weights are (3, -3, 1).
FieldElement InterpolateAtZero(std::span<const InterpolationPoint> points);

}  // namespace submpc

#endif  // SUBMPC_FIELD_H_
