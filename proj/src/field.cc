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

#include "submpc/field.h"

#include <limits>
#include <stdexcept>
#include <tuple>

namespace submpc {

bool IsPrime(std::uint64_t value) {
  if (value < 2) return false;
  if (value < 4) return true;
  if (value % 2 == 0 || value % 3 == 0) return false;
  for (std::uint64_t d = 5; d <= value / d; d += 6) {
    if (value % d == 0 || value % (d + 2) == 0) return false;
  }
  return true;
}

std::uint64_t SmallestPrimeAbove(const BigInt& bound) {
  if (bound < 3) return 3;
  if (bound >= BigInt(std::numeric_limits<std::uint64_t>::max() / 4)) {
    throw std::overflow_error("field size bound too large: " + bound.str());
  }
  std::uint64_t candidate = bound.convert_to<std::uint64_t>() + 1;
  while (!IsPrime(candidate)) ++candidate;
  return candidate;
}

int CeilLog2(std::uint64_t count) {
  int bits = 0;
  while (bits < 64 && (std::uint64_t{1} << bits) < count) ++bits;
  return bits;
}

PrimeField::PrimeField(std::uint64_t modulus)
    : modulus_(modulus), bits_per_element_(CeilLog2(modulus)) {
  if (modulus < 3 || !IsPrime(modulus)) {
    throw std::invalid_argument("field modulus must be a prime >= 3, got " +
                                std::to_string(modulus));
  }
  if (modulus > (std::uint64_t{1} << 62)) {
    throw std::invalid_argument("field modulus exceeds 2^62");
  }
}

FieldElement::FieldElement(const PrimeField& field, std::uint64_t value)
    : modulus_(field.modulus()), value_(value % field.modulus()) {}

FieldElement FieldElement::FromSigned(const PrimeField& field, std::int64_t value) {
  const auto p = static_cast<std::int64_t>(field.modulus());
  std::int64_t r = value % p;
  if (r < 0) r += p;
  return FieldElement(field, static_cast<std::uint64_t>(r));
}

std::int64_t FieldElement::Centered() const {
  const auto v = static_cast<std::int64_t>(value_);
  return value_ > modulus_ / 2 ? v - static_cast<std::int64_t>(modulus_) : v;
}

void FieldElement::CheckSameField(const FieldElement& other) const {
  if (modulus_ != other.modulus_) {
    throw std::invalid_argument("field mismatch: F_" + std::to_string(modulus_) +
                                " vs F_" + std::to_string(other.modulus_));
  }
}

FieldElement& FieldElement::operator+=(const FieldElement& other) {
  CheckSameField(other);
  value_ += other.value_;
  if (value_ >= modulus_) value_ -= modulus_;
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& other) {
  CheckSameField(other);
  value_ = value_ >= other.value_ ? value_ - other.value_ : value_ + modulus_ - other.value_;
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& other) {
  CheckSameField(other);
  value_ = static_cast<std::uint64_t>(static_cast<unsigned __int128>(value_) * other.value_ %
                                      modulus_);
  return *this;
}

FieldElement FieldElement::Inverse() const {
  if (value_ == 0) throw std::domain_error("division by zero in F_" + std::to_string(modulus_));
  // Extended Euclid on (value, p).
  std::int64_t t = 0, new_t = 1;
  auto r = static_cast<std::int64_t>(modulus_);
  auto new_r = static_cast<std::int64_t>(value_);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(modulus_);
  return FieldElement(modulus_, static_cast<std::uint64_t>(t), true);
}

FieldElement& FieldElement::operator/=(const FieldElement& other) {
  CheckSameField(other);
  return *this *= other.Inverse();
}

FieldElement FieldElement::operator-() const {
  return FieldElement(modulus_, value_ == 0 ? 0 : modulus_ - value_, true);
}

PrimeField MinFieldSize(const BigInt& scaled_max_abs, std::uint64_t sample_count) {
  if (sample_count == 0) throw std::invalid_argument("sample count must be >= 1");
  if (scaled_max_abs < 0) throw std::invalid_argument("magnitude bound must be nonnegative");
  return PrimeField(SmallestPrimeAbove(2 * BigInt(sample_count) * scaled_max_abs));
}

FieldElement EncodeRational(const Rational& q, const BigInt& common_denominator,
                            const PrimeField& field) {
  const Rational scaled = q * common_denominator;
  if (Denominator(scaled) != 1) {
    throw std::invalid_argument(FormatRational(q) + " times " + common_denominator.str() +
                                " is not an integer");
  }
  const BigInt v = Numerator(scaled);
  const BigInt magnitude = v < 0 ? BigInt(-v) : v;
  if (2 * magnitude >= BigInt(field.modulus())) {
    throw std::invalid_argument("encoded magnitude " + magnitude.str() +
                                " exceeds signed headroom of F_" +
                                std::to_string(field.modulus()));
  }
  return FieldElement::FromSigned(field, v.convert_to<std::int64_t>());
}

Rational DecodeCentered(const FieldElement& e, const BigInt& common_denominator,
                        const BigInt& scale) {
  if (common_denominator <= 0 || scale <= 0) {
    throw std::invalid_argument("denominator and scale must be positive");
  }
  return Rational(BigInt(e.Centered()), common_denominator * scale);
}

FieldElement InterpolateAtZero(std::span<const InterpolationPoint> points) {
  if (points.empty()) throw std::invalid_argument("interpolation needs at least one point");
  const PrimeField field = points.front().first.field();
  FieldElement result = FieldElement::Zero(field);
  for (std::size_t j = 0; j < points.size(); ++j) {
    const FieldElement& xj = points[j].first;
    if (xj.value() == 0) throw std::invalid_argument("interpolation abscissa must be nonzero");
    // Lagrange basis at zero: prod_{k != j} x_k / (x_k - x_j).
    FieldElement weight = FieldElement::One(field);
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (k == j) continue;
      const FieldElement& xk = points[k].first;
      if (xk == xj) throw std::invalid_argument("duplicate interpolation abscissa");
      weight *= xk / (xk - xj);
    }
    result += weight * points[j].second;
  }
  return result;
}

}  // namespace submpc
