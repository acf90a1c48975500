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

#ifndef SUBMPC_RATIONAL_H_
#define SUBMPC_RATIONAL_H_

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace submpc {

// Exact arbitrary-precision integers and rationals. Every estimate, norm and
// probability in the library is carried in these types; doubles only appear
// in reports.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input
// or a zero denominator.
Rational ParseRational(std::string_view text);

// Canonical "p/q" form, or "p" when the denominator is one.
std::string FormatRational(const Rational& value);

double ToDouble(const Rational& value);

inline BigInt Numerator(const Rational& value) {
  return boost::multiprecision::numerator(value);
}
inline BigInt Denominator(const Rational& value) {
  return boost::multiprecision::denominator(value);
}
inline Rational Abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

BigInt Lcm(const BigInt& a, const BigInt& b);

// C(n, k) as an exact integer; zero when k > n.
BigInt Binomial(std::uint64_t n, std::uint64_t k);

// Converts to int64, throwing std::overflow_error if it does not fit.
std::int64_t ToInt64(const BigInt& value);

}  // namespace submpc

#endif  // SUBMPC_RATIONAL_H_
