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

// Per-coordinate functions f1 : X x Y -> Q stored as exact rational tables,
// and evaluation of the normalized sum f_n(x, y) = (1/n) sum_i f1(x_i, y_i).
//
// Text format accepted by ParseFunctionTable:
//
//   # comment
//   X a b c            ordering of Alice's alphabet
//   Y 0 1              ordering of Bob's alphabet
//   a 0 1/2            one line per (x, y) pair, value as p or p/q
//   ...
//   product_form 2     optional: number of terms r
//   A 0 a 1            a_0(a) = 1; one line per nonzero entry
//   B 0 0 -3/4         b_0(0) = -3/4
//
// When a product form is present, sum_k a_k(x) b_k(y) must reproduce the
// table exactly.

#ifndef SUBMPC_FUNCTION_TABLE_H_
#define SUBMPC_FUNCTION_TABLE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "submpc/field.h"
#include "submpc/rational.h"

namespace submpc {

// A sequence is stored as positions into its alphabet's ordering.
using Symbol = std::uint32_t;
using Sequence = std::vector<Symbol>;

class Alphabet {
 public:
  // Throws std::invalid_argument on an empty list or duplicate labels.
  explicit Alphabet(std::vector<std::string> symbols);

  // Alphabet with labels "0", "1", ..., "size-1".
  static Alphabet Integers(std::size_t size);

  std::size_t size() const { return symbols_.size(); }
  const std::string& label(Symbol s) const { return symbols_.at(s); }
  const std::vector<std::string>& labels() const { return symbols_; }

  // Throws std::out_of_range for unknown labels.
  Symbol IndexOf(std::string_view label) const;
  bool Contains(std::string_view label) const;

  Sequence ParseSequence(const std::vector<std::string>& tokens) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Symbol> index_;
};

// One rank-one term a(x) * b(y) of a product form.
struct ProductTerm {
  std::vector<Rational> a;  // indexed by x
  std::vector<Rational> b;  // indexed by y
};

class FunctionTable {
 public:
  // `values` is row-major: values[x * |Y| + y]. Throws std::invalid_argument
  // on size mismatch or a product form that does not reproduce the table.
  FunctionTable(std::string name, Alphabet x_alphabet, Alphabet y_alphabet,
                std::vector<Rational> values,
                std::optional<std::vector<ProductTerm>> product_form = std::nullopt);

  const std::string& name() const { return name_; }
  const Alphabet& x_alphabet() const { return x_alphabet_; }
  const Alphabet& y_alphabet() const { return y_alphabet_; }
  std::size_t x_size() const { return x_alphabet_.size(); }
  std::size_t y_size() const { return y_alphabet_.size(); }
  std::size_t cell_count() const { return values_.size(); }
  std::size_t Cell(Symbol x, Symbol y) const { return x * y_size() + y; }

  const Rational& operator()(Symbol x, Symbol y) const { return values_[Cell(x, y)]; }
  const std::vector<Rational>& values() const { return values_; }

  // Least common denominator D of all values.
  const BigInt& common_denominator() const { return common_denominator_; }
  // D * f1, one integer per cell, row-major.
  const std::vector<std::int64_t>& scaled_values() const { return scaled_values_; }
  // D * max |f1|.
  const BigInt& scaled_max_abs() const { return scaled_max_abs_; }
  bool IsZero() const { return scaled_max_abs_ == 0; }

  const std::optional<std::vector<ProductTerm>>& product_form() const { return product_form_; }
  // Explicit product form if supplied, otherwise the indicator decomposition
  // f1(x, y) = sum_{a,b} f1(a, b) 1{x = a} 1{y = b} with |X||Y| terms.
  std::vector<ProductTerm> EffectiveProductForm() const;

  Rational L2NormSquared() const;
  double L2Norm() const;

  // Exact f_n via the direct per-coordinate sum.
  Rational EvalSumType(const Sequence& x, const Sequence& y) const;
  // Exact f_n via sum_{x,y} f1(x, y) P(x, y) over the joint type.
  Rational EvalSumTypeByJointType(const Sequence& x, const Sequence& y) const;

  // Joint type counts N(x, y), row-major.
  std::vector<std::uint64_t> JointCounts(const Sequence& x, const Sequence& y) const;

  // Entrywise encoding with common denominator D. Throws std::invalid_argument
  // if the field is too small to hold D * f1 with signed headroom.
  std::vector<FieldElement> ToField(const PrimeField& field) const;

  // Validates lengths and symbol ranges; throws std::invalid_argument.
  void CheckSequences(const Sequence& x, const Sequence& y) const;

 private:
  std::string name_;
  Alphabet x_alphabet_;
  Alphabet y_alphabet_;
  std::vector<Rational> values_;
  std::optional<std::vector<ProductTerm>> product_form_;
  BigInt common_denominator_;
  std::vector<std::int64_t> scaled_values_;
  BigInt scaled_max_abs_;
};

// Smallest admissible field for m-sample sums of f1 (see MinFieldSize).
PrimeField MinFieldSize(const FunctionTable& f1, std::uint64_t sample_count);

FunctionTable ParseFunctionTable(std::string_view text, std::string name = "file");
FunctionTable LoadFunctionTable(const std::string& path);
std::string SerializeFunctionTable(const FunctionTable& f1);

// Builtin tables over the integer alphabets {0, ..., size-1}, each with a
// product form: hamming has |X| terms, equality min(|X|, |Y|), sqdiff 3.
FunctionTable HammingTable(std::size_t x_size, std::size_t y_size);      // 1{x != y}
FunctionTable EqualityTable(std::size_t x_size, std::size_t y_size);     // 1{x == y}
FunctionTable SquaredDifferenceTable(std::size_t x_size, std::size_t y_size);  // (x - y)^2
FunctionTable ProductTable(std::size_t x_size, std::size_t y_size);      // x * y, rank one

// Looks up a builtin by name: hamming, equality, sqdiff, product.
FunctionTable BuiltinTable(std::string_view name, std::size_t x_size, std::size_t y_size);
bool IsBuiltinTable(std::string_view name);

}  // namespace submpc

#endif  // SUBMPC_FUNCTION_TABLE_H_
