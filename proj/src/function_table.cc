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

#include "submpc/function_table.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace submpc {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw std::invalid_argument("alphabet must be nonempty");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (!index_.emplace(symbols_[i], static_cast<Symbol>(i)).second) {
      throw std::invalid_argument("duplicate alphabet symbol '" + symbols_[i] + "'");
    }
  }
}

Alphabet Alphabet::Integers(std::size_t size) {
  std::vector<std::string> labels;
  labels.reserve(size);
  for (std::size_t i = 0; i < size; ++i) labels.push_back(std::to_string(i));
  return Alphabet(std::move(labels));
}

Symbol Alphabet::IndexOf(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) {
    throw std::out_of_range("symbol '" + std::string(label) + "' not in alphabet");
  }
  return it->second;
}

bool Alphabet::Contains(std::string_view label) const {
  return index_.count(std::string(label)) != 0;
}

Sequence Alphabet::ParseSequence(const std::vector<std::string>& tokens) const {
  Sequence out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(IndexOf(t));
  return out;
}

FunctionTable::FunctionTable(std::string name, Alphabet x_alphabet, Alphabet y_alphabet,
                             std::vector<Rational> values,
                             std::optional<std::vector<ProductTerm>> product_form)
    : name_(std::move(name)),
      x_alphabet_(std::move(x_alphabet)),
      y_alphabet_(std::move(y_alphabet)),
      values_(std::move(values)),
      product_form_(std::move(product_form)),
      common_denominator_(1),
      scaled_max_abs_(0) {
  if (values_.size() != x_size() * y_size()) {
    throw std::invalid_argument("function table has " + std::to_string(values_.size()) +
                                " values, expected " + std::to_string(x_size() * y_size()));
  }
  for (const auto& v : values_) common_denominator_ = Lcm(common_denominator_, Denominator(v));
  scaled_values_.reserve(values_.size());
  for (const auto& v : values_) {
    const BigInt s = Numerator(v * common_denominator_);
    scaled_values_.push_back(ToInt64(s));
    const BigInt a = s < 0 ? BigInt(-s) : s;
    if (a > scaled_max_abs_) scaled_max_abs_ = a;
  }
  if (product_form_) {
    for (const auto& term : *product_form_) {
      if (term.a.size() != x_size() || term.b.size() != y_size()) {
        throw std::invalid_argument("product form term has wrong arity");
      }
    }
    for (Symbol x = 0; x < x_size(); ++x) {
      for (Symbol y = 0; y < y_size(); ++y) {
        Rational sum = 0;
        for (const auto& term : *product_form_) sum += term.a[x] * term.b[y];
        if (sum != (*this)(x, y)) {
          throw std::invalid_argument("product form does not reproduce f1 at (" +
                                      x_alphabet_.label(x) + ", " + y_alphabet_.label(y) +
                                      "): " + FormatRational(sum) + " vs " +
                                      FormatRational((*this)(x, y)));
        }
      }
    }
  }
}

std::vector<ProductTerm> FunctionTable::EffectiveProductForm() const {
  if (product_form_) return *product_form_;
  std::vector<ProductTerm> terms;
  terms.reserve(cell_count());
  for (Symbol a = 0; a < x_size(); ++a) {
    for (Symbol b = 0; b < y_size(); ++b) {
      ProductTerm term{std::vector<Rational>(x_size(), 0), std::vector<Rational>(y_size(), 0)};
      term.a[a] = (*this)(a, b);
      term.b[b] = 1;
      terms.push_back(std::move(term));
    }
  }
  return terms;
}

Rational FunctionTable::L2NormSquared() const {
  Rational sum = 0;
  for (const auto& v : values_) sum += v * v;
  return sum;
}

double FunctionTable::L2Norm() const { return std::sqrt(ToDouble(L2NormSquared())); }

void FunctionTable::CheckSequences(const Sequence& x, const Sequence& y) const {
  if (x.size() != y.size()) {
    throw std::invalid_argument("sequence length mismatch: " + std::to_string(x.size()) +
                                " vs " + std::to_string(y.size()));
  }
  if (x.empty()) throw std::invalid_argument("sequences must be nonempty");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= x_size() || y[i] >= y_size()) {
      throw std::invalid_argument("symbol out of alphabet at position " + std::to_string(i + 1));
    }
  }
}

Rational FunctionTable::EvalSumType(const Sequence& x, const Sequence& y) const {
  CheckSequences(x, y);
  BigInt sum = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += scaled_values_[Cell(x[i], y[i])];
  return Rational(sum, common_denominator_ * x.size());
}

std::vector<std::uint64_t> FunctionTable::JointCounts(const Sequence& x, const Sequence& y) const {
  CheckSequences(x, y);
  std::vector<std::uint64_t> counts(cell_count(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) ++counts[Cell(x[i], y[i])];
  return counts;
}

Rational FunctionTable::EvalSumTypeByJointType(const Sequence& x, const Sequence& y) const {
  const auto counts = JointCounts(x, y);
  Rational sum = 0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    sum += values_[c] * Rational(counts[c], x.size());
  }
  return sum;
}

std::vector<FieldElement> FunctionTable::ToField(const PrimeField& field) const {
  std::vector<FieldElement> out;
  out.reserve(values_.size());
  for (const auto& v : values_) out.push_back(EncodeRational(v, common_denominator_, field));
  return out;
}

PrimeField MinFieldSize(const FunctionTable& f1, std::uint64_t sample_count) {
  return MinFieldSize(f1.scaled_max_abs(), sample_count);
}

namespace {

std::vector<std::string> Tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(line)};
  std::string t;
  while (in >> t) tokens.push_back(t);
  return tokens;
}

[[noreturn]] void ParseError(std::size_t line_no, const std::string& what) {
  throw std::invalid_argument("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

FunctionTable ParseFunctionTable(std::string_view text, std::string name) {
  std::optional<Alphabet> xs, ys;
  std::map<std::pair<Symbol, Symbol>, Rational> cells;
  std::optional<std::size_t> rank;
  std::vector<ProductTerm> terms;
  std::vector<std::vector<bool>> a_seen, b_seen;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    auto tok = Tokenize(raw);
    if (tok.empty()) continue;
    try {
      if (tok[0] == "X" && !rank) {
        if (xs) ParseError(line_no, "X alphabet given twice");
        xs.emplace(std::vector<std::string>(tok.begin() + 1, tok.end()));
      } else if (tok[0] == "Y" && !rank) {
        if (ys) ParseError(line_no, "Y alphabet given twice");
        ys.emplace(std::vector<std::string>(tok.begin() + 1, tok.end()));
      } else if (tok[0] == "product_form") {
        if (!xs || !ys) ParseError(line_no, "product_form before alphabets");
        if (tok.size() != 2) ParseError(line_no, "expected 'product_form <rank>'");
        rank = std::stoul(tok[1]);
        terms.assign(*rank, ProductTerm{std::vector<Rational>(xs->size(), 0),
                                        std::vector<Rational>(ys->size(), 0)});
        a_seen.assign(*rank, std::vector<bool>(xs->size(), false));
        b_seen.assign(*rank, std::vector<bool>(ys->size(), false));
      } else if (rank) {
        if (tok.size() != 4 || (tok[0] != "A" && tok[0] != "B")) {
          ParseError(line_no, "expected 'A k x value' or 'B k y value'");
        }
        const std::size_t k = std::stoul(tok[1]);
        if (k >= *rank) ParseError(line_no, "term index out of range");
        if (tok[0] == "A") {
          const Symbol x = xs->IndexOf(tok[2]);
          if (a_seen[k][x]) ParseError(line_no, "duplicate entry");
          a_seen[k][x] = true;
          terms[k].a[x] = ParseRational(tok[3]);
        } else {
          const Symbol y = ys->IndexOf(tok[2]);
          if (b_seen[k][y]) ParseError(line_no, "duplicate entry");
          b_seen[k][y] = true;
          terms[k].b[y] = ParseRational(tok[3]);
        }
      } else {
        if (!xs || !ys) ParseError(line_no, "value line before X and Y headers");
        if (tok.size() != 3) ParseError(line_no, "expected 'x y value'");
        const auto key = std::make_pair(xs->IndexOf(tok[0]), ys->IndexOf(tok[1]));
        if (!cells.emplace(key, ParseRational(tok[2])).second) {
          ParseError(line_no, "duplicate cell (" + tok[0] + ", " + tok[1] + ")");
        }
      }
    } catch (const std::invalid_argument& e) {
      if (std::string(e.what()).rfind("line ", 0) == 0) throw;
      ParseError(line_no, e.what());
    } catch (const std::out_of_range& e) {
      ParseError(line_no, e.what());
    }
  }
  if (!xs || !ys) throw std::invalid_argument("missing X or Y header");
  if (cells.size() != xs->size() * ys->size()) {
    throw std::invalid_argument("function table defines " + std::to_string(cells.size()) +
                                " of " + std::to_string(xs->size() * ys->size()) + " cells");
  }
  std::vector<Rational> values;
  values.reserve(cells.size());
  for (const auto& [key, v] : cells) values.push_back(v);  // map order is row-major
  std::optional<std::vector<ProductTerm>> pf;
  if (rank) pf = std::move(terms);
  return FunctionTable(std::move(name), std::move(*xs), std::move(*ys), std::move(values),
                       std::move(pf));
}

FunctionTable LoadFunctionTable(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open function table '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return ParseFunctionTable(buf.str(), path);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string SerializeFunctionTable(const FunctionTable& f1) {
  std::ostringstream out;
  out << "X";
  for (const auto& s : f1.x_alphabet().labels()) out << ' ' << s;
  out << "\nY";
  for (const auto& s : f1.y_alphabet().labels()) out << ' ' << s;
  out << '\n';
  for (Symbol x = 0; x < f1.x_size(); ++x) {
    for (Symbol y = 0; y < f1.y_size(); ++y) {
      out << f1.x_alphabet().label(x) << ' ' << f1.y_alphabet().label(y) << ' '
          << FormatRational(f1(x, y)) << '\n';
    }
  }
  if (const auto& pf = f1.product_form()) {
    out << "product_form " << pf->size() << '\n';
    for (std::size_t k = 0; k < pf->size(); ++k) {
      for (Symbol x = 0; x < f1.x_size(); ++x) {
        out << "A " << k << ' ' << f1.x_alphabet().label(x) << ' '
            << FormatRational((*pf)[k].a[x]) << '\n';
      }
      for (Symbol y = 0; y < f1.y_size(); ++y) {
        out << "B " << k << ' ' << f1.y_alphabet().label(y) << ' '
            << FormatRational((*pf)[k].b[y]) << '\n';
      }
    }
  }
  return out.str();
}

namespace {

template <typename Fn>
FunctionTable IntegerTable(std::string name, std::size_t x_size, std::size_t y_size, Fn fn,
                           std::optional<std::vector<ProductTerm>> pf = std::nullopt) {
  std::vector<Rational> values;
  values.reserve(x_size * y_size);
  for (std::size_t x = 0; x < x_size; ++x) {
    for (std::size_t y = 0; y < y_size; ++y) {
      values.emplace_back(fn(static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)));
    }
  }
  return FunctionTable(std::move(name), Alphabet::Integers(x_size), Alphabet::Integers(y_size),
                       std::move(values), std::move(pf));
}

std::vector<Rational> Ramp(std::size_t size, int power, std::int64_t scale = 1) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < size; ++i) {
    std::int64_t v = 1;
    for (int p = 0; p < power; ++p) v *= static_cast<std::int64_t>(i);
    out.emplace_back(scale * v);
  }
  return out;
}

// 1{i == a}, or 1 - 1{i == a} when `complement` is set.
std::vector<Rational> Indicator(std::size_t size, std::size_t a, bool complement = false) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < size; ++i) out.emplace_back((i == a) != complement ? 1 : 0);
  return out;
}

}  // namespace

FunctionTable HammingTable(std::size_t x_size, std::size_t y_size) {
  // 1{x != y} = sum_a 1{x = a} (1 - 1{y = a})
  std::vector<ProductTerm> pf;
  for (std::size_t a = 0; a < x_size; ++a) {
    pf.push_back({Indicator(x_size, a), Indicator(y_size, a, true)});
  }
  return IntegerTable(
      "hamming", x_size, y_size, [](std::int64_t x, std::int64_t y) { return x != y ? 1 : 0; },
      std::move(pf));
}

FunctionTable EqualityTable(std::size_t x_size, std::size_t y_size) {
  // 1{x == y} = sum_a 1{x = a} 1{y = a}
  std::vector<ProductTerm> pf;
  for (std::size_t a = 0; a < std::min(x_size, y_size); ++a) {
    pf.push_back({Indicator(x_size, a), Indicator(y_size, a)});
  }
  return IntegerTable(
      "equality", x_size, y_size, [](std::int64_t x, std::int64_t y) { return x == y ? 1 : 0; },
      std::move(pf));
}

FunctionTable SquaredDifferenceTable(std::size_t x_size, std::size_t y_size) {
  // (x - y)^2 = x^2 * 1 + 1 * y^2 + x * (-2y)
  std::vector<ProductTerm> pf = {
      {Ramp(x_size, 2), Ramp(y_size, 0)},
      {Ramp(x_size, 0), Ramp(y_size, 2)},
      {Ramp(x_size, 1), Ramp(y_size, 1, -2)},
  };
  return IntegerTable(
      "sqdiff", x_size, y_size, [](std::int64_t x, std::int64_t y) { return (x - y) * (x - y); },
      std::move(pf));
}

FunctionTable ProductTable(std::size_t x_size, std::size_t y_size) {
  std::vector<ProductTerm> pf = {{Ramp(x_size, 1), Ramp(y_size, 1)}};
  return IntegerTable(
      "product", x_size, y_size, [](std::int64_t x, std::int64_t y) { return x * y; },
      std::move(pf));
}

bool IsBuiltinTable(std::string_view name) {
  return name == "hamming" || name == "equality" || name == "sqdiff" || name == "product";
}

FunctionTable BuiltinTable(std::string_view name, std::size_t x_size, std::size_t y_size) {
  if (name == "hamming") return HammingTable(x_size, y_size);
  if (name == "equality") return EqualityTable(x_size, y_size);
  if (name == "sqdiff") return SquaredDifferenceTable(x_size, y_size);
  if (name == "product") return ProductTable(x_size, y_size);
  throw std::invalid_argument("unknown builtin function '" + std::string(name) + "'");
}

}  // namespace submpc
