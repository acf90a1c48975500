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

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "submpc/function_table.h"

namespace submpc {
namespace {

Rational DirectAverage(const FunctionTable& f1, const Sequence& x, const Sequence& y) {
  Rational sum = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += f1(x[i], y[i]);
  return sum / static_cast<long long>(x.size());
}

TEST(AlphabetTest, LookupAndErrors) {
  const Alphabet a({"lo", "mid", "hi"});
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(a.IndexOf("hi"), 2u);
  EXPECT_TRUE(a.Contains("mid"));
  EXPECT_FALSE(a.Contains("x"));
  EXPECT_THROW(a.IndexOf("x"), std::out_of_range);
  EXPECT_THROW(Alphabet({}), std::invalid_argument);
  EXPECT_THROW(Alphabet({"a", "a"}), std::invalid_argument);
}

TEST(FunctionTableTest, BuiltinValues) {
  const auto h = HammingTable(3, 3);
  const auto e = EqualityTable(3, 2);
  const auto s = SquaredDifferenceTable(3, 3);
  const auto p = ProductTable(3, 4);
  for (Symbol x = 0; x < 3; ++x) {
    for (Symbol y = 0; y < 3; ++y) {
      EXPECT_EQ(h(x, y), x != y ? 1 : 0);
      EXPECT_EQ(s(x, y), (static_cast<int>(x) - static_cast<int>(y)) *
                             (static_cast<int>(x) - static_cast<int>(y)));
    }
    for (Symbol y = 0; y < 2; ++y) EXPECT_EQ(e(x, y), x == y ? 1 : 0);
    for (Symbol y = 0; y < 4; ++y) EXPECT_EQ(p(x, y), static_cast<int>(x * y));
  }
}

TEST(FunctionTableTest, ProductFormsReproduceTables) {
  for (std::string_view name : {"hamming", "equality", "sqdiff", "product"}) {
    for (std::size_t xs = 1; xs <= 4; ++xs) {
      for (std::size_t ys = 1; ys <= 4; ++ys) {
        const auto f = BuiltinTable(name, xs, ys);
        for (const auto& terms : {*f.product_form(), f.EffectiveProductForm()}) {
          for (Symbol x = 0; x < xs; ++x) {
            for (Symbol y = 0; y < ys; ++y) {
              Rational sum = 0;
              for (const auto& t : terms) sum += t.a[x] * t.b[y];
              EXPECT_EQ(sum, f(x, y)) << name << " " << xs << "x" << ys;
            }
          }
        }
      }
    }
  }
  EXPECT_EQ(HammingTable(2, 2).product_form()->size(), 2u);
  EXPECT_EQ(EqualityTable(3, 2).product_form()->size(), 2u);
  EXPECT_EQ(SquaredDifferenceTable(4, 4).product_form()->size(), 3u);
  EXPECT_EQ(ProductTable(4, 4).product_form()->size(), 1u);
}

TEST(FunctionTableTest, IndicatorFallbackWithoutProductForm) {
  const FunctionTable f("t", Alphabet::Integers(2), Alphabet::Integers(3),
                        {Rational(1, 2), 0, 3, -1, 0, Rational(2, 3)});
  EXPECT_EQ(f.EffectiveProductForm().size(), 6u);
  EXPECT_EQ(f.common_denominator(), 6);
  EXPECT_EQ(f.scaled_max_abs(), 18);
  EXPECT_EQ(f.L2NormSquared(), Rational(1, 4) + 9 + 1 + Rational(4, 9));
}

TEST(FunctionTableTest, WrongProductFormRejected) {
  std::vector<ProductTerm> terms = {{{1, 0}, {0, 1}}};
  EXPECT_THROW(FunctionTable("t", Alphabet::Integers(2), Alphabet::Integers(2), {0, 1, 1, 0}, terms),
               std::invalid_argument);
}

TEST(FunctionTableTest, SumTypeAgreesWithJointTypeAndDirectSum) {
  std::mt19937_64 gen(3);
  const auto f = SquaredDifferenceTable(3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 12;
    Sequence x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = gen() % 3;
      y[i] = gen() % 3;
    }
    const Rational direct = DirectAverage(f, x, y);
    EXPECT_EQ(f.EvalSumType(x, y), direct);
    EXPECT_EQ(f.EvalSumTypeByJointType(x, y), direct);
  }
}

TEST(FunctionTableTest, SequenceValidation) {
  const auto f = HammingTable(2, 2);
  EXPECT_THROW(f.EvalSumType({0, 1}, {0}), std::invalid_argument);
  EXPECT_THROW(f.EvalSumType({}, {}), std::invalid_argument);
  EXPECT_THROW(f.EvalSumType({0, 2}, {0, 0}), std::invalid_argument);
}

TEST(FunctionTableTest, TextFormatRoundTrip) {
  const std::string text =
      "# weights\n"
      "X a b c\n"
      "Y 0 1\n"
      "a 0 1/2\n"
      "a 1 0\n"
      "b 0 -3/4\n"
      "b 1 1\n"
      "c 0 2\n"
      "c 1 0\n";
  const auto f = ParseFunctionTable(text, "w");
  EXPECT_EQ(f(f.x_alphabet().IndexOf("b"), 0), Rational(-3, 4));
  EXPECT_EQ(f.common_denominator(), 4);
  const auto again = ParseFunctionTable(SerializeFunctionTable(f), "w");
  EXPECT_EQ(again.values(), f.values());
  EXPECT_EQ(again.x_alphabet(), f.x_alphabet());

  const auto p = ProductTable(2, 3);
  const auto p2 = ParseFunctionTable(SerializeFunctionTable(p));
  ASSERT_TRUE(p2.product_form().has_value());
  EXPECT_EQ(p2.product_form()->size(), 1u);
}

TEST(FunctionTableTest, ParseErrorsCarryLineNumbers) {
  try {
    ParseFunctionTable("X a b\nY 0\na 0 1\nb 0 zz\n");
    FAIL() << "expected a parse error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
  EXPECT_THROW(ParseFunctionTable("X a b\nY 0\na 0 1\n"), std::invalid_argument);
}

TEST(FunctionTableTest, UnknownBuiltin) {
  EXPECT_FALSE(IsBuiltinTable("cosine"));
  EXPECT_THROW(BuiltinTable("cosine", 2, 2), std::invalid_argument);
}

}  // namespace
}  // namespace submpc
