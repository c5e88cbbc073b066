// Copyright 2026 The krel Authors.
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

#include "krel/error.hpp"
#include "krel/experiments.hpp"

namespace krel {
namespace {

TEST(DivisionWitness, Database) {
  KDatabase db = division_witness_db(3);
  EXPECT_EQ(db.relation("R").support_size(), 3u);
  EXPECT_EQ(db.relation("S").support_size(), 3u);
  EXPECT_EQ(db.relation("R").at(tuple({"a", "b2"})), Value::bag(2));
  EXPECT_EQ(db.relation("S").at(tuple({"b3"})), Value::bag(1));
}

TEST(DivisionWitness, PowersOfTwo) {
  BigInt expected = 1;
  for (std::size_t n = 1; n <= 30; ++n) {
    expected *= 2;
    EXPECT_EQ(bag_division_witness(n), Value::bag(expected)) << n;
  }
}

TEST(Bounds, LengthAndPolynomial) {
  auto e = parse_algebra("proj[1](times(R,S))");
  EXPECT_EQ(expr_length(*e), 4u);
  EXPECT_EQ(bound_poly(*e, 2), BigInt(8));
  EXPECT_EQ(bound_poly(*parse_algebra("union(R,supp(S))"), 5), BigInt(2));
  EXPECT_THROW(bound_poly(*parse_algebra("div(R,S)"), 2), Error);
}

TEST(Bounds, Measure) {
  ExprMetrics m = measure(*parse_algebra("proj[1](R)"), 4);
  EXPECT_EQ(m.supp_size, BigInt(1));
  EXPECT_EQ(m.highest_mult, BigInt(8));
  EXPECT_TRUE(m.ok());
}

TEST(Bounds, SmallSample) {
  for (std::size_t n : {2u, 4u}) {
    BoundsReport r = expression_bounds(n, 60, 17);
    EXPECT_EQ(r.samples, 60u);
    EXPECT_TRUE(r.pass()) << r.to_table();
  }
}

TEST(Security, NoMonus) {
  SecurityReport r = security_no_monus();
  EXPECT_TRUE(r.pass()) << r.to_table();
  ASSERT_EQ(r.minimal.size(), 5u);
  for (const auto& v : r.minimal) EXPECT_EQ(v.kind(), SemiringKind::Security);
}

TEST(Support, FuzzyWitness) {
  SupportReport r = fuzzy_support_witness(200, 1);
  EXPECT_EQ(r.samples, 200u);
  EXPECT_TRUE(r.pass()) << r.to_table();
}

TEST(Support, BagEvenFailsOnEmptyDivisors) {
  SupportReport r = bag_support_even(300, 1);
  EXPECT_FALSE(r.pass());
  ASSERT_FALSE(r.counterexamples.empty());
  for (const auto& c : r.counterexamples) EXPECT_NE(c.find("div"), std::string::npos) << c;
}

TEST(Support, EmptyDivisorGivesOddMultiplicity) {
  KDatabase db(SemiringKind::Bag, parse_schema("R:1"));
  db.relation("R").set(tuple({"a"}), Value::bag(2));
  KRelation r = eval(*parse_algebra("div(times(R,R),diff(R,R))"), db);
  EXPECT_EQ(r.at(tuple({"a"})), Value::bag(1));
}

TEST(AdomFailure, Integers) {
  AdomFailureReport r = adom_failure_nonzsf();
  EXPECT_TRUE(r.reproduced()) << r.to_table();
}

TEST(Reports, Json) {
  EXPECT_EQ(security_no_monus().to_json()["pass"], true);
  EXPECT_TRUE(adom_failure_nonzsf().to_json().is_object());
  EXPECT_FALSE(fuzzy_support_witness(5, 0).to_table().empty());
}

}  // namespace
}  // namespace krel
