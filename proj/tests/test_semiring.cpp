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
#include "krel/semiring.hpp"

namespace krel {
namespace {

Value poly(std::string_view text) { return parse_value(SemiringKind::Provenance, text); }
Value fz(int p, int q) { return Value::fuzzy(Rational(p, q)); }
Value lk(int p, int q) { return Value::lukasiewicz(Rational(p, q)); }
Value sec(int n, SecurityLevel l) { return Value::security(n, l); }

TEST(Descriptor, PositiveIsConjunction) {
  for (auto k : kAllSemirings) {
    const auto& d = descriptor(k);
    EXPECT_EQ(d.positive, d.zero_sum_free && d.no_zero_divisors) << d.name;
  }
}

TEST(Descriptor, MonusFlags) {
  EXPECT_FALSE(descriptor(SemiringKind::Security).has_monus);
  EXPECT_FALSE(descriptor(SemiringKind::Integer).has_monus);
  EXPECT_FALSE(descriptor(SemiringKind::Integer).zero_sum_free);
  EXPECT_FALSE(descriptor(SemiringKind::Lukasiewicz).no_zero_divisors);
  for (auto k : {SemiringKind::Boolean, SemiringKind::Bag, SemiringKind::Tropical,
                 SemiringKind::Fuzzy, SemiringKind::Lukasiewicz, SemiringKind::Provenance}) {
    EXPECT_TRUE(descriptor(k).has_monus) << name_of(k);
  }
}

TEST(Descriptor, ParseNames) {
  for (auto k : kAllSemirings) EXPECT_EQ(parse_semiring(name_of(k)), k);
  EXPECT_THROW(parse_semiring("octonion"), Error);
}

TEST(Add, Examples) {
  EXPECT_EQ(add(Value::bag(3), Value::bag(4)), Value::bag(7));
  EXPECT_EQ(add(Value::tropical(3), Value::tropical(5)), Value::tropical(3));
  EXPECT_EQ(add(sec(42, SecurityLevel::T), sec(1, SecurityLevel::P)),
            sec(43, SecurityLevel::T));
  EXPECT_EQ(add(fz(1, 3), fz(1, 2)), fz(1, 2));
  EXPECT_EQ(add(Value::integer(1), Value::integer(-1)), Value::integer(0));
}

TEST(Add, InstanceMismatch) {
  try {
    add(Value::bag(1), Value::integer(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InstanceMismatch);
  }
}

TEST(Mul, Examples) {
  EXPECT_EQ(mul(Value::tropical(3), Value::tropical(5)), Value::tropical(8));
  EXPECT_EQ(mul(lk(7, 10), lk(6, 10)), lk(3, 10));
  EXPECT_EQ(mul(lk(3, 10), lk(6, 10)), lk(0, 1));
  EXPECT_EQ(mul(poly("x + 1"), poly("x + 1")), poly("x^2 + 2*x + 1"));
  EXPECT_EQ(mul(Value::tropical_infinity(), Value::tropical(2)), Value::tropical_infinity());
}

TEST(Mul, ZeroAnnihilates) {
  for (auto k : kAllSemirings) {
    Value z = Value::zero(k);
    Value o = Value::one(k);
    EXPECT_TRUE(mul(z, o).is_zero()) << name_of(k);
    EXPECT_EQ(mul(o, o), o) << name_of(k);
    EXPECT_EQ(add(z, o), o) << name_of(k);
  }
}

TEST(Monus, Examples) {
  EXPECT_EQ(monus(Value::bag(3), Value::bag(5)), Value::bag(0));
  EXPECT_EQ(monus(Value::bag(5), Value::bag(3)), Value::bag(2));
  EXPECT_EQ(monus(Value::tropical(2), Value::tropical(5)), Value::tropical(2));
  EXPECT_EQ(monus(Value::tropical(5), Value::tropical(2)), Value::tropical_infinity());
  EXPECT_EQ(monus(poly("2*x + 3"), poly("x + 5")), poly("x"));
  EXPECT_EQ(monus(fz(7, 10), fz(3, 10)), fz(7, 10));
  EXPECT_EQ(monus(fz(3, 10), fz(7, 10)), fz(0, 1));
  EXPECT_EQ(monus(Value::boolean(true), Value::boolean(false)), Value::boolean(true));
  EXPECT_EQ(monus(Value::boolean(true), Value::boolean(true)), Value::boolean(false));
}

TEST(Monus, UnsupportedInstances) {
  for (auto [a, b] : {std::pair{sec(1, SecurityLevel::I), sec(2, SecurityLevel::T)},
                      std::pair{Value::integer(3), Value::integer(1)}}) {
    try {
      monus(a, b);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MonusUnsupported);
    }
  }
}

TEST(Support, Examples) {
  EXPECT_EQ(support_val(Value::bag(7)), Value::bag(1));
  EXPECT_EQ(support_val(Value::tropical_infinity()), Value::tropical_infinity());
  EXPECT_EQ(support_val(Value::tropical(4)), Value::tropical(0));
  EXPECT_EQ(support_val(poly("0")), poly("0"));
  EXPECT_EQ(support_val(fz(1, 2)), fz(1, 1));
  EXPECT_EQ(support_val(Value::integer(-3)), Value::integer(1));
}

TEST(NaturalOrder, Examples) {
  EXPECT_TRUE(nat_leq(Value::tropical_infinity(), Value::tropical(3)));
  EXPECT_TRUE(nat_leq(Value::tropical(5), Value::tropical(3)));
  EXPECT_FALSE(nat_leq(Value::tropical(3), Value::tropical(5)));
  EXPECT_FALSE(nat_leq(sec(42, SecurityLevel::T), sec(42, SecurityLevel::I)));
  EXPECT_FALSE(nat_leq(sec(42, SecurityLevel::I), sec(42, SecurityLevel::T)));
  EXPECT_TRUE(nat_leq(sec(42, SecurityLevel::P), sec(43, SecurityLevel::I)));
  EXPECT_TRUE(nat_leq(Value::security_zero(), sec(1, SecurityLevel::I)));
  EXPECT_TRUE(nat_leq(poly("x"), poly("2*x + 3")));
  EXPECT_FALSE(nat_leq(poly("x^2"), poly("2*x + 3")));
  EXPECT_TRUE(nat_leq(fz(1, 3), fz(1, 2)));
}

TEST(NaturalOrder, IntegersUndecidable) {
  try {
    nat_leq(Value::integer(1), Value::integer(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OrderUndecidable);
  }
}

TEST(Canonical, RationalsReduced) {
  EXPECT_EQ(fz(2, 4), fz(1, 2));
  EXPECT_EQ(fz(2, 4).to_string(), "1/2");
  EXPECT_THROW(Value::fuzzy(Rational(3, 2)), Error);
  EXPECT_THROW(Value::lukasiewicz(Rational(-1, 2)), Error);
}

TEST(Canonical, PolynomialDropsZeros) {
  Polynomial p;
  p[{{"x", 1}}] = 0;
  p[{}] = 2;
  EXPECT_EQ(Value::polynomial(p), poly("2"));
  EXPECT_EQ(Value::monomial(1, {{"x", 0}, {"y", 1}}), poly("y"));
}

TEST(Text, RoundTrip) {
  const std::vector<Value> vs = {
      Value::boolean(true), Value::bag(12), Value::tropical(3), Value::tropical_infinity(),
      fz(3, 7), lk(1, 1), poly("2*x^2*y + 3"), sec(42, SecurityLevel::C),
      Value::security_zero(), Value::integer(-5)};
  for (const auto& v : vs) {
    EXPECT_EQ(parse_value(v.kind(), v.to_string()), v) << v.to_string();
    EXPECT_EQ(value_from_json(v.kind(), to_json(v)), v) << v.to_string();
  }
}

TEST(Text, Encodings) {
  EXPECT_EQ(to_json(Value::boolean(true)), nlohmann::json(true));
  EXPECT_EQ(to_json(Value::tropical_infinity()), nlohmann::json("inf"));
  EXPECT_EQ(to_json(sec(3, SecurityLevel::S)), nlohmann::json("(3,S)"));
  EXPECT_EQ(to_json(Value::security_zero()), nlohmann::json("0"));
  EXPECT_EQ(poly("3 + 2*y*x^2").to_string(), "2*x^2*y + 3");
  nlohmann::json pj = to_json(poly("x + 1"));
  ASSERT_TRUE(pj.is_array());
  EXPECT_EQ(pj.size(), 2u);
}

TEST(Text, Rejects) {
  EXPECT_THROW(parse_value(SemiringKind::Bag, "-1"), Error);
  EXPECT_THROW(parse_value(SemiringKind::Fuzzy, "4/3"), Error);
  EXPECT_THROW(parse_value(SemiringKind::Security, "(0,I)"), Error);
  EXPECT_THROW(parse_value(SemiringKind::Security, "(1,Q)"), Error);
  EXPECT_THROW(parse_value(SemiringKind::Tropical, "abc"), Error);
}

TEST(BigNumbers, ArbitraryPrecision) {
  Value v = Value::bag(1);
  for (int i = 0; i < 100; ++i) v = mul(v, Value::bag(2));
  EXPECT_EQ(v.to_string(), "1267650600228229401496703205376");
}

}  // namespace
}  // namespace krel
