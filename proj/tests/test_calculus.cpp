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

#include "krel/calculus.hpp"
#include "krel/error.hpp"
#include "krel/harness.hpp"

namespace krel {
namespace {

KDatabase sample_db(SemiringKind kind = SemiringKind::Bag) {
  KDatabase db(kind, parse_schema("R:2,S:1"));
  auto v = [&](int n) {
    return kind == SemiringKind::Bag ? Value::bag(n) : Value::tropical(n);
  };
  db.relation("R").set(tuple({"a", "b"}), v(2));
  db.relation("R").set(tuple({"a", "c"}), v(3));
  db.relation("R").set(tuple({"b", "b"}), v(1));
  db.relation("S").set(tuple({"b"}), v(4));
  db.relation("S").set(tuple({"c"}), v(1));
  return db;
}

Value at(std::string_view f, const KStructure& a, Assignment alpha) {
  return eval_at(*parse_formula(f), a, alpha);
}

DomainElem E(const char* s) { return DomainElem(s); }

TEST(FormulaParse, PrintsCanonically) {
  const char* cases[] = {
      "R(x,y)",
      "x = y",
      "x != y",
      "R(x,y) and S(y)",
      "(exists y. R(x,y)) and S(y)",
      "exists y. (R(x,y) and S(y))",
      "(nabla R(x,y)) or x = y",
      "(R(x,y) butnot R(y,x)) or S(x)",
      "R(x,y) and (S(x) or S(y))",
      "forall y. S(y)",
      "nabla nabla S(x)",
      "exists x. exists y. R(x,y)",
  };
  for (const char* c : cases) EXPECT_EQ(to_string(*parse_formula(c)), c);
}

TEST(FormulaParse, Precedence) {
  auto f = parse_formula("S(x) or S(y) and R(x,y)");
  EXPECT_EQ(f->kind, FormulaKind::Or);
  auto g = parse_formula("S(x) butnot S(y) or S(z)");
  EXPECT_EQ(g->kind, FormulaKind::Or);
  EXPECT_EQ(g->left->kind, FormulaKind::ButNot);
  auto h = parse_formula("exists y. R(x,y) and S(y)");
  EXPECT_EQ(h->kind, FormulaKind::And);
}

TEST(FormulaParse, NeqSugar) {
  EXPECT_TRUE(same(parse_formula("x != y"),
                   rc::butnot(rc::eq("x", "x"), rc::eq("x", "y"))));
}

TEST(FormulaParse, Errors) {
  for (const char* bad : {"", "R(x,", "exists . R(x)", "x =", "S(x) and", "(S(x)", "R()x"}) {
    EXPECT_THROW(parse_formula(bad), Error) << bad;
  }
}

TEST(FreeVars, Cases) {
  EXPECT_EQ(free_vars(*parse_formula("exists y. (R(x,y) and S(y))")), VarList{"x"});
  EXPECT_TRUE(free_vars(*parse_formula("forall y. S(y)")).empty());
  EXPECT_EQ(free_vars(*parse_formula("R(y,x)")).size(), 2u);
  EXPECT_THROW(free_vars(*parse_formula("exists z. S(x)")), Error);
}

TEST(CheckFormula, Schema) {
  Schema s = parse_schema("R:2,S:1");
  EXPECT_NO_THROW(check_formula(*parse_formula("R(x,y) and S(x)"), s));
  EXPECT_THROW(check_formula(*parse_formula("R(x)"), s), Error);
  EXPECT_THROW(check_formula(*parse_formula("Q(x)"), s), Error);
}

TEST(RenameFree, AvoidsCapture) {
  auto f = parse_formula("exists y. R(x,y)");
  EXPECT_EQ(to_string(*rename_free(f, {{"x", "z"}})), "exists y. R(z,y)");
  EXPECT_THROW(rename_free(f, {{"x", "y"}}), Error);
}

TEST(EvalAt, Connectives) {
  KStructure a = KStructure::active(sample_db());
  Assignment ab{{"x", E("a")}, {"y", E("b")}};
  EXPECT_EQ(at("R(x,y)", a, ab), Value::bag(2));
  EXPECT_EQ(at("R(x,y) and S(y)", a, ab), Value::bag(8));
  EXPECT_EQ(at("R(x,y) or S(y)", a, ab), Value::bag(6));
  EXPECT_EQ(at("S(y) butnot R(x,y)", a, ab), Value::bag(2));
  EXPECT_EQ(at("nabla R(x,y)", a, ab), Value::bag(1));
  EXPECT_EQ(at("x = y", a, ab), Value::bag(0));
  EXPECT_EQ(at("x != y", a, ab), Value::bag(1));
  EXPECT_EQ(at("exists y. R(x,y)", a, {{"x", E("a")}}), Value::bag(5));
  EXPECT_EQ(at("forall y. (R(x,y) or S(y))", a, {{"x", E("a")}}), Value::bag(0));
  EXPECT_EQ(at("forall y. (R(x,y) or S(y))", a, {{"x", E("b")}}), Value::bag(0));
  EXPECT_THROW(at("R(x,y)", a, {{"x", E("a")}}), Error);
}

TEST(EvalAt, Tropical) {
  KStructure a = KStructure::active(sample_db(SemiringKind::Tropical));
  EXPECT_EQ(at("exists y. R(x,y)", a, {{"x", E("a")}}), Value::tropical(2));
  EXPECT_EQ(at("exists y. (R(x,y) and S(y))", a, {{"x", E("a")}}), Value::tropical(4));
}

TEST(EvalAt, ForallOverLargerUniverse) {
  KDatabase db = sample_db();
  KStructure act = KStructure::active(db);
  KStructure big(db, {E("a"), E("b"), E("c"), E("d")});
  Assignment x{{"x", E("a")}};
  // y = a, b, c contribute 1, 7, 5; the extra element d contributes 1.
  EXPECT_EQ(at("forall y. (R(x,y) or S(y) or y = y)", act, x), Value::bag(35));
  EXPECT_EQ(at("forall y. (R(x,y) or S(y) or y = y)", big, x), Value::bag(35));
  EXPECT_EQ(at("forall y. S(y)", big, {}), Value::bag(0));
}

TEST(RelationOf, ColumnOrderFollowsFreeVars) {
  KStructure a = KStructure::active(sample_db());
  auto f = parse_formula("S(x) and R(y,x)");
  EXPECT_EQ(free_vars(*f), (VarList{"x", "y"}));
  KRelation r = relation_of(*f, a);
  EXPECT_EQ(r.arity(), 2u);
  EXPECT_EQ(r.at(tuple({"b", "a"})), Value::bag(8));
  EXPECT_EQ(r.at(tuple({"b", "b"})), Value::bag(4));
  KRelation s = relation_of(*parse_formula("exists x. exists y. R(x,y)"), a);
  EXPECT_EQ(s.at(Tuple{}), Value::bag(6));
}

TEST(FormulaParse, RandomRoundTrip) {
  Rng rng(5);
  Schema s = default_schema();
  for (int i = 0; i < 1000; ++i) {
    GenConfig cfg;
    cfg.semiring = i % 2 ? SemiringKind::Boolean : SemiringKind::Bag;
    cfg.allow_forall = true;
    FormulaPtr f = gen_formula(rng, cfg, s);
    std::string text = to_string(*f);
    FormulaPtr back = parse_formula(text);
    ASSERT_TRUE(same(f, back)) << text;
    ASSERT_EQ(to_string(*back), text);
  }
}

}  // namespace
}  // namespace krel
