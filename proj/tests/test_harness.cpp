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
#include "krel/harness.hpp"
#include "krel/io.hpp"

#ifndef KREL_DATA_DIR
#define KREL_DATA_DIR "data"
#endif

namespace krel {
namespace {

TEST(Rng, Deterministic) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.below(1000), b.below(1000));
  Rng c(1);
  for (int i = 0; i < 1000; ++i) {
    auto x = c.between(-3, 3);
    EXPECT_GE(x, -3);
    EXPECT_LE(x, 3);
  }
}

TEST(GenValue, NeverZeroUnlessAllowed) {
  Rng rng(9);
  for (auto k : kAllSemirings) {
    for (int i = 0; i < 200; ++i) {
      Value v = gen_value(rng, k);
      EXPECT_EQ(v.kind(), k);
      EXPECT_FALSE(v.is_zero()) << name_of(k);
    }
  }
}

TEST(GenDatabase, RespectsConfig) {
  GenConfig cfg;
  cfg.seed = 7;
  cfg.adom_size = 3;
  cfg.max_supp_rows = 4;
  cfg.semiring = SemiringKind::Tropical;
  KDatabase db = gen_database(cfg, default_schema());
  EXPECT_EQ(db.kind(), SemiringKind::Tropical);
  EXPECT_LE(active_domain(db).size(), 3u);
  for (const auto& sym : db.schema()) {
    EXPECT_LE(db.relation(sym.name).support_size(), 4u);
  }
  EXPECT_EQ(gen_database(cfg, default_schema()), db);
}

TEST(GenAlgebra, RespectsCapabilities) {
  Schema s = default_schema();
  Rng rng(1);
  std::size_t divs = 0;
  for (int i = 0; i < 500; ++i) {
    GenConfig sec;
    sec.semiring = SemiringKind::Security;
    sec.allow_supp = false;
    ExprPtr e = gen_algebra_expr(rng, sec, s);
    EXPECT_FALSE(contains_kind(*e, ExprKind::Diff));
    EXPECT_FALSE(contains_kind(*e, ExprKind::Div));
    EXPECT_FALSE(contains_kind(*e, ExprKind::Supp));
    EXPECT_LE(depth(*e), sec.max_depth);
    EXPECT_LE(arity_of(*e, s), sec.max_arity);
    GenConfig bag;
    bag.allow_div = true;
    ExprPtr d = gen_algebra_expr(rng, bag, s);
    divs += contains_kind(*d, ExprKind::Div);
    EXPECT_LE(arity_of(*d, s), bag.max_arity);
  }
  EXPECT_GT(divs, 50u);
}

TEST(GenFormula, WellFormed) {
  Schema s = default_schema();
  Rng rng(2);
  std::size_t foralls = 0, sentences = 0;
  for (int i = 0; i < 500; ++i) {
    GenConfig cfg;
    cfg.semiring = SemiringKind::Boolean;
    cfg.allow_forall = true;
    FormulaPtr f = gen_formula(rng, cfg, s);
    EXPECT_NO_THROW(check_formula(*f, s));
    foralls += contains_kind(*f, FormulaKind::Forall);
    sentences += free_vars(*f).empty();
  }
  EXPECT_GT(foralls, 0u);
  EXPECT_GT(sentences, 0u);
}

TEST(FreshElements, SkipAdom) {
  std::set<DomainElem> adom{DomainElem("a"), DomainElem("c")};
  auto f = fresh_elements(adom, 3);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0], DomainElem("b"));
  EXPECT_EQ(f[1], DomainElem("d"));
  EXPECT_EQ(f[2], DomainElem("e"));
}

TEST(CheckEquivalence, DetectsMismatch) {
  KDatabase db(SemiringKind::Bag, default_schema());
  db.relation("R").set(tuple({"a", "b"}), Value::bag(2));
  Verdict ok = check_equivalence(*parse_algebra("R"), *parse_formula("R(x,y)"),
                                 {"x", "y"}, db);
  EXPECT_TRUE(ok.pass);
  Verdict bad = check_equivalence(*parse_algebra("R"), *parse_formula("R(x,y)"),
                                  {"y", "x"}, db);
  EXPECT_FALSE(bad.pass);
  ASSERT_TRUE(bad.tuple.has_value());
  EXPECT_THROW(check_equivalence(*parse_algebra("R"), *parse_formula("R(x,y)"),
                                 {"x", "y"}, db, Capability::PositiveIdempotent),
               Error);
}

TEST(DomainIndependence, DisjunctionWithExtraVariableFails) {
  KDatabase db = load_database(KREL_DATA_DIR "/domind.json");
  FormulaPtr f = parse_formula("R1(y1) or R2(y1,y2)");
  Verdict v = check_domain_independence(*f, db, 1);
  EXPECT_FALSE(v.pass);
  ASSERT_TRUE(v.tuple.has_value());
  EXPECT_EQ(*v.tuple, tuple({"a", "b"}));
  EXPECT_TRUE(check_domain_independence(*parse_formula("R2(y1,y2)"), db, 2).pass);
  EXPECT_THROW(check_domain_independence(*f, db, 0), Error);
}

TEST(Axioms, AllMonusInstancesPass) {
  for (auto k : kAllSemirings) {
    if (!descriptor(k).has_monus) {
      EXPECT_THROW(monus_axiom_suite(k, 10, 0), Error);
      continue;
    }
    AxiomReport r = monus_axiom_suite(k, 500, 4);
    EXPECT_TRUE(r.pass()) << name_of(k) << " " << r.to_json().dump();
    EXPECT_EQ(r.exhaustive, k == SemiringKind::Boolean);
  }
}

TEST(VerdictRecord, Json) {
  Verdict v;
  v.pass = false;
  v.tuple = tuple({"a"});
  v.left = "1";
  v.right = "2";
  auto j = verdict_record("a2c", 9, SemiringKind::Bag, v);
  EXPECT_EQ(j["property"], "a2c");
  EXPECT_EQ(j["seed"], 9);
  EXPECT_EQ(j["semiring"], "bag");
  EXPECT_EQ(j["counterexample"]["tuple"], nlohmann::json::array({"a"}));
}

}  // namespace
}  // namespace krel
