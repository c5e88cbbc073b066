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


// Reference implementations written straight from the definitions, with no
// sharing of code paths with the library, compared against it on random inputs.

#include <functional>
#include <map>

#include <gtest/gtest.h>

#include "krel/harness.hpp"
#include "krel/transpile.hpp"

namespace krel {
namespace {

const std::vector<SemiringKind> kInstances = {
    SemiringKind::Boolean, SemiringKind::Bag, SemiringKind::Tropical,
    SemiringKind::Fuzzy, SemiringKind::Provenance};

using Dense = std::function<Value(const Tuple&)>;

// All tuples of length n over dom.
std::vector<Tuple> all_tuples(const std::vector<DomainElem>& dom, std::size_t n) {
  std::vector<Tuple> out{Tuple{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Tuple> next;
    for (const auto& t : out) {
      for (const auto& d : dom) {
        Tuple u = t;
        u.push_back(d);
        next.push_back(u);
      }
    }
    out = std::move(next);
  }
  return out;
}

// Brute-force algebra semantics: a function on tuples, with sums and products
// taken over the whole of dom^k.
struct RefAlgebra {
  const KDatabase& db;
  std::vector<DomainElem> dom;
  SemiringKind k;

  Value sum(const std::vector<Value>& xs) const {
    Value s = Value::zero(k);
    for (const auto& x : xs) s = add(s, x);
    return s;
  }

  std::pair<std::size_t, Dense> run(const AlgebraExpr& e) const {
    switch (e.kind) {
      case ExprKind::Rel: {
        const KRelation* r = &db.relation(e.name);
        return {r->arity(), [r](const Tuple& t) { return r->at(t); }};
      }
      case ExprKind::Union: {
        auto [n, f] = run(*e.left);
        auto g = run(*e.right).second;
        return {n, [f, g](const Tuple& t) { return add(f(t), g(t)); }};
      }
      case ExprKind::Diff: {
        auto [n, f] = run(*e.left);
        auto g = run(*e.right).second;
        return {n, [f, g](const Tuple& t) { return monus(f(t), g(t)); }};
      }
      case ExprKind::Product: {
        auto [n, f] = run(*e.left);
        auto [m, g] = run(*e.right);
        return {n + m, [f, g, n](const Tuple& t) {
                  return mul(f(Tuple(t.begin(), t.begin() + n)),
                             g(Tuple(t.begin() + n, t.end())));
                }};
      }
      case ExprKind::Project: {
        auto [n, f] = run(*e.left);
        auto idx = e.indices;
        auto inner = all_tuples(dom, n);
        return {idx.size(), [this, f, idx, inner](const Tuple& t) {
                  std::vector<Value> xs;
                  for (const auto& u : inner) {
                    bool hit = true;
                    for (std::size_t i = 0; i < idx.size(); ++i) {
                      hit = hit && u[idx[i] - 1] == t[i];
                    }
                    if (hit) xs.push_back(f(u));
                  }
                  return sum(xs);
                }};
      }
      case ExprKind::Select: {
        auto [n, f] = run(*e.left);
        SelectionCondition c = *e.cond;
        SemiringKind kk = k;
        return {n, [f, c, kk](const Tuple& t) {
                  return c.holds(t) ? f(t) : Value::zero(kk);
                }};
      }
      case ExprKind::Supp: {
        auto [n, f] = run(*e.left);
        SemiringKind kk = k;
        return {n, [f, kk](const Tuple& t) {
                  return f(t).is_zero() ? Value::zero(kk) : Value::one(kk);
                }};
      }
      case ExprKind::Div: {
        auto [n, f] = run(*e.left);
        auto [m, g] = run(*e.right);
        std::size_t out = n - m;
        auto tails = all_tuples(dom, m);
        return {out, [this, f, g, tails](const Tuple& a) {
                  std::vector<Value> row;
                  Value prod = Value::one(k);
                  for (const auto& b : tails) {
                    Tuple ab = a;
                    ab.insert(ab.end(), b.begin(), b.end());
                    row.push_back(f(ab));
                    if (!g(b).is_zero()) prod = mul(prod, f(ab));
                  }
                  Value s = sum(row);
                  Value sup = s.is_zero() ? Value::zero(k) : Value::one(k);
                  return mul(sup, prod);
                }};
      }
    }
    throw std::logic_error("unreachable");
  }
};

std::vector<DomainElem> dom_of(const KDatabase& db) {
  auto a = active_domain(db);
  return {a.begin(), a.end()};
}

void expect_matches(const KRelation& got, std::size_t n, const Dense& f,
                    const std::vector<DomainElem>& dom, const std::string& what) {
  ASSERT_EQ(got.arity(), n) << what;
  for (const auto& t : all_tuples(dom, n)) {
    ASSERT_EQ(got.at(t), f(t)) << what << " at " << to_string(t);
  }
  for (const auto& [t, v] : got.rows()) ASSERT_EQ(v, f(t)) << what;
}

TEST(Oracle, AlgebraEvaluator) {
  Schema s = default_schema();
  for (auto k : kInstances) {
    Rng rng(100 + static_cast<int>(k));
    for (int i = 0; i < 150; ++i) {
      GenConfig cfg;
      cfg.semiring = k;
      cfg.adom_size = 3;
      cfg.max_depth = 4;
      cfg.max_arity = 3;
      cfg.allow_div = descriptor(k).positive;
      KDatabase db = gen_database(rng, cfg, s);
      ExprPtr e = gen_algebra_expr(rng, cfg, s);
      RefAlgebra ref{db, dom_of(db), k};
      auto [n, f] = ref.run(*e);
      expect_matches(eval(*e, db), n, f, ref.dom, to_string(*e));
    }
  }
}

TEST(Oracle, DivisionDefinition) {
  for (auto k : kInstances) {
    if (!descriptor(k).positive) continue;
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
      std::vector<DomainElem> dom{DomainElem("a"), DomainElem("b"), DomainElem("c")};
      KRelation r1(k, 2), r2(k, 1);
      for (const auto& t : all_tuples(dom, 2)) {
        if (rng.chance(2, 3)) r1.set(t, gen_value(rng, k));
      }
      for (const auto& t : all_tuples(dom, 1)) {
        if (rng.chance(1, 2)) r2.set(t, gen_value(rng, k));
      }
      KRelation q = divide(r1, r2);
      for (const auto& a : dom) {
        Value s = Value::zero(k), p = Value::one(k);
        for (const auto& b : dom) {
          s = add(s, r1.at(Tuple{a, b}));
          if (!r2.at(Tuple{b}).is_zero()) p = mul(p, r1.at(Tuple{a, b}));
        }
        Value want = s.is_zero() ? Value::zero(k) : p;
        ASSERT_EQ(q.at(Tuple{a}), want) << name_of(k);
      }
    }
  }
}

// Candidate values used as the search space for the minimal-c oracle.
std::vector<Value> candidates(SemiringKind k) {
  std::vector<Value> out;
  switch (k) {
    case SemiringKind::Boolean:
      out = {Value::boolean(false), Value::boolean(true)};
      break;
    case SemiringKind::Bag:
      for (int i = 0; i <= 20; ++i) out.push_back(Value::bag(i));
      break;
    case SemiringKind::Tropical:
      out.push_back(Value::tropical_infinity());
      for (int i = 0; i <= 20; ++i) out.push_back(Value::tropical(i));
      break;
    case SemiringKind::Fuzzy:
    case SemiringKind::Lukasiewicz:
      for (int q = 1; q <= 8; ++q) {
        for (int p = 0; p <= q; ++p) {
          Rational r(p, q);
          out.push_back(k == SemiringKind::Fuzzy ? Value::fuzzy(r) : Value::lukasiewicz(r));
        }
      }
      break;
    default:
      break;
  }
  return out;
}

TEST(Oracle, MonusIsLeastSolution) {
  for (auto k : {SemiringKind::Boolean, SemiringKind::Bag, SemiringKind::Tropical,
                 SemiringKind::Fuzzy, SemiringKind::Lukasiewicz}) {
    auto cs = candidates(k);
    Rng rng(3);
    for (int i = 0; i < 300; ++i) {
      const Value& a = rng.pick(cs);
      const Value& b = rng.pick(cs);
      const Value* least = nullptr;
      for (const auto& c : cs) {
        if (!nat_leq(a, add(b, c))) continue;
        if (least == nullptr || nat_leq(c, *least)) least = &c;
      }
      ASSERT_NE(least, nullptr);
      for (const auto& c : cs) {
        if (nat_leq(a, add(b, c))) {
          ASSERT_TRUE(nat_leq(*least, c));
        }
      }
      ASSERT_EQ(monus(a, b), *least) << name_of(k) << " " << a << " - " << b;
    }
  }
}

// Direct recursive semantics with no memoization.
Value naive(const Formula& f, const KStructure& st, Assignment alpha) {
  SemiringKind k = st.database().kind();
  switch (f.kind) {
    case FormulaKind::Eq:
      return alpha.at(f.vars[0]) == alpha.at(f.vars[1]) ? Value::one(k) : Value::zero(k);
    case FormulaKind::Atom: {
      Tuple t;
      for (const auto& v : f.vars) t.push_back(alpha.at(v));
      return st.database().relation(f.name).at(t);
    }
    case FormulaKind::And:
      return mul(naive(*f.left, st, alpha), naive(*f.right, st, alpha));
    case FormulaKind::Or:
      return add(naive(*f.left, st, alpha), naive(*f.right, st, alpha));
    case FormulaKind::ButNot:
      return monus(naive(*f.left, st, alpha), naive(*f.right, st, alpha));
    case FormulaKind::Nabla:
      return support_val(naive(*f.left, st, alpha));
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool ex = f.kind == FormulaKind::Exists;
      Value acc = ex ? Value::zero(k) : Value::one(k);
      for (const auto& d : st.universe()) {
        alpha[f.vars[0]] = d;
        Value v = naive(*f.left, st, alpha);
        acc = ex ? add(acc, v) : mul(acc, v);
      }
      return acc;
    }
  }
  throw std::logic_error("unreachable");
}

TEST(Oracle, CalculusEvaluator) {
  Schema s = default_schema();
  for (auto k : kInstances) {
    Rng rng(200 + static_cast<int>(k));
    for (int i = 0; i < 150; ++i) {
      GenConfig cfg;
      cfg.semiring = k;
      cfg.adom_size = 3;
      cfg.max_depth = 4;
      cfg.allow_forall = descriptor(k).positive;
      KDatabase db = gen_database(rng, cfg, s);
      if (!db.non_trivial()) continue;
      FormulaPtr f = gen_formula(rng, cfg, s);
      KStructure st = KStructure::active(db);
      VarList fv = free_vars(*f);
      KRelation got = relation_of(*f, st);
      for (const auto& t : all_tuples(st.universe(), fv.size())) {
        Assignment alpha;
        for (std::size_t j = 0; j < fv.size(); ++j) alpha[fv[j]] = t[j];
        Value want = naive(*f, st, alpha);
        ASSERT_EQ(got.at(t), want) << to_string(*f);
        ASSERT_EQ(eval_at(*f, st, alpha), want) << to_string(*f);
      }
    }
  }
}

TEST(Oracle, Relevance) {
  Schema s = default_schema();
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    GenConfig cfg;
    cfg.semiring = SemiringKind::Provenance;
    KDatabase db = gen_database(rng, cfg, s);
    if (!db.non_trivial()) continue;
    FormulaPtr f = gen_formula(rng, cfg, s);
    KStructure st = KStructure::active(db);
    VarList fv = free_vars(*f);
    const auto& u = st.universe();
    Assignment alpha, beta;
    for (const auto& v : fv) {
      alpha[v] = rng.pick(u);
      beta[v] = alpha[v];
    }
    for (const char* extra : {"y1", "y2", "y3", "y4", "zz"}) {
      if (!alpha.count(extra)) beta[extra] = rng.pick(u);
    }
    ASSERT_EQ(eval_at(*f, st, alpha), eval_at(*f, st, beta)) << to_string(*f);
  }
}

TEST(Oracle, CompositionalEqualities) {
  Schema s = default_schema();
  for (auto k : kInstances) {
    Rng rng(31);
    for (int i = 0; i < 60; ++i) {
      GenConfig cfg;
      cfg.semiring = k;
      cfg.max_depth = 3;
      KDatabase db = gen_database(rng, cfg, s);
      if (!db.non_trivial()) continue;
      KStructure st = KStructure::active(db);
      FormulaPtr a = gen_formula(rng, cfg, s);
      FormulaPtr b = gen_formula(rng, cfg, s);
      std::set<Variable> vs;
      for (const auto& v : free_vars(*a)) vs.insert(v);
      for (const auto& v : free_vars(*b)) vs.insert(v);
      VarList all(vs.begin(), vs.end());
      for (const auto& t : all_tuples(st.universe(), all.size())) {
        Assignment al;
        for (std::size_t j = 0; j < all.size(); ++j) al[all[j]] = t[j];
        Value va = eval_at(*a, st, al), vb = eval_at(*b, st, al);
        ASSERT_EQ(eval_at(*rc::conj(a, b), st, al), mul(va, vb));
        ASSERT_EQ(eval_at(*rc::disj(a, b), st, al), add(va, vb));
        ASSERT_EQ(eval_at(*rc::butnot(a, b), st, al), monus(va, vb));
        ASSERT_EQ(eval_at(*rc::nabla(a), st, al), support_val(va));
      }
    }
  }
}

TEST(Oracle, PrintedFormsEvaluateAlike) {
  Schema s = default_schema();
  Rng rng(44);
  for (int i = 0; i < 1000; ++i) {
    GenConfig cfg;
    cfg.allow_div = i % 2 == 0;
    KDatabase db = gen_database(rng, cfg, s);
    ExprPtr e = gen_algebra_expr(rng, cfg, s);
    ASSERT_EQ(eval(*parse_algebra(to_string(*e)), db), eval(*e, db)) << to_string(*e);
  }
}

}  // namespace
}  // namespace krel
