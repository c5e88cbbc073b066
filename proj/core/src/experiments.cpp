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

#include "krel/experiments.hpp"

#include <functional>
#include <sstream>

#include "krel/error.hpp"
#include "krel/harness.hpp"
#include "krel/transpile.hpp"

namespace krel {

KDatabase division_witness_db(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
  KDatabase db(SemiringKind::Bag, default_schema());
  for (std::size_t i = 1; i <= n; ++i) {
    DomainElem b("b" + std::to_string(i));
    db.relation("R").set({DomainElem("a"), b}, Value::bag(2));
    db.relation("S").set({b}, Value::bag(1));
  }
  return db;
}

Value bag_division_witness(std::size_t n) {
  KRelation q = eval(*ra::div(ra::rel("R"), ra::rel("S")), division_witness_db(n));
  return q.at({DomainElem("a")});
}

std::size_t expr_length(const AlgebraExpr& e) {
  std::size_t l = 1;
  if (e.left) l += expr_length(*e.left);
  if (e.right) l += expr_length(*e.right);
  return l;
}

namespace {

BigInt power(std::size_t base, std::size_t exp) {
  BigInt r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

std::string big(const BigInt& x) { return x.str(); }

}  // namespace

BigInt bound_poly(const AlgebraExpr& e, std::size_t n) {
  switch (e.kind) {
    case ExprKind::Rel: return 1;
    case ExprKind::Product: return bound_poly(*e.left, n) * bound_poly(*e.right, n);
    case ExprKind::Project: return power(n, expr_length(*e.left)) * bound_poly(*e.left, n);
    case ExprKind::Union: return bound_poly(*e.left, n) + bound_poly(*e.right, n);
    case ExprKind::Diff:
    case ExprKind::Select: return bound_poly(*e.left, n);
    case ExprKind::Supp: return 1;
    case ExprKind::Div: break;
  }
  throw Error(ErrorCode::InvalidArgument, "the bound covers division-free expressions only");
}

nlohmann::json ExprMetrics::to_json() const {
  return {{"expr", expr},
          {"length", length},
          {"supp_size", big(supp_size)},
          {"supp_bound", big(supp_bound)},
          {"highest_mult", big(highest_mult)},
          {"mult_bound", big(mult_bound)},
          {"ok", ok()}};
}

ExprMetrics measure(const AlgebraExpr& e, std::size_t n) {
  ExprMetrics m;
  m.expr = to_string(e);
  m.length = expr_length(e);
  KRelation r = eval(e, division_witness_db(n));
  m.supp_size = r.support_size();
  m.highest_mult = 0;
  for (const auto& [t, v] : r.rows()) m.highest_mult = std::max(m.highest_mult, v.as_int());
  m.supp_bound = power(n, m.length);
  m.mult_bound = bound_poly(e, n) * power(2, m.length);
  return m;
}

nlohmann::json BoundsReport::to_json() const {
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& f : failing) fails.push_back(f.to_json());
  return {{"experiment", "expression-bounds"},
          {"n", n},
          {"samples", samples},
          {"violations", violations},
          {"failing", fails},
          {"tightest_mult", tightest_mult.to_json()},
          {"pass", pass()}};
}

std::string BoundsReport::to_table() const {
  std::ostringstream os;
  os << "n=" << n << "  samples=" << samples << "  violations=" << violations
     << "  " << (pass() ? "PASS" : "FAIL") << '\n';
  os << "  tightest hm: " << tightest_mult.expr << "  hm=" << big(tightest_mult.highest_mult)
     << " <= " << big(tightest_mult.mult_bound) << '\n';
  for (const auto& f : failing) {
    os << "  violation: " << f.expr << "  supp=" << big(f.supp_size) << "/"
       << big(f.supp_bound) << "  hm=" << big(f.highest_mult) << "/"
       << big(f.mult_bound) << '\n';
  }
  return os.str();
}

BoundsReport expression_bounds(std::size_t n, std::size_t samples, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be at least 2");
  BoundsReport rep;
  rep.n = n;
  GenConfig cfg;
  cfg.semiring = SemiringKind::Bag;
  cfg.max_depth = 5;
  cfg.max_arity = 4;
  Rng rng(seed);
  const Schema schema = default_schema();
  // Compare hm/bound ratios as fractions without leaving the integers.
  BigInt best_num = -1;
  BigInt best_den = 1;
  for (std::size_t i = 0; i < samples; ++i) {
    ExprPtr e = gen_algebra_expr(rng, cfg, schema);
    ExprMetrics m = measure(*e, n);
    ++rep.samples;
    if (!m.ok()) {
      ++rep.violations;
      if (rep.failing.size() < 5) rep.failing.push_back(m);
    }
    if (m.highest_mult * best_den > best_num * m.mult_bound) {
      best_num = m.highest_mult;
      best_den = m.mult_bound;
      rep.tightest_mult = m;
    }
  }
  return rep;
}

// --- security pairs ----------------------------------------------------------

nlohmann::json SecurityReport::to_json() const {
  nlohmann::json mins = nlohmann::json::array();
  for (const auto& v : minimal) mins.push_back(v.to_string());
  return {{"experiment", "security-no-monus"},
          {"candidates", candidates},
          {"minimal", mins},
          {"pairwise_incomparable", pairwise_incomparable},
          {"has_minimum", has_minimum},
          {"pass", pass()}};
}

std::string SecurityReport::to_table() const {
  std::ostringstream os;
  os << "P = {(x,s) : (43,I) <= (1,I) + (x,s)}, x in 1..60: " << candidates
     << " elements\nminimal elements:";
  for (const auto& v : minimal) os << ' ' << v.to_string();
  os << "\npairwise incomparable: " << (pairwise_incomparable ? "yes" : "no")
     << "\nsmallest element exists: " << (has_minimum ? "yes" : "no") << '\n'
     << (pass() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

SecurityReport security_no_monus() {
  const SecurityLevel levels[] = {SecurityLevel::I, SecurityLevel::T, SecurityLevel::S,
                                  SecurityLevel::C, SecurityLevel::P};
  const Value target = Value::security(43, SecurityLevel::I);
  const Value b = Value::security(1, SecurityLevel::I);
  std::vector<Value> p;
  for (int x = 1; x <= 60; ++x) {
    for (auto s : levels) {
      Value c = Value::security(x, s);
      if (nat_leq(target, add(b, c))) p.push_back(c);
    }
  }
  SecurityReport rep;
  rep.candidates = p.size();
  for (const auto& c : p) {
    bool minimal = true;
    for (const auto& d : p) {
      if (!(d == c) && nat_leq(d, c)) {
        minimal = false;
        break;
      }
    }
    if (minimal) rep.minimal.push_back(c);
  }
  rep.pairwise_incomparable = true;
  for (const auto& x : rep.minimal) {
    for (const auto& y : rep.minimal) {
      if (!(x == y) && (nat_leq(x, y) || nat_leq(y, x))) rep.pairwise_incomparable = false;
    }
  }
  rep.has_minimum = false;
  for (const auto& c : p) {
    bool below_all = true;
    for (const auto& d : p) {
      if (!nat_leq(c, d)) {
        below_all = false;
        break;
      }
    }
    if (below_all) rep.has_minimum = true;
  }
  return rep;
}

// --- support inexpressibility samples ----------------------------------------

nlohmann::json SupportReport::to_json() const {
  return {{"experiment", name},
          {"samples", samples},
          {"violations", violations},
          {"counterexamples", counterexamples},
          {"pass", pass()}};
}

std::string SupportReport::to_table() const {
  std::ostringstream os;
  os << name << ": samples=" << samples << "  violations=" << violations << "  "
     << (pass() ? "PASS" : "FAIL") << '\n';
  for (const auto& c : counterexamples) os << "  " << c << '\n';
  return os.str();
}

namespace {

SupportReport support_samples(const std::string& name, SemiringKind kind, const Value& ra,
                              bool allow_div, std::size_t samples, std::uint64_t seed,
                              const std::function<bool(const KRelation&, std::string&)>& ok) {
  const Schema schema = {{"R", 1}};
  KDatabase db(kind, schema);
  db.relation("R").set({DomainElem("a")}, ra);
  GenConfig cfg;
  cfg.semiring = kind;
  cfg.allow_supp = false;
  cfg.allow_div = allow_div;
  Rng rng(seed);
  SupportReport rep;
  rep.name = name;
  for (std::size_t i = 0; i < samples; ++i) {
    ExprPtr e = gen_algebra_expr(rng, cfg, schema);
    KRelation r = eval(*e, db);
    ++rep.samples;
    std::string why;
    if (!ok(r, why)) {
      ++rep.violations;
      if (rep.counterexamples.size() < 5) {
        std::ostringstream os;
        os << to_string(*e) << " = " << r << " (" << why << ")";
        rep.counterexamples.push_back(os.str());
      }
    }
  }
  return rep;
}

bool constant_tuple(const Tuple& t) {
  for (const auto& e : t) {
    if (e.symbol != "a") return false;
  }
  return true;
}

}  // namespace

SupportReport fuzzy_support_witness(std::size_t samples, std::uint64_t seed) {
  const Rational half(1, 2);
  KRelation supp_r(SemiringKind::Fuzzy, 1);
  supp_r.set({DomainElem("a")}, Value::fuzzy(1));
  return support_samples(
      "fuzzy-support", SemiringKind::Fuzzy, Value::fuzzy(half), false, samples, seed,
      [&](const KRelation& r, std::string& why) {
        if (r == supp_r) {
          why = "equals supp(R)";
          return false;
        }
        for (const auto& [t, v] : r.rows()) {
          if (!constant_tuple(t)) {
            why = "non-constant tuple";
            return false;
          }
          if (v.as_rational() > half) {
            why = "value above 1/2";
            return false;
          }
        }
        return true;
      });
}

SupportReport bag_support_even(std::size_t samples, std::uint64_t seed) {
  return support_samples(
      "bag-support-even", SemiringKind::Bag, Value::bag(2), true, samples, seed,
      [](const KRelation& r, std::string& why) {
        for (const auto& [t, v] : r.rows()) {
          if (v.as_int() % 2 != 0) {
            why = "odd multiplicity " + v.to_string();
            return false;
          }
        }
        return true;
      });
}

// --- active domain over the integers -----------------------------------------

nlohmann::json AdomFailureReport::to_json() const {
  nlohmann::json ad = nlohmann::json::array();
  for (const auto& e : adom) ad.push_back(e.symbol);
  std::ostringstream er;
  er << e_adom;
  return {{"experiment", "adom-failure"},
          {"e_adom", er.str()},
          {"adom", ad},
          {"reproduced", reproduced()}};
}

std::string AdomFailureReport::to_table() const {
  std::ostringstream os;
  os << "int R = {(a,b) -> 1, (b,a) -> -1}\nE_adom = " << e_adom << "\nadom   = {";
  bool first = true;
  for (const auto& e : adom) {
    os << (first ? "" : ", ") << e.symbol;
    first = false;
  }
  os << "}\n" << (reproduced() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

AdomFailureReport adom_failure_nonzsf() {
  const Schema schema = {{"R", 2}};
  KDatabase db(SemiringKind::Integer, schema);
  db.relation("R").set(tuple({"a", "b"}), Value::integer(1));
  db.relation("R").set(tuple({"b", "a"}), Value::integer(-1));
  AdomFailureReport rep;
  rep.e_adom = eval(*adom_expr(schema), db);
  rep.adom = active_domain(db);
  return rep;
}

}  // namespace krel
