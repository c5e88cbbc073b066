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

#include "krel/harness.hpp"

#include <algorithm>

#include "krel/error.hpp"

namespace krel {

Schema default_schema() { return {{"R", 2}, {"S", 1}}; }

Value gen_value(Rng& rng, SemiringKind kind, bool allow_zero) {
  if (allow_zero && rng.chance(1, 8)) return Value::zero(kind);
  switch (kind) {
    case SemiringKind::Boolean:
      return Value::boolean(true);
    case SemiringKind::Bag:
      return Value::bag(rng.between(1, 9));
    case SemiringKind::Tropical:
      return Value::tropical(rng.between(0, 9));
    case SemiringKind::Fuzzy:
    case SemiringKind::Lukasiewicz: {
      std::int64_t q = rng.between(1, 8);
      Rational r(rng.between(1, q), q);
      return kind == SemiringKind::Fuzzy ? Value::fuzzy(r) : Value::lukasiewicz(r);
    }
    case SemiringKind::Provenance: {
      static const std::vector<Monomial> monos = {
          {}, {{"x", 1}}, {{"y", 1}}, {{"x", 2}}, {{"x", 1}, {"y", 1}}, {{"y", 2}}};
      Polynomial p;
      std::uint64_t terms = 1 + rng.below(2);
      for (std::uint64_t i = 0; i < terms; ++i) {
        p[rng.pick(monos)] += rng.between(1, 3);
      }
      return Value::polynomial(p);
    }
    case SemiringKind::Security:
      return Value::security(rng.between(1, 9),
                             static_cast<SecurityLevel>(rng.below(5)));
    case SemiringKind::Integer: {
      std::int64_t n = rng.between(1, 9);
      return Value::integer(rng.chance(1, 2) ? n : -n);
    }
  }
  return Value::zero(kind);
}

// --- databases ---------------------------------------------------------------

namespace {

std::vector<DomainElem> element_pool(std::size_t n) {
  std::vector<DomainElem> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < 26) {
      out.emplace_back(std::string(1, static_cast<char>('a' + i)));
    } else {
      out.emplace_back("d" + std::to_string(i));
    }
  }
  return out;
}

Tuple random_tuple(Rng& rng, const std::vector<DomainElem>& pool, std::size_t arity) {
  Tuple t;
  for (std::size_t i = 0; i < arity; ++i) t.push_back(rng.pick(pool));
  return t;
}

}  // namespace

KDatabase gen_database(Rng& rng, const GenConfig& cfg, const Schema& schema) {
  if (cfg.adom_size == 0) {
    throw Error(ErrorCode::InvalidArgument, "adom_size must be at least 1");
  }
  if (schema.empty()) throw Error(ErrorCode::InvalidArgument, "empty schema");
  KDatabase db(cfg.semiring, schema);
  const auto pool = element_pool(cfg.adom_size);
  for (const auto& sym : schema) {
    auto rows = static_cast<std::size_t>(rng.below(cfg.max_supp_rows + 1));
    for (std::size_t i = 0; i < rows; ++i) {
      db.relation(sym.name).set(random_tuple(rng, pool, sym.arity),
                                gen_value(rng, cfg.semiring));
    }
  }
  if (!db.non_trivial()) {
    const auto& sym = schema[rng.below(schema.size())];
    db.relation(sym.name).set(random_tuple(rng, pool, sym.arity),
                              gen_value(rng, cfg.semiring));
  }
  return db;
}

KDatabase gen_database(const GenConfig& cfg, const Schema& schema) {
  Rng rng(cfg.seed);
  return gen_database(rng, cfg, schema);
}

// --- algebra expressions -----------------------------------------------------

namespace {

class ExprGen {
 public:
  ExprGen(Rng& rng, const GenConfig& cfg, const Schema& schema)
      : rng_(rng), cfg_(cfg), schema_(schema),
        monus_(descriptor(cfg.semiring).has_monus) {
    if (cfg.max_depth == 0) throw Error(ErrorCode::InvalidArgument, "max_depth must be >= 1");
    const std::size_t m = cfg.max_arity;
    feas_.assign(cfg.max_depth + 1, std::vector<bool>(m + 1, false));
    for (const auto& sym : schema_) {
      if (sym.arity <= m) feas_[1][sym.arity] = true;
    }
    for (std::size_t d = 2; d <= cfg.max_depth; ++d) {
      for (std::size_t a = 0; a <= m; ++a) {
        feas_[d][a] = feas_[d - 1][a] || !splits(d, a).empty() ||
                      !proj_sources(d, a).empty() ||
                      (cfg.allow_div && !divisors(d, a).empty());
      }
    }
  }

  ExprPtr top() {
    std::vector<std::size_t> arities;
    for (std::size_t a = 0; a <= cfg_.max_arity; ++a) {
      if (feas_[cfg_.max_depth][a]) arities.push_back(a);
    }
    if (arities.empty()) throw Error(ErrorCode::InvalidArgument, "no relation fits max_arity");
    return gen(cfg_.max_depth, rng_.pick(arities));
  }

 private:
  std::vector<std::size_t> splits(std::size_t d, std::size_t a) const {
    std::vector<std::size_t> out;
    for (std::size_t a1 = 0; a1 <= a; ++a1) {
      if (feas_[d - 1][a1] && feas_[d - 1][a - a1]) out.push_back(a1);
    }
    return out;
  }

  std::vector<std::size_t> proj_sources(std::size_t d, std::size_t a) const {
    std::vector<std::size_t> out;
    for (std::size_t b = std::max<std::size_t>(a, 1); b <= cfg_.max_arity; ++b) {
      if (feas_[d - 1][b]) out.push_back(b);
    }
    return out;
  }

  std::vector<std::size_t> divisors(std::size_t d, std::size_t a) const {
    std::vector<std::size_t> out;
    if (a == 0) return out;
    for (std::size_t a2 = 0; a + a2 <= cfg_.max_arity; ++a2) {
      if (feas_[d - 1][a + a2] && feas_[d - 1][a2]) out.push_back(a2);
    }
    return out;
  }

  SelectionCondition atom_cond(std::size_t a) {
    auto i = 1 + static_cast<std::size_t>(rng_.below(a));
    auto j = 1 + static_cast<std::size_t>(rng_.below(a));
    if (monus_ && rng_.chance(1, 3)) return SelectionCondition::neq(i, j);
    return SelectionCondition::eq(i, j);
  }

  SelectionCondition condition(std::size_t a) {
    SelectionCondition c = atom_cond(a);
    if (rng_.chance(1, 3)) {
      SelectionCondition d = atom_cond(a);
      c = rng_.chance(1, 2) ? SelectionCondition::conj(c, d)
                            : SelectionCondition::disj(c, d);
    }
    return c;
  }

  ExprPtr leaf(std::size_t a) {
    std::vector<std::string> names;
    for (const auto& sym : schema_) {
      if (sym.arity == a) names.push_back(sym.name);
    }
    return ra::rel(rng_.pick(names));
  }

  ExprPtr gen(std::size_t d, std::size_t a) {
    const bool leaf_ok = feas_[1][a];
    if (d == 1 || (leaf_ok && rng_.chance(1, 4))) return leaf(a);

    enum Op { Union, Diff, Product, Project, Select, Supp, Div };
    std::vector<Op> ops;
    const bool same = feas_[d - 1][a];
    if (same) {
      ops.push_back(Union);
      if (cfg_.allow_supp) ops.push_back(Supp);
      if (monus_) ops.push_back(Diff);
      if (a >= 1) ops.push_back(Select);
    }
    if (!splits(d, a).empty()) ops.push_back(Product);
    if (!proj_sources(d, a).empty()) ops.push_back(Project);
    if (cfg_.allow_div && !divisors(d, a).empty()) {
      ops.push_back(Div);
      ops.push_back(Div);
    }
    if (ops.empty()) return leaf(a);

    switch (rng_.pick(ops)) {
      case Union: return ra::unite(gen(d - 1, a), gen(d - 1, a));
      case Diff: return ra::diff(gen(d - 1, a), gen(d - 1, a));
      case Supp: return ra::supp(gen(d - 1, a));
      case Select: return ra::select(condition(a), gen(d - 1, a));
      case Product: {
        std::size_t a1 = rng_.pick(splits(d, a));
        return ra::times(gen(d - 1, a1), gen(d - 1, a - a1));
      }
      case Project: {
        std::size_t b = rng_.pick(proj_sources(d, a));
        std::vector<std::size_t> cols;
        for (std::size_t i = 1; i <= b; ++i) cols.push_back(i);
        for (std::size_t i = b; i > 1; --i) {
          std::swap(cols[i - 1], cols[rng_.below(i)]);
        }
        cols.resize(a);
        return ra::proj(cols, gen(d - 1, b));
      }
      case Div: {
        std::size_t a2 = rng_.pick(divisors(d, a));
        return ra::div(gen(d - 1, a + a2), gen(d - 1, a2));
      }
    }
    return leaf(a);
  }

  Rng& rng_;
  const GenConfig& cfg_;
  const Schema& schema_;
  bool monus_;
  std::vector<std::vector<bool>> feas_;
};

}  // namespace

ExprPtr gen_algebra_expr(Rng& rng, const GenConfig& cfg, const Schema& schema) {
  return ExprGen(rng, cfg, schema).top();
}

ExprPtr gen_algebra_expr(const GenConfig& cfg, const Schema& schema) {
  Rng rng(cfg.seed);
  return gen_algebra_expr(rng, cfg, schema);
}

// --- formulas ----------------------------------------------------------------

namespace {

class FormulaGen {
 public:
  FormulaGen(Rng& rng, const GenConfig& cfg, const Schema& schema)
      : rng_(rng), cfg_(cfg), schema_(schema),
        monus_(descriptor(cfg.semiring).has_monus),
        idempotent_(descriptor(cfg.semiring).additively_idempotent) {
    if (cfg.max_depth == 0) throw Error(ErrorCode::InvalidArgument, "max_depth must be >= 1");
    std::size_t n = std::clamp<std::size_t>(cfg.max_arity, 1, 4);
    for (std::size_t i = 1; i <= n; ++i) pool_.push_back("y" + std::to_string(i));
  }

  FormulaPtr top() {
    FormulaPtr f = gen(cfg_.max_depth);
    if (rng_.chance(1, 6)) {
      // Close into a sentence.
      VarList fv = free_vars(*f);
      for (auto it = fv.rbegin(); it != fv.rend(); ++it) f = quantify(*it, f);
    }
    return f;
  }

 private:
  FormulaPtr quantify(const Variable& v, const FormulaPtr& body) {
    if (cfg_.allow_forall && rng_.chance(1, 2)) {
      const bool sentence = free_vars(*body).size() == 1;
      if (!sentence || idempotent_) return rc::forall(v, body);
    }
    return rc::exists(v, body);
  }

  FormulaPtr leaf() {
    if (rng_.chance(1, 5)) return rc::eq(rng_.pick(pool_), rng_.pick(pool_));
    const auto& sym = schema_[rng_.below(schema_.size())];
    VarList args;
    for (std::size_t i = 0; i < sym.arity; ++i) args.push_back(rng_.pick(pool_));
    return rc::atom(sym.name, args);
  }

  FormulaPtr gen(std::size_t d) {
    if (d == 1 || rng_.chance(1, 4)) return leaf();
    enum Op { And, Or, ButNot, Nabla, Quant };
    std::vector<Op> ops = {And, Or, Quant, Quant};
    if (cfg_.allow_supp) ops.push_back(Nabla);
    if (monus_) ops.push_back(ButNot);
    switch (rng_.pick(ops)) {
      case And: return rc::conj(gen(d - 1), gen(d - 1));
      case Or: return rc::disj(gen(d - 1), gen(d - 1));
      case ButNot: return rc::butnot(gen(d - 1), gen(d - 1));
      case Nabla: return rc::nabla(gen(d - 1));
      case Quant: {
        FormulaPtr body = gen(d - 1);
        VarList fv = free_vars(*body);
        if (fv.empty()) return body;
        return quantify(rng_.pick(fv), body);
      }
    }
    return leaf();
  }

  Rng& rng_;
  const GenConfig& cfg_;
  const Schema& schema_;
  bool monus_;
  bool idempotent_;
  VarList pool_;
};

}  // namespace

FormulaPtr gen_formula(Rng& rng, const GenConfig& cfg, const Schema& schema) {
  return FormulaGen(rng, cfg, schema).top();
}

FormulaPtr gen_formula(const GenConfig& cfg, const Schema& schema) {
  Rng rng(cfg.seed);
  return gen_formula(rng, cfg, schema);
}

// --- checkers ----------------------------------------------------------------

nlohmann::json Verdict::to_json() const {
  nlohmann::json j = {{"pass", pass}};
  if (tuple) {
    nlohmann::json t = nlohmann::json::array();
    for (const auto& e : *tuple) t.push_back(e.symbol);
    j["tuple"] = t;
    j["left"] = left;
    j["right"] = right;
  }
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

namespace {

Verdict compare(const KRelation& l, const KRelation& r) {
  Verdict v;
  if (l.arity() != r.arity()) {
    v.pass = false;
    v.detail = "arity " + std::to_string(l.arity()) + " vs " + std::to_string(r.arity());
    return v;
  }
  auto li = l.rows().begin();
  auto ri = r.rows().begin();
  while (li != l.rows().end() || ri != r.rows().end()) {
    const Tuple* t;
    if (ri == r.rows().end() || (li != l.rows().end() && li->first < ri->first)) {
      t = &li->first;
    } else {
      t = &ri->first;
    }
    Value a = l.at(*t);
    Value b = r.at(*t);
    if (!(a == b)) {
      v.pass = false;
      v.tuple = *t;
      v.left = a.to_string();
      v.right = b.to_string();
      return v;
    }
    if (li != l.rows().end() && li->first == *t) ++li;
    if (ri != r.rows().end() && ri->first == *t) ++ri;
  }
  return v;
}

}  // namespace

Verdict check_equivalence(const AlgebraExpr& e, const Formula& f,
                          const VarList& witness, const KDatabase& db,
                          Capability cap) {
  require_capability(db.kind(), cap);
  const VarList fv = free_vars(f);
  std::vector<std::size_t> pos;
  for (const auto& w : witness) {
    auto it = std::find(fv.begin(), fv.end(), w);
    if (it == fv.end()) {
      Verdict v;
      v.pass = false;
      v.detail = "witness variable " + w + " is not free in the formula";
      return v;
    }
    pos.push_back(static_cast<std::size_t>(it - fv.begin()));
  }
  if (witness.size() != fv.size()) {
    Verdict v;
    v.pass = false;
    v.detail = "witness " + to_string(witness) + " does not cover " + to_string(fv);
    return v;
  }
  KRelation lhs = eval(e, db);
  KRelation calc = relation_of(f, KStructure::active(db));
  KRelation rhs(db.kind(), witness.size());
  for (const auto& [t, val] : calc.rows()) {
    Tuple u;
    for (std::size_t p : pos) u.push_back(t[p]);
    rhs.set(u, val);
  }
  return compare(lhs, rhs);
}

std::vector<DomainElem> fresh_elements(const std::set<DomainElem>& adom,
                                       std::size_t count) {
  std::vector<DomainElem> out;
  for (char c = 'a'; c <= 'z' && out.size() < count; ++c) {
    DomainElem e(std::string(1, c));
    if (!adom.count(e)) out.push_back(e);
  }
  for (std::size_t i = 1; out.size() < count; ++i) {
    DomainElem e("e" + std::to_string(i));
    if (!adom.count(e)) out.push_back(e);
  }
  return out;
}

Verdict check_domain_independence(const Formula& f, const KDatabase& db,
                                  std::size_t extra) {
  if (extra == 0) throw Error(ErrorCode::InvalidArgument, "extra must be at least 1");
  std::set<DomainElem> adom = active_domain(db);
  std::set<DomainElem> bigger = adom;
  for (const auto& e : fresh_elements(adom, extra)) bigger.insert(e);
  KRelation small = relation_of(f, KStructure(db, adom));
  KRelation large = relation_of(f, KStructure(db, bigger));
  Verdict v = compare(small, large);
  if (!v.pass && v.detail.empty()) {
    v.detail = "active domain and enlarged universe disagree";
  }
  return v;
}

// --- monus axioms ------------------------------------------------------------

nlohmann::json AxiomReport::to_json() const {
  return {{"semiring", std::string(name_of(kind))},
          {"exhaustive", exhaustive},
          {"checked", checked},
          {"failures", failures},
          {"counterexamples", counterexamples},
          {"pass", pass()}};
}

namespace {

void check_triple(AxiomReport& rep, const Value& a, const Value& b, const Value& c) {
  const Value zero = Value::zero(a.kind());
  auto fail = [&](const char* law) {
    ++rep.failures;
    if (rep.counterexamples.size() < 5) {
      rep.counterexamples.push_back(std::string(law) + " at a=" + a.to_string() +
                                    " b=" + b.to_string() + " c=" + c.to_string());
    }
  };
  ++rep.checked;
  if (!(monus(a, a) == zero)) fail("a-a=0");
  if (!(monus(zero, a) == zero)) fail("0-a=0");
  if (!(add(a, monus(b, a)) == add(b, monus(a, b)))) fail("a+(b-a)=b+(a-b)");
  if (!(monus(a, add(b, c)) == monus(monus(a, b), c))) fail("a-(b+c)=(a-b)-c");
  if (nat_leq(monus(a, b), c) != nat_leq(a, add(b, c))) fail("a-b<=c iff a<=b+c");
}

}  // namespace

AxiomReport monus_axiom_suite(SemiringKind kind, std::size_t samples,
                              std::uint64_t seed) {
  if (!descriptor(kind).has_monus) {
    throw Error(ErrorCode::MonusUnsupported,
                std::string(name_of(kind)) + " has no monus");
  }
  AxiomReport rep;
  rep.kind = kind;
  if (kind == SemiringKind::Boolean) {
    rep.exhaustive = true;
    for (bool a : {false, true}) {
      for (bool b : {false, true}) {
        for (bool c : {false, true}) {
          check_triple(rep, Value::boolean(a), Value::boolean(b), Value::boolean(c));
        }
      }
    }
    return rep;
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    Value a = gen_value(rng, kind, true);
    Value b = rng.chance(1, 10) ? a : gen_value(rng, kind, true);
    Value c = gen_value(rng, kind, true);
    check_triple(rep, a, b, c);
  }
  return rep;
}

nlohmann::json verdict_record(const std::string& property, std::uint64_t seed,
                              SemiringKind kind, const Verdict& v) {
  nlohmann::json j = {{"property", property},
                      {"seed", seed},
                      {"semiring", std::string(name_of(kind))},
                      {"pass", v.pass}};
  if (!v.pass) j["counterexample"] = v.to_json();
  return j;
}

}  // namespace krel
