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

// krel: evaluate, translate and test relational queries over semirings.
//
// Exit status: 0 success, 1 property failure, 2 usage or input error.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "krel/algebra.hpp"
#include "krel/calculus.hpp"
#include "krel/error.hpp"
#include "krel/experiments.hpp"
#include "krel/harness.hpp"
#include "krel/io.hpp"
#include "krel/transpile.hpp"

namespace {

using namespace krel;

constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kUsage = 2;

struct Options {
  std::string db_path;
  std::string semiring;
  std::string schema = "R:2,S:1";
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  std::string out = "table";

  bool json() const { return out == "json"; }
};

std::optional<SemiringKind> semiring_flag(const Options& o) {
  if (o.semiring.empty()) return std::nullopt;
  return parse_semiring(o.semiring);
}

KDatabase load(const Options& o) {
  if (o.db_path.empty()) throw Error(ErrorCode::InvalidArgument, "--db is required");
  KDatabase db = load_database(o.db_path);
  if (auto k = semiring_flag(o); k && *k != db.kind()) {
    throw Error(ErrorCode::InstanceMismatch,
                "--semiring " + std::string(name_of(*k)) + " does not match the database (" +
                    std::string(name_of(db.kind())) + ")");
  }
  if (!db.non_trivial()) {
    std::cerr << "warning: every relation in " << o.db_path
              << " is empty; translations are only guaranteed on non-trivial databases\n";
  }
  return db;
}

Schema schema_for(const Options& o) {
  if (!o.db_path.empty()) return load_database(o.db_path).schema();
  return parse_schema(o.schema);
}

nlohmann::json relation_json(const KRelation& r) {
  nlohmann::json j = to_json(r);
  j["semiring"] = std::string(name_of(r.kind()));
  return j;
}

void print_relation(std::ostream& os, const KRelation& r) {
  if (r.empty()) {
    os << "(empty, arity " << r.arity() << ")\n";
    return;
  }
  std::size_t width = 0;
  for (const auto& [t, v] : r.rows()) {
    width = std::max(width, t.empty() ? 2 : to_string(t).size());
  }
  for (const auto& [t, v] : r.rows()) {
    std::string key = t.empty() ? "<>" : to_string(t);
    os << key << std::string(width - key.size() + 2, ' ') << v << '\n';
  }
}

void emit_relation(const Options& o, const KRelation& r) {
  if (o.json()) {
    std::cout << relation_json(r).dump() << '\n';
  } else {
    print_relation(std::cout, r);
  }
}

// --- commands ----------------------------------------------------------------

int cmd_eval_algebra(const Options& o, const std::string& text) {
  KDatabase db = load(o);
  ExprPtr e = parse_algebra(text);
  emit_relation(o, eval(*e, db));
  return kOk;
}

int cmd_eval_calculus(const Options& o, const std::string& text) {
  KDatabase db = load(o);
  FormulaPtr f = parse_formula(text);
  KRelation r = relation_of(*f, KStructure::active(db));
  if (o.json()) {
    nlohmann::json j = relation_json(r);
    j["columns"] = free_vars(*f);
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "columns " << to_string(free_vars(*f)) << '\n';
    print_relation(std::cout, r);
  }
  return kOk;
}

void print_translation(const Options& o, const std::string& direction, const std::string& out,
                       const VarList& witness, Capability cap) {
  if (o.json()) {
    std::cout << nlohmann::json{{"direction", direction},
                                {"output", out},
                                {"witness", witness},
                                {"requires", std::string(to_string(cap))}}
                     .dump()
              << '\n';
  } else {
    std::cout << out << '\n'
              << "witness: " << to_string(witness) << '\n'
              << "requires: " << to_string(cap) << '\n';
  }
}

int cmd_translate(const Options& o, const std::string& direction, const std::string& text) {
  Schema schema = schema_for(o);
  if (direction == "a2c") {
    ExprPtr e = parse_algebra(text);
    CalculusTranslation t = algebra_to_calculus(*e, schema);
    print_translation(o, direction, to_string(*t.formula), t.witness, t.capability);
  } else if (direction == "c2a") {
    FormulaPtr f = parse_formula(text);
    AlgebraTranslation t = calculus_to_algebra(*f, schema);
    print_translation(o, direction, to_string(*t.expr), t.witness, t.capability);
  } else {
    throw Error(ErrorCode::InvalidArgument, "direction must be a2c or c2a");
  }
  return kOk;
}

void print_verdict(const Options& o, const std::string& property, SemiringKind kind,
                   const Verdict& v) {
  if (o.json()) {
    std::cout << verdict_record(property, o.seed, kind, v).dump() << '\n';
    return;
  }
  std::cout << property << ": " << (v.pass ? "PASS" : "FAIL") << '\n';
  if (v.tuple) {
    std::cout << "  first difference at " << (v.tuple->empty() ? "<>" : to_string(*v.tuple))
              << ": " << v.left << " vs " << v.right << '\n';
  }
  if (!v.detail.empty()) std::cout << "  " << v.detail << '\n';
}

std::vector<std::string> split_vars(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_check_equiv_random(const Options& o) {
  auto kind = semiring_flag(o).value_or(SemiringKind::Bag);
  const Schema schema = parse_schema(o.schema);
  const bool positive = descriptor(kind).positive;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < o.samples; ++i) {
    const std::uint64_t seed = o.seed + i;
    GenConfig cfg;
    cfg.seed = seed;
    cfg.semiring = kind;
    cfg.allow_div = positive;
    cfg.allow_forall = positive;
    Rng rng(seed);
    KDatabase db = gen_database(rng, cfg, schema);
    ExprPtr e = gen_algebra_expr(rng, cfg, schema);
    FormulaPtr f = gen_formula(rng, cfg, schema);
    CalculusTranslation a2c = algebra_to_calculus(*e, schema);
    AlgebraTranslation c2a = calculus_to_algebra(*f, schema);
    Verdict v1 = check_equivalence(*e, *a2c.formula, a2c.witness, db, a2c.capability);
    std::cout << verdict_record("a2c", seed, kind, v1).dump() << '\n';
    failures += v1.pass ? 0 : 1;
    if (satisfies(kind, c2a.capability)) {
      Verdict v2 = check_equivalence(*c2a.expr, *f, c2a.witness, db, c2a.capability);
      std::cout << verdict_record("c2a", seed, kind, v2).dump() << '\n';
      failures += v2.pass ? 0 : 1;
    }
  }
  return failures ? kPropertyFailure : kOk;
}

int cmd_check_equiv(const Options& o, const std::string& expr_text,
                    const std::string& formula_text, const std::string& witness_text) {
  if (expr_text.empty() && formula_text.empty()) return cmd_check_equiv_random(o);
  KDatabase db = load(o);
  ExprPtr e;
  FormulaPtr f;
  VarList witness;
  Capability cap = Capability::ZeroSumFree;
  std::string property;
  if (!expr_text.empty() && !formula_text.empty()) {
    e = parse_algebra(expr_text);
    f = parse_formula(formula_text);
    witness = witness_text.empty() ? free_vars(*f) : split_vars(witness_text);
    property = "equivalence";
  } else if (!expr_text.empty()) {
    e = parse_algebra(expr_text);
    CalculusTranslation t = algebra_to_calculus(*e, db.schema());
    f = t.formula;
    witness = t.witness;
    cap = t.capability;
    property = "a2c";
  } else {
    f = parse_formula(formula_text);
    AlgebraTranslation t = calculus_to_algebra(*f, db.schema());
    e = t.expr;
    witness = t.witness;
    cap = t.capability;
    property = "c2a";
  }
  if (!o.json()) {
    std::cout << "algebra:  " << to_string(*e) << '\n'
              << "calculus: " << to_string(*f) << '\n'
              << "witness:  " << to_string(witness) << '\n';
  }
  Verdict v = check_equivalence(*e, *f, witness, db, cap);
  print_verdict(o, property, db.kind(), v);
  return v.pass ? kOk : kPropertyFailure;
}

int cmd_check_domind(const Options& o, const std::string& text, std::size_t extra) {
  KDatabase db = load(o);
  FormulaPtr f = parse_formula(text);
  Verdict v = check_domain_independence(*f, db, extra);
  if (!o.json()) {
    std::cout << "fresh elements:";
    for (const auto& e : fresh_elements(active_domain(db), extra)) std::cout << ' ' << e;
    std::cout << '\n';
  }
  print_verdict(o, "domain-independence", db.kind(), v);
  return v.pass ? kOk : kPropertyFailure;
}

int cmd_adom(const Options& o) {
  KDatabase db = load(o);
  ExprPtr e = adom_expr(db.schema());
  KRelation got = eval(*e, db);
  KRelation want(db.kind(), 1);
  for (const auto& d : active_domain(db)) want.set({d}, Value::one(db.kind()));
  const bool ok = got == want;
  if (o.json()) {
    std::cout << nlohmann::json{{"expr", to_string(*e)},
                                {"value", relation_json(got)},
                                {"adom", relation_json(want)},
                                {"pass", ok}}
                     .dump()
              << '\n';
  } else {
    std::cout << "E_adom = " << to_string(*e) << '\n';
    print_relation(std::cout, got);
    std::cout << (ok ? "matches adom(I): PASS" : "differs from adom(I): FAIL") << '\n';
    if (!ok) {
      std::cout << "adom(I):\n";
      print_relation(std::cout, want);
    }
  }
  return ok ? kOk : kPropertyFailure;
}

int cmd_axioms(const Options& o) {
  std::vector<SemiringKind> kinds;
  if (auto k = semiring_flag(o)) {
    kinds.push_back(*k);
  } else {
    for (auto k : kAllSemirings) {
      if (descriptor(k).has_monus) kinds.push_back(k);
    }
  }
  bool ok = true;
  for (auto k : kinds) {
    AxiomReport r = monus_axiom_suite(k, o.samples, o.seed);
    ok = ok && r.pass();
    if (o.json()) {
      std::cout << r.to_json().dump() << '\n';
    } else {
      std::cout << name_of(k) << ": " << r.checked << (r.exhaustive ? " (exhaustive)" : "")
                << " triples, " << r.failures << " failures  " << (r.pass() ? "PASS" : "FAIL")
                << '\n';
      for (const auto& c : r.counterexamples) std::cout << "  " << c << '\n';
    }
  }
  return ok ? kOk : kPropertyFailure;
}

template <typename Report>
int emit_report(const Options& o, const Report& r, bool pass) {
  if (o.json()) {
    std::cout << r.to_json().dump() << '\n';
  } else {
    std::cout << r.to_table();
  }
  return pass ? kOk : kPropertyFailure;
}

int cmd_experiment(const Options& o, const std::string& name, std::size_t n) {
  if (name == "bag-division") {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "--n must be at least 1");
    Value v = bag_division_witness(n);
    BigInt expected = BigInt(1) << n;
    const bool ok = v.as_int() == expected;
    if (o.json()) {
      std::cout << nlohmann::json{{"experiment", name},
                                  {"n", n},
                                  {"value", v.to_string()},
                                  {"expected", expected.str()},
                                  {"pass", ok}}
                       .dump()
                << '\n';
    } else {
      std::cout << "2^" << n << " = " << v << (ok ? " PASS" : " FAIL") << '\n';
    }
    return ok ? kOk : kPropertyFailure;
  }
  if (name == "expression-bounds") {
    BoundsReport r = expression_bounds(n == 0 ? 4 : n, o.samples, o.seed);
    return emit_report(o, r, r.pass());
  }
  if (name == "security-no-monus") {
    SecurityReport r = security_no_monus();
    return emit_report(o, r, r.pass());
  }
  if (name == "fuzzy-support") {
    SupportReport r = fuzzy_support_witness(o.samples, o.seed);
    return emit_report(o, r, r.pass());
  }
  if (name == "bag-support-even") {
    SupportReport r = bag_support_even(o.samples, o.seed);
    return emit_report(o, r, r.pass());
  }
  if (name == "adom-failure") {
    AdomFailureReport r = adom_failure_nonzsf();
    return emit_report(o, r, r.reproduced());
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown experiment '" + name +
                  "' (bag-division, expression-bounds, security-no-monus, fuzzy-support, "
                  "bag-support-even, adom-failure)");
}

// --- repl --------------------------------------------------------------------

void repl_line(const std::string& line, KDatabase& db, const Options& o) {
  std::string s = line;
  s.erase(0, s.find_first_not_of(" \t"));
  if (s.empty()) return;
  if (s.rfind(":translate", 0) == 0) {
    std::istringstream in(s.substr(10));
    std::string dir;
    in >> dir;
    std::string rest;
    std::getline(in, rest);
    cmd_translate(Options{o.db_path, "", to_string(db.schema()), o.seed, o.samples, o.out},
                  dir, rest);
    return;
  }
  if (s.rfind(":semiring", 0) == 0) {
    std::string name = s.substr(9);
    name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());
    if (name.empty()) {
      const auto& d = descriptor(db.kind());
      std::cout << d.name << ": zero_sum_free=" << d.zero_sum_free
                << " positive=" << d.positive << " monus=" << d.has_monus
                << " idempotent=" << d.additively_idempotent << '\n';
      return;
    }
    nlohmann::json j = to_json(db);
    j["semiring"] = name;
    for (auto& [rel, body] : j["relations"].items()) {
      for (auto& row : body["rows"]) {
        if (row["v"].is_boolean()) row["v"] = "1";
      }
    }
    db = database_from_json(j);
    std::cout << "semiring is now " << name_of(db.kind()) << '\n';
    return;
  }
  if (s == ":help") {
    std::cout << "algebra expression or formula: evaluate\n"
                 ":translate a2c|c2a TEXT\n:semiring [NAME]\n:quit\n";
    return;
  }
  ExprPtr e;
  try {
    e = parse_algebra(s);
  } catch (const SyntaxError&) {
    FormulaPtr f = parse_formula(s);
    std::cout << "columns " << to_string(free_vars(*f)) << '\n';
    print_relation(std::cout, relation_of(*f, KStructure::active(db)));
    return;
  }
  print_relation(std::cout, eval(*e, db));
}

int cmd_repl(const Options& o) {
  KDatabase db = o.db_path.empty()
                     ? KDatabase(semiring_flag(o).value_or(SemiringKind::Bag), parse_schema(o.schema))
                     : load(o);
  std::string line;
  std::cout << "krel> " << std::flush;
  while (std::getline(std::cin, line)) {
    if (line == ":quit" || line == ":q") break;
    try {
      repl_line(line, db, o);
    } catch (const Error& err) {
      std::cout << "error: " << err.what() << '\n';
    } catch (const nlohmann::json::exception& err) {
      std::cout << "error: " << err.what() << '\n';
    }
    std::cout << "krel> " << std::flush;
  }
  std::cout << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"krel: relational algebra and calculus over semirings"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--db", o.db_path, "database JSON file");
    sub->add_option("--semiring", o.semiring, "bool|bag|tropical|fuzzy|lukasiewicz|poly|security|int");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--samples", o.samples, "sample count");
    sub->add_option("--out", o.out, "json|table")->check(CLI::IsMember({"json", "table"}));
  };

  std::string text;
  std::string direction;
  std::string expr_text;
  std::string formula_text;
  std::string witness_text;
  std::string experiment;
  std::size_t extra = 1;
  std::size_t n = 0;

  auto* eval_a = app.add_subcommand("eval-algebra", "evaluate an algebra expression");
  common(eval_a);
  eval_a->add_option("expr", text, "expression")->required();

  auto* eval_c = app.add_subcommand("eval-calculus", "evaluate a formula over A(I)");
  common(eval_c);
  eval_c->add_option("formula", text, "formula")->required();

  auto* trans = app.add_subcommand("translate", "translate between algebra and calculus");
  common(trans);
  trans->add_option("--schema", o.schema, "schema when no --db is given");
  trans->add_option("direction", direction, "a2c or c2a")
      ->required()
      ->check(CLI::IsMember({"a2c", "c2a"}));
  trans->add_option("query", text, "expression or formula")->required();

  auto* equiv = app.add_subcommand(
      "check-equiv", "check a translation round trip; random samples when no query is given");
  common(equiv);
  equiv->add_option("--schema", o.schema, "schema for random samples");
  equiv->add_option("--expr", expr_text, "algebra expression");
  equiv->add_option("--formula", formula_text, "formula");
  equiv->add_option("--witness", witness_text, "comma-separated variables for the columns");

  auto* domind = app.add_subcommand("check-domind", "compare A(I) with adom(I) plus fresh elements");
  common(domind);
  domind->add_option("formula", text, "formula")->required();
  domind->add_option("--extra", extra, "number of fresh elements")->check(CLI::PositiveNumber);

  auto* adom = app.add_subcommand("adom", "evaluate the active-domain expression");
  common(adom);

  auto* axioms = app.add_subcommand("axioms", "check the monus identities");
  common(axioms);

  auto* exp = app.add_subcommand("experiment", "run a named experiment");
  common(exp);
  exp->add_option("name", experiment, "experiment name")->required();
  exp->add_option("--n", n, "size parameter");

  auto* repl = app.add_subcommand("repl", "interactive evaluation");
  common(repl);
  repl->add_option("--schema", o.schema, "schema when no --db is given");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*eval_a) return cmd_eval_algebra(o, text);
    if (*eval_c) return cmd_eval_calculus(o, text);
    if (*trans) return cmd_translate(o, direction, text);
    if (*equiv) return cmd_check_equiv(o, expr_text, formula_text, witness_text);
    if (*domind) return cmd_check_domind(o, text, extra);
    if (*adom) return cmd_adom(o);
    if (*axioms) return cmd_axioms(o);
    if (*exp) return cmd_experiment(o, experiment, n);
    if (*repl) return cmd_repl(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
