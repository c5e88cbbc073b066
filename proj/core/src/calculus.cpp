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

#include "krel/calculus.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "krel/error.hpp"
#include "lexer.hpp"

namespace krel {

bool Formula::operator==(const Formula& other) const {
  return kind == other.kind && name == other.name && vars == other.vars &&
         same(left, other.left) && same(right, other.right);
}

bool same(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

namespace rc {

namespace {
FormulaPtr make(FormulaKind kind, FormulaPtr l, FormulaPtr r = nullptr) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}
}  // namespace

FormulaPtr eq(Variable x, Variable y) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Eq;
  f->vars = {std::move(x), std::move(y)};
  return f;
}

FormulaPtr neq(const Variable& x, const Variable& y) {
  return butnot(eq(x, x), eq(x, y));
}

FormulaPtr atom(std::string name, VarList vars) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Atom;
  f->name = std::move(name);
  f->vars = std::move(vars);
  return f;
}

FormulaPtr conj(FormulaPtr a, FormulaPtr b) { return make(FormulaKind::And, a, b); }
FormulaPtr disj(FormulaPtr a, FormulaPtr b) { return make(FormulaKind::Or, a, b); }
FormulaPtr butnot(FormulaPtr a, FormulaPtr b) { return make(FormulaKind::ButNot, a, b); }
FormulaPtr nabla(FormulaPtr a) { return make(FormulaKind::Nabla, a); }

FormulaPtr exists(Variable v, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Exists;
  f->vars = {std::move(v)};
  f->left = std::move(body);
  return f;
}

FormulaPtr forall(Variable v, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Forall;
  f->vars = {std::move(v)};
  f->left = std::move(body);
  return f;
}

}  // namespace rc

namespace {

void push_unique(VarList& out, const Variable& v) {
  if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

bool is_binary(FormulaKind k) {
  return k == FormulaKind::And || k == FormulaKind::Or || k == FormulaKind::ButNot;
}

bool is_quantifier(FormulaKind k) {
  return k == FormulaKind::Exists || k == FormulaKind::Forall;
}

}  // namespace

VarList free_vars(const Formula& f) {
  VarList out;
  switch (f.kind) {
    case FormulaKind::Eq:
    case FormulaKind::Atom:
      for (const auto& v : f.vars) push_unique(out, v);
      return out;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::ButNot: {
      out = free_vars(*f.left);
      for (const auto& v : free_vars(*f.right)) push_unique(out, v);
      return out;
    }
    case FormulaKind::Nabla:
      return free_vars(*f.left);
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      out = free_vars(*f.left);
      auto it = std::find(out.begin(), out.end(), f.vars[0]);
      if (it == out.end()) {
        throw Error(ErrorCode::NotFreeVariable,
                    "quantified variable " + f.vars[0] + " is not free in " +
                        to_string(*f.left));
      }
      out.erase(it);
      return out;
    }
  }
  return out;
}

void check_formula(const Formula& f, const Schema& schema) {
  if (f.kind == FormulaKind::Atom) {
    auto it = std::find_if(schema.begin(), schema.end(),
                           [&](const RelationSymbol& s) { return s.name == f.name; });
    if (it == schema.end()) {
      throw Error(ErrorCode::UnknownRelation, "unknown relation " + f.name);
    }
    if (it->arity != f.vars.size()) {
      throw Error(ErrorCode::ArityMismatch,
                  f.name + " has arity " + std::to_string(it->arity) + ", used with " +
                      std::to_string(f.vars.size()) + " arguments");
    }
  }
  if (f.left) check_formula(*f.left, schema);
  if (f.right) check_formula(*f.right, schema);
}

bool contains_kind(const Formula& f, FormulaKind kind) {
  if (f.kind == kind) return true;
  return (f.left && contains_kind(*f.left, kind)) ||
         (f.right && contains_kind(*f.right, kind));
}

std::size_t depth(const Formula& f) {
  std::size_t d = 0;
  if (f.left) d = std::max(d, depth(*f.left));
  if (f.right) d = std::max(d, depth(*f.right));
  return d + 1;
}

FormulaPtr rename_free(const FormulaPtr& f,
                       const std::map<Variable, Variable>& renaming) {
  if (renaming.empty()) return f;
  auto sub = [&](const Variable& v) {
    auto it = renaming.find(v);
    return it == renaming.end() ? v : it->second;
  };
  switch (f->kind) {
    case FormulaKind::Eq:
      return rc::eq(sub(f->vars[0]), sub(f->vars[1]));
    case FormulaKind::Atom: {
      VarList vs;
      for (const auto& v : f->vars) vs.push_back(sub(v));
      return rc::atom(f->name, vs);
    }
    case FormulaKind::And:
      return rc::conj(rename_free(f->left, renaming), rename_free(f->right, renaming));
    case FormulaKind::Or:
      return rc::disj(rename_free(f->left, renaming), rename_free(f->right, renaming));
    case FormulaKind::ButNot:
      return rc::butnot(rename_free(f->left, renaming),
                        rename_free(f->right, renaming));
    case FormulaKind::Nabla:
      return rc::nabla(rename_free(f->left, renaming));
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      const Variable& bound = f->vars[0];
      std::map<Variable, Variable> inner = renaming;
      inner.erase(bound);
      VarList body_free = free_vars(*f->left);
      for (const auto& [from, to] : inner) {
        if (to == bound &&
            std::find(body_free.begin(), body_free.end(), from) != body_free.end()) {
          throw Error(ErrorCode::InvalidArgument,
                      "renaming " + from + " to " + to + " would be captured");
        }
      }
      FormulaPtr body = rename_free(f->left, inner);
      return f->kind == FormulaKind::Exists ? rc::exists(bound, body)
                                            : rc::forall(bound, body);
    }
  }
  return f;
}

// --- evaluation --------------------------------------------------------------
//
// Each subformula's value depends only on its free variables, so results are
// cached per (node, values of its free variables).

namespace {

class Evaluator {
 public:
  Evaluator(const Formula& f, const KStructure& a) : a_(a), n_(a.universe().size()) {
    check_formula(f, a.database().schema());
    free_vars(f);  // validates quantifiers
    root_ = compile(f);
    asg_.assign(var_ids_.size(), -1);
  }

  int var_id(const Variable& v) const {
    auto it = var_ids_.find(v);
    return it == var_ids_.end() ? -1 : it->second;
  }

  void bind(int id, int elem) { asg_[static_cast<std::size_t>(id)] = elem; }

  Value eval() { return eval_node(root_); }

 private:
  struct Node {
    FormulaKind kind;
    const KRelation* rel = nullptr;
    std::vector<int> args;  // Eq/Atom variable ids; quantifier bound id
    int l = -1, r = -1;
    std::vector<int> fv;  // sorted variable ids
    bool memo_ok = false;
    std::unordered_map<std::uint64_t, Value> memo;
    bool indexed = false;
    std::unordered_map<std::uint64_t, Value> rows;  // Atom: keyed by universe positions
  };

  int intern(const Variable& v) {
    auto [it, fresh] = var_ids_.emplace(v, static_cast<int>(var_ids_.size()));
    return it->second;
  }

  static std::vector<int> merge(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  int compile(const Formula& f) {
    Node node;
    node.kind = f.kind;
    switch (f.kind) {
      case FormulaKind::Eq:
      case FormulaKind::Atom:
        for (const auto& v : f.vars) node.args.push_back(intern(v));
        node.fv = node.args;
        std::sort(node.fv.begin(), node.fv.end());
        node.fv.erase(std::unique(node.fv.begin(), node.fv.end()), node.fv.end());
        if (f.kind == FormulaKind::Atom) index_atom(node, a_.database().relation(f.name));
        break;
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::ButNot:
        node.l = compile(*f.left);
        node.r = compile(*f.right);
        node.fv = merge(nodes_[node.l].fv, nodes_[node.r].fv);
        break;
      case FormulaKind::Nabla:
        node.l = compile(*f.left);
        node.fv = nodes_[node.l].fv;
        break;
      case FormulaKind::Exists:
      case FormulaKind::Forall: {
        int b = intern(f.vars[0]);
        node.args = {b};
        node.l = compile(*f.left);
        node.fv = nodes_[node.l].fv;
        node.fv.erase(std::remove(node.fv.begin(), node.fv.end(), b), node.fv.end());
        break;
      }
    }
    // Mixed-radix key over the universe must fit in 64 bits.
    node.memo_ok = key_fits(n_, node.fv.size());
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size() - 1);
  }

  static bool key_fits(std::size_t n, std::size_t width) {
    long double space = 1;
    for (std::size_t i = 0; i < width; ++i) space *= static_cast<long double>(n);
    return space < static_cast<long double>(std::numeric_limits<std::uint64_t>::max() / 2);
  }

  void index_atom(Node& node, const KRelation& rel) {
    node.rel = &rel;
    node.indexed = key_fits(n_, rel.arity());
    if (!node.indexed) return;
    const auto& u = a_.universe();
    for (const auto& [t, v] : rel.rows()) {
      std::uint64_t key = 0;
      bool inside = true;
      for (const auto& e : t) {
        auto it = std::lower_bound(u.begin(), u.end(), e);
        if (it == u.end() || *it != e) {
          inside = false;
          break;
        }
        key = key * n_ + static_cast<std::uint64_t>(it - u.begin());
      }
      if (inside) node.rows.emplace(key, v);
    }
  }

  int value_of(int var) const {
    int e = asg_[static_cast<std::size_t>(var)];
    if (e < 0) {
      for (const auto& [name, id] : var_ids_) {
        if (id == var) throw Error(ErrorCode::UnboundVariable, "unbound variable " + name);
      }
    }
    return e;
  }

  Value eval_node(int idx) {
    Node& node = nodes_[static_cast<std::size_t>(idx)];
    std::uint64_t key = 0;
    if (node.memo_ok) {
      for (int v : node.fv) key = key * n_ + static_cast<std::uint64_t>(value_of(v));
      auto it = node.memo.find(key);
      if (it != node.memo.end()) return it->second;
    }
    Value result = compute(idx);
    Node& again = nodes_[static_cast<std::size_t>(idx)];
    if (again.memo_ok) again.memo.emplace(key, result);
    return result;
  }

  Value compute(int idx) {
    const Node& node = nodes_[static_cast<std::size_t>(idx)];
    const SemiringKind kind = a_.database().kind();
    switch (node.kind) {
      case FormulaKind::Eq:
        return value_of(node.args[0]) == value_of(node.args[1]) ? Value::one(kind)
                                                                : Value::zero(kind);
      case FormulaKind::Atom: {
        if (!node.indexed) {
          Tuple t;
          for (int v : node.args) {
            t.push_back(a_.universe()[static_cast<std::size_t>(value_of(v))]);
          }
          return node.rel->at(t);
        }
        std::uint64_t key = 0;
        for (int v : node.args) key = key * n_ + static_cast<std::uint64_t>(value_of(v));
        auto it = node.rows.find(key);
        return it == node.rows.end() ? Value::zero(kind) : it->second;
      }
      case FormulaKind::And: {
        int l = node.l, r = node.r;
        Value a = eval_node(l);
        if (a.is_zero()) return a;
        return mul(a, eval_node(r));
      }
      case FormulaKind::Or: {
        int l = node.l, r = node.r;
        Value a = eval_node(l);
        return add(a, eval_node(r));
      }
      case FormulaKind::ButNot: {
        int l = node.l, r = node.r;
        Value a = eval_node(l);
        return monus(a, eval_node(r));
      }
      case FormulaKind::Nabla:
        return support_val(eval_node(node.l));
      case FormulaKind::Exists:
      case FormulaKind::Forall: {
        const bool ex = node.kind == FormulaKind::Exists;
        const int b = node.args[0];
        const int child = node.l;
        const int saved = asg_[static_cast<std::size_t>(b)];
        Value acc = ex ? Value::zero(kind) : Value::one(kind);
        for (std::size_t e = 0; e < n_; ++e) {
          asg_[static_cast<std::size_t>(b)] = static_cast<int>(e);
          Value v = eval_node(child);
          acc = ex ? add(acc, v) : mul(acc, v);
          if (!ex && acc.is_zero()) break;
        }
        asg_[static_cast<std::size_t>(b)] = saved;
        return acc;
      }
    }
    throw Error(ErrorCode::InvalidArgument, "corrupt formula node");
  }

  const KStructure& a_;
  std::size_t n_;
  std::map<Variable, int> var_ids_;
  std::vector<Node> nodes_;
  std::vector<int> asg_;
  int root_ = -1;
};

int universe_index(const KStructure& a, const DomainElem& e) {
  const auto& u = a.universe();
  auto it = std::lower_bound(u.begin(), u.end(), e);
  if (it == u.end() || *it != e) {
    throw Error(ErrorCode::InvalidArgument,
                "assignment value " + e.symbol + " is outside the universe");
  }
  return static_cast<int>(it - u.begin());
}

}  // namespace

Value eval_at(const Formula& f, const KStructure& a, const Assignment& alpha) {
  Evaluator ev(f, a);
  for (const auto& v : free_vars(f)) {
    auto it = alpha.find(v);
    if (it == alpha.end()) throw Error(ErrorCode::UnboundVariable, "unbound variable " + v);
    ev.bind(ev.var_id(v), universe_index(a, it->second));
  }
  return ev.eval();
}

KRelation relation_of(const Formula& f, const KStructure& a) {
  Evaluator ev(f, a);
  const VarList fv = free_vars(f);
  const std::size_t n = a.universe().size();
  std::vector<int> ids;
  for (const auto& v : fv) ids.push_back(ev.var_id(v));

  KRelation out(a.database().kind(), fv.size());
  std::vector<std::size_t> idx(fv.size(), 0);
  while (true) {
    Tuple t;
    t.reserve(fv.size());
    for (std::size_t i = 0; i < fv.size(); ++i) {
      ev.bind(ids[i], static_cast<int>(idx[i]));
      t.push_back(a.universe()[idx[i]]);
    }
    out.set(t, ev.eval());
    // Odometer, last column fastest.
    std::size_t k = fv.size();
    while (k > 0 && ++idx[k - 1] == n) idx[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

// --- printing ----------------------------------------------------------------

namespace {

bool is_neq_sugar(const Formula& f) {
  return f.kind == FormulaKind::ButNot && f.left->kind == FormulaKind::Eq &&
         f.right->kind == FormulaKind::Eq && f.left->vars[0] == f.left->vars[1] &&
         f.right->vars[0] == f.left->vars[0];
}

bool needs_parens_as_operand(const Formula& f) {
  return is_binary(f.kind) && !is_neq_sugar(f);
}

void print(const Formula& f, std::string& out);

void print_operand(const Formula& f, std::string& out, bool left_of_binary) {
  bool p = needs_parens_as_operand(f) ||
           (left_of_binary && (is_quantifier(f.kind) || f.kind == FormulaKind::Nabla));
  if (p) out += '(';
  print(f, out);
  if (p) out += ')';
}

void print(const Formula& f, std::string& out) {
  switch (f.kind) {
    case FormulaKind::Eq:
      out += f.vars[0] + " = " + f.vars[1];
      return;
    case FormulaKind::Atom:
      out += f.name + '(';
      for (std::size_t i = 0; i < f.vars.size(); ++i) {
        if (i) out += ',';
        out += f.vars[i];
      }
      out += ')';
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::ButNot:
      if (is_neq_sugar(f)) {
        out += f.right->vars[0] + " != " + f.right->vars[1];
        return;
      }
      print_operand(*f.left, out, true);
      out += f.kind == FormulaKind::And ? " and "
             : f.kind == FormulaKind::Or ? " or "
                                         : " butnot ";
      print_operand(*f.right, out, false);
      return;
    case FormulaKind::Nabla:
      out += "nabla ";
      print_operand(*f.left, out, false);
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out += f.kind == FormulaKind::Exists ? "exists " : "forall ";
      out += f.vars[0] + ". ";
      print_operand(*f.left, out, false);
      return;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::string to_string(const VarList& vars) {
  std::string out = "(";
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out += ',';
    out += vars[i];
  }
  return out + ")";
}

nlohmann::json to_json(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Eq: return {{"node", "Eq"}, {"vars", f.vars}};
    case FormulaKind::Atom: return {{"node", "Atom"}, {"name", f.name}, {"vars", f.vars}};
    case FormulaKind::And: return {{"node", "And"}, {"left", to_json(*f.left)}, {"right", to_json(*f.right)}};
    case FormulaKind::Or: return {{"node", "Or"}, {"left", to_json(*f.left)}, {"right", to_json(*f.right)}};
    case FormulaKind::ButNot: return {{"node", "ButNot"}, {"left", to_json(*f.left)}, {"right", to_json(*f.right)}};
    case FormulaKind::Nabla: return {{"node", "Nabla"}, {"arg", to_json(*f.left)}};
    case FormulaKind::Exists: return {{"node", "Exists"}, {"var", f.vars[0]}, {"body", to_json(*f.left)}};
    case FormulaKind::Forall: return {{"node", "Forall"}, {"var", f.vars[0]}, {"body", to_json(*f.left)}};
  }
  return nullptr;
}

// --- parsing -----------------------------------------------------------------
//
//   formula := conj {(or | butnot) conj}
//   conj    := unary {and unary}
//   unary   := nabla unary | (exists | forall) VAR '.' unary | primary
//   primary := '(' formula ')' | NAME '(' VAR {',' VAR} ')' | VAR ('=' | '!=') VAR

namespace {

bool is_keyword(const std::string& w) {
  return w == "and" || w == "or" || w == "butnot" || w == "nabla" ||
         w == "exists" || w == "forall";
}

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : ts_(text) {}

  FormulaPtr parse() {
    FormulaPtr f = formula();
    ts_.expect_end();
    return f;
  }

 private:
  FormulaPtr formula() {
    FormulaPtr f = conj();
    while (true) {
      if (ts_.accept_word("or")) {
        f = rc::disj(f, conj());
      } else if (ts_.accept_word("butnot")) {
        f = rc::butnot(f, conj());
      } else {
        return f;
      }
    }
  }

  FormulaPtr conj() {
    FormulaPtr f = unary();
    while (ts_.accept_word("and")) f = rc::conj(f, unary());
    return f;
  }

  FormulaPtr unary() {
    if (ts_.accept_word("nabla")) return rc::nabla(unary());
    if (ts_.is_word("exists") || ts_.is_word("forall")) {
      bool ex = ts_.next().text == "exists";
      Variable v = variable();
      ts_.expect_punct(".");
      FormulaPtr body = unary();
      return ex ? rc::exists(v, body) : rc::forall(v, body);
    }
    return primary();
  }

  Variable variable() {
    if (ts_.peek().type != detail::Tok::Ident || is_keyword(ts_.peek().text)) {
      ts_.fail("expected a variable");
    }
    return ts_.next().text;
  }

  FormulaPtr primary() {
    if (ts_.accept_punct("(")) {
      FormulaPtr f = formula();
      ts_.expect_punct(")");
      return f;
    }
    if (ts_.peek().type == detail::Tok::Ident && !is_keyword(ts_.peek().text) &&
        ts_.is_punct("(", 1)) {
      std::string name = ts_.next().text;
      ts_.next();
      VarList vars{variable()};
      while (ts_.accept_punct(",")) vars.push_back(variable());
      ts_.expect_punct(")");
      return rc::atom(name, vars);
    }
    Variable x = variable();
    if (ts_.accept_punct("=")) return rc::eq(x, variable());
    if (ts_.accept_punct("!=")) return rc::neq(x, variable());
    ts_.fail("expected '=', '!=' or an atom");
  }

  detail::TokenStream ts_;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

}  // namespace krel
