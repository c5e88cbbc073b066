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

#include "krel/algebra.hpp"

#include <algorithm>
#include <set>

#include "krel/error.hpp"
#include "lexer.hpp"

namespace krel {

bool AlgebraExpr::operator==(const AlgebraExpr& other) const {
  return kind == other.kind && name == other.name && indices == other.indices &&
         cond == other.cond && same(left, other.left) && same(right, other.right);
}

bool same(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

namespace ra {

namespace {
ExprPtr make(ExprKind kind, ExprPtr l = nullptr, ExprPtr r = nullptr) {
  auto e = std::make_shared<AlgebraExpr>();
  e->kind = kind;
  e->left = std::move(l);
  e->right = std::move(r);
  return e;
}
}  // namespace

ExprPtr rel(std::string name) {
  auto e = std::make_shared<AlgebraExpr>();
  e->kind = ExprKind::Rel;
  e->name = std::move(name);
  return e;
}
ExprPtr unite(ExprPtr a, ExprPtr b) { return make(ExprKind::Union, a, b); }
ExprPtr diff(ExprPtr a, ExprPtr b) { return make(ExprKind::Diff, a, b); }
ExprPtr times(ExprPtr a, ExprPtr b) { return make(ExprKind::Product, a, b); }
ExprPtr supp(ExprPtr e) { return make(ExprKind::Supp, e); }
ExprPtr div(ExprPtr a, ExprPtr b) { return make(ExprKind::Div, a, b); }

ExprPtr proj(std::vector<std::size_t> indices, ExprPtr e) {
  auto n = std::make_shared<AlgebraExpr>();
  n->kind = ExprKind::Project;
  n->indices = std::move(indices);
  n->left = std::move(e);
  return n;
}

ExprPtr select(SelectionCondition cond, ExprPtr e) {
  auto n = std::make_shared<AlgebraExpr>();
  n->kind = ExprKind::Select;
  n->cond = std::move(cond);
  n->left = std::move(e);
  return n;
}

}  // namespace ra

std::size_t arity_of(const AlgebraExpr& e, const Schema& schema) {
  switch (e.kind) {
    case ExprKind::Rel: {
      for (const auto& sym : schema) {
        if (sym.name == e.name) return sym.arity;
      }
      throw Error(ErrorCode::UnknownRelation, "unknown relation " + e.name);
    }
    case ExprKind::Union:
    case ExprKind::Diff: {
      std::size_t a = arity_of(*e.left, schema);
      std::size_t b = arity_of(*e.right, schema);
      if (a != b) {
        throw Error(ErrorCode::ArityMismatch,
                    std::string(e.kind == ExprKind::Union ? "union" : "diff") +
                        " of arities " + std::to_string(a) + " and " +
                        std::to_string(b));
      }
      return a;
    }
    case ExprKind::Product:
      return arity_of(*e.left, schema) + arity_of(*e.right, schema);
    case ExprKind::Project: {
      std::size_t a = arity_of(*e.left, schema);
      std::set<std::size_t> seen;
      for (std::size_t i : e.indices) {
        if (i == 0 || i > a) {
          throw Error(ErrorCode::IndexError,
                      "projection index " + std::to_string(i) +
                          " out of range for arity " + std::to_string(a));
        }
        if (!seen.insert(i).second) {
          throw Error(ErrorCode::IndexError,
                      "duplicate projection index " + std::to_string(i));
        }
      }
      return e.indices.size();
    }
    case ExprKind::Select: {
      std::size_t a = arity_of(*e.left, schema);
      if (e.cond->max_index() > a) {
        throw Error(ErrorCode::IndexError,
                    "selection index " + std::to_string(e.cond->max_index()) +
                        " out of range for arity " + std::to_string(a));
      }
      return a;
    }
    case ExprKind::Supp:
      return arity_of(*e.left, schema);
    case ExprKind::Div: {
      std::size_t a = arity_of(*e.left, schema);
      std::size_t b = arity_of(*e.right, schema);
      if (a <= b) {
        throw Error(ErrorCode::DivArity,
                    "div needs arity(left) > arity(right), got " +
                        std::to_string(a) + " and " + std::to_string(b));
      }
      return a - b;
    }
  }
  return 0;
}

namespace {

KRelation eval_rec(const AlgebraExpr& e, const KDatabase& db) {
  switch (e.kind) {
    case ExprKind::Rel: return db.relation(e.name);
    case ExprKind::Union: return union_of(eval_rec(*e.left, db), eval_rec(*e.right, db));
    case ExprKind::Diff: return difference(eval_rec(*e.left, db), eval_rec(*e.right, db));
    case ExprKind::Product: return product(eval_rec(*e.left, db), eval_rec(*e.right, db));
    case ExprKind::Project: return project(eval_rec(*e.left, db), e.indices);
    case ExprKind::Select: return select(eval_rec(*e.left, db), *e.cond);
    case ExprKind::Supp: return support_rel(eval_rec(*e.left, db));
    case ExprKind::Div: return divide(eval_rec(*e.left, db), eval_rec(*e.right, db));
  }
  throw Error(ErrorCode::InvalidArgument, "corrupt expression node");
}

}  // namespace

KRelation eval(const AlgebraExpr& e, const KDatabase& db) {
  arity_of(e, db.schema());
  return eval_rec(e, db);
}

bool contains_kind(const AlgebraExpr& e, ExprKind kind) {
  if (e.kind == kind) return true;
  return (e.left && contains_kind(*e.left, kind)) ||
         (e.right && contains_kind(*e.right, kind));
}

std::size_t depth(const AlgebraExpr& e) {
  std::size_t d = 0;
  if (e.left) d = std::max(d, depth(*e.left));
  if (e.right) d = std::max(d, depth(*e.right));
  return d + 1;
}

std::size_t node_count(const AlgebraExpr& e) {
  return 1 + (e.left ? node_count(*e.left) : 0) +
         (e.right ? node_count(*e.right) : 0);
}

// --- printing ----------------------------------------------------------------

namespace {

int precedence(SelectionCondition::Op op) {
  switch (op) {
    case SelectionCondition::Op::Or: return 1;
    case SelectionCondition::Op::And: return 2;
    default: return 3;
  }
}

void print_cond(const SelectionCondition& c, std::string& out) {
  using Op = SelectionCondition::Op;
  switch (c.op()) {
    case Op::Eq:
    case Op::Neq:
      out += '#' + std::to_string(c.left_index()) + (c.op() == Op::Eq ? "=" : "!=") +
             '#' + std::to_string(c.right_index());
      return;
    case Op::And:
    case Op::Or: {
      int p = precedence(c.op());
      bool lp = precedence(c.lhs().op()) < p;
      bool rp = precedence(c.rhs().op()) <= p;
      if (lp) out += '(';
      print_cond(c.lhs(), out);
      if (lp) out += ')';
      out += c.op() == Op::And ? " and " : " or ";
      if (rp) out += '(';
      print_cond(c.rhs(), out);
      if (rp) out += ')';
      return;
    }
  }
}

void print_expr(const AlgebraExpr& e, std::string& out) {
  auto binary = [&](const char* kw) {
    out += kw;
    out += '(';
    print_expr(*e.left, out);
    out += ',';
    print_expr(*e.right, out);
    out += ')';
  };
  switch (e.kind) {
    case ExprKind::Rel: out += e.name; return;
    case ExprKind::Union: binary("union"); return;
    case ExprKind::Diff: binary("diff"); return;
    case ExprKind::Product: binary("times"); return;
    case ExprKind::Div: binary("div"); return;
    case ExprKind::Project:
      out += "proj[";
      for (std::size_t i = 0; i < e.indices.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(e.indices[i]);
      }
      out += "](";
      print_expr(*e.left, out);
      out += ')';
      return;
    case ExprKind::Select:
      out += "select[";
      print_cond(*e.cond, out);
      out += "](";
      print_expr(*e.left, out);
      out += ')';
      return;
    case ExprKind::Supp:
      out += "supp(";
      print_expr(*e.left, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string to_string(const SelectionCondition& c) {
  std::string out;
  print_cond(c, out);
  return out;
}

std::string to_string(const AlgebraExpr& e) {
  std::string out;
  print_expr(e, out);
  return out;
}

namespace {

nlohmann::json cond_json(const SelectionCondition& c) {
  using Op = SelectionCondition::Op;
  switch (c.op()) {
    case Op::Eq: return {{"op", "Eq"}, {"i", c.left_index()}, {"j", c.right_index()}};
    case Op::Neq: return {{"op", "Neq"}, {"i", c.left_index()}, {"j", c.right_index()}};
    case Op::And: return {{"op", "And"}, {"lhs", cond_json(c.lhs())}, {"rhs", cond_json(c.rhs())}};
    case Op::Or: return {{"op", "Or"}, {"lhs", cond_json(c.lhs())}, {"rhs", cond_json(c.rhs())}};
  }
  return nullptr;
}

}  // namespace

nlohmann::json to_json(const AlgebraExpr& e) {
  switch (e.kind) {
    case ExprKind::Rel: return {{"node", "Rel"}, {"name", e.name}};
    case ExprKind::Union: return {{"node", "Union"}, {"left", to_json(*e.left)}, {"right", to_json(*e.right)}};
    case ExprKind::Diff: return {{"node", "Diff"}, {"left", to_json(*e.left)}, {"right", to_json(*e.right)}};
    case ExprKind::Product: return {{"node", "Product"}, {"left", to_json(*e.left)}, {"right", to_json(*e.right)}};
    case ExprKind::Div: return {{"node", "Div"}, {"left", to_json(*e.left)}, {"right", to_json(*e.right)}};
    case ExprKind::Project: return {{"node", "Project"}, {"indices", e.indices}, {"arg", to_json(*e.left)}};
    case ExprKind::Select: return {{"node", "Select"}, {"cond", cond_json(*e.cond)}, {"arg", to_json(*e.left)}};
    case ExprKind::Supp: return {{"node", "Supp"}, {"arg", to_json(*e.left)}};
  }
  return nullptr;
}

// --- parsing -----------------------------------------------------------------
//
//   expr  := IDENT
//          | (union|diff|times|div) '(' expr ',' expr ')'
//          | supp '(' expr ')'
//          | proj '[' [NUM {',' NUM}] ']' '(' expr ')'
//          | select '[' cond ']' '(' expr ')'
//   cond  := conj {or conj}
//   conj  := atom {and atom}
//   atom  := '#' NUM ('=' | '!=') '#' NUM | '(' cond ')'
//
// A keyword followed by something other than '(' or '[' is a relation name.

namespace {

class AlgebraParser {
 public:
  explicit AlgebraParser(std::string_view text) : ts_(text) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    ts_.expect_end();
    return e;
  }

 private:
  ExprPtr expr() {
    const auto& t = ts_.peek();
    if (t.type != detail::Tok::Ident) ts_.fail("expected an expression");
    const std::string word = t.text;
    const bool call = ts_.is_punct("(", 1);
    const bool bracket = ts_.is_punct("[", 1);

    if (call && (word == "union" || word == "diff" || word == "times" ||
                 word == "div")) {
      ts_.next();
      ts_.expect_punct("(");
      ExprPtr a = expr();
      ts_.expect_punct(",");
      ExprPtr b = expr();
      ts_.expect_punct(")");
      if (word == "union") return ra::unite(a, b);
      if (word == "diff") return ra::diff(a, b);
      if (word == "times") return ra::times(a, b);
      return ra::div(a, b);
    }
    if (call && word == "supp") {
      ts_.next();
      return ra::supp(paren_expr());
    }
    if (bracket && word == "proj") {
      ts_.next();
      ts_.expect_punct("[");
      std::vector<std::size_t> idx;
      if (!ts_.is_punct("]")) {
        idx.push_back(index());
        while (ts_.accept_punct(",")) idx.push_back(index());
      }
      ts_.expect_punct("]");
      return ra::proj(std::move(idx), paren_expr());
    }
    if (bracket && word == "select") {
      ts_.next();
      ts_.expect_punct("[");
      SelectionCondition c = cond();
      ts_.expect_punct("]");
      return ra::select(std::move(c), paren_expr());
    }
    if (call || bracket) ts_.fail("unknown operator '" + word + "'");
    ts_.next();
    return ra::rel(word);
  }

  ExprPtr paren_expr() {
    ts_.expect_punct("(");
    ExprPtr e = expr();
    ts_.expect_punct(")");
    return e;
  }

  std::size_t index() {
    std::size_t pos = ts_.peek().pos;
    std::size_t i = ts_.expect_number();
    if (i == 0) throw SyntaxError(pos, "indices are 1-based");
    return i;
  }

  SelectionCondition cond() {
    SelectionCondition c = conj();
    while (ts_.accept_word("or")) c = SelectionCondition::disj(c, conj());
    return c;
  }

  SelectionCondition conj() {
    SelectionCondition c = atom();
    while (ts_.accept_word("and")) c = SelectionCondition::conj(c, atom());
    return c;
  }

  SelectionCondition atom() {
    if (ts_.accept_punct("(")) {
      SelectionCondition c = cond();
      ts_.expect_punct(")");
      return c;
    }
    ts_.expect_punct("#");
    std::size_t i = index();
    bool eq;
    if (ts_.accept_punct("=")) {
      eq = true;
    } else if (ts_.accept_punct("!=")) {
      eq = false;
    } else {
      ts_.fail("expected '=' or '!='");
    }
    ts_.expect_punct("#");
    std::size_t j = index();
    return eq ? SelectionCondition::eq(i, j) : SelectionCondition::neq(i, j);
  }

  detail::TokenStream ts_;
};

}  // namespace

ExprPtr parse_algebra(std::string_view text) { return AlgebraParser(text).parse(); }

}  // namespace krel
