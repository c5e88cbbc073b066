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

#include "krel/transpile.hpp"

#include <algorithm>
#include <set>

#include "krel/error.hpp"

namespace krel {

std::string_view to_string(Capability c) {
  switch (c) {
    case Capability::ZeroSumFree: return "zero_sum_free";
    case Capability::Positive: return "positive";
    case Capability::PositiveIdempotent: return "positive_idempotent";
  }
  return "?";
}

bool satisfies(SemiringKind kind, Capability c) {
  const auto& d = descriptor(kind);
  switch (c) {
    case Capability::ZeroSumFree: return d.zero_sum_free;
    case Capability::Positive: return d.positive;
    case Capability::PositiveIdempotent: return d.positive && d.additively_idempotent;
  }
  return false;
}

void require_capability(SemiringKind kind, Capability c) {
  if (!satisfies(kind, c)) {
    throw Error(ErrorCode::CapabilityViolation,
                std::string(name_of(kind)) + " is not " + std::string(to_string(c)));
  }
}

Capability strongest(Capability a, Capability b) {
  return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

ExprPtr adom_expr(const Schema& schema) {
  ExprPtr acc;
  for (const auto& sym : schema) {
    for (std::size_t j = 1; j <= sym.arity; ++j) {
      ExprPtr col = ra::proj({j}, ra::rel(sym.name));
      acc = acc ? ra::unite(acc, col) : col;
    }
  }
  if (!acc) throw Error(ErrorCode::InvalidArgument, "adom_expr needs a nonempty schema");
  return ra::supp(acc);
}

// --- algebra to calculus -----------------------------------------------------

namespace {

class AlgebraToCalculus {
 public:
  explicit AlgebraToCalculus(const Schema& schema) : schema_(schema) {}

  CalculusTranslation run(const AlgebraExpr& e) {
    arity_of(e, schema_);
    CalculusTranslation out;
    auto [f, w] = go(e);
    out.formula = f;
    out.witness = w;
    out.capability = contains_kind(e, ExprKind::Div) ? Capability::Positive
                                                     : Capability::ZeroSumFree;
    return out;
  }

 private:
  using Result = std::pair<FormulaPtr, VarList>;

  Variable fresh() { return "x" + std::to_string(++counter_); }

  static std::map<Variable, Variable> zip(const VarList& from, const VarList& to) {
    std::map<Variable, Variable> m;
    for (std::size_t i = 0; i < from.size(); ++i) {
      if (from[i] != to[i]) m.emplace(from[i], to[i]);
    }
    return m;
  }

  static FormulaPtr condition(const SelectionCondition& c, const VarList& w) {
    using Op = SelectionCondition::Op;
    switch (c.op()) {
      case Op::Eq: return rc::eq(w[c.left_index() - 1], w[c.right_index() - 1]);
      case Op::Neq: return rc::neq(w[c.left_index() - 1], w[c.right_index() - 1]);
      case Op::And: return rc::conj(condition(c.lhs(), w), condition(c.rhs(), w));
      case Op::Or: return rc::disj(condition(c.lhs(), w), condition(c.rhs(), w));
    }
    return nullptr;
  }

  Result go(const AlgebraExpr& e) {
    switch (e.kind) {
      case ExprKind::Rel: {
        std::size_t n = arity_of(e, schema_);
        VarList vs;
        for (std::size_t i = 0; i < n; ++i) vs.push_back(fresh());
        return {rc::atom(e.name, vs), vs};
      }
      case ExprKind::Union:
      case ExprKind::Diff: {
        auto [f1, w1] = go(*e.left);
        auto [f2, w2] = go(*e.right);
        FormulaPtr g2 = rename_free(f2, zip(w2, w1));
        return {e.kind == ExprKind::Union ? rc::disj(f1, g2) : rc::butnot(f1, g2), w1};
      }
      case ExprKind::Product: {
        auto [f1, w1] = go(*e.left);
        auto [f2, w2] = go(*e.right);
        VarList w = w1;
        w.insert(w.end(), w2.begin(), w2.end());
        return {rc::conj(f1, f2), w};
      }
      case ExprKind::Project: {
        auto [f, w] = go(*e.left);
        VarList kept;
        for (std::size_t i : e.indices) kept.push_back(w[i - 1]);
        for (const auto& v : w) {
          if (std::find(kept.begin(), kept.end(), v) == kept.end()) f = rc::exists(v, f);
        }
        return {f, kept};
      }
      case ExprKind::Select: {
        auto [f, w] = go(*e.left);
        return {rc::conj(f, rc::nabla(condition(*e.cond, w))), w};
      }
      case ExprKind::Supp: {
        auto [f, w] = go(*e.left);
        return {rc::nabla(f), w};
      }
      case ExprKind::Div: {
        auto [f1, w1] = go(*e.left);
        auto [f2, w2] = go(*e.right);
        const std::size_t keep = w1.size() - w2.size();
        VarList head(w1.begin(), w1.begin() + static_cast<std::ptrdiff_t>(keep));
        VarList ys(w1.begin() + static_cast<std::ptrdiff_t>(keep), w1.end());
        FormulaPtr g2 = rename_free(f2, zip(w2, ys));

        Variable z = fresh();
        FormulaPtr eta = rc::nabla(rc::exists(z, rc::eq(z, z)));
        FormulaPtr body = rc::disj(rc::butnot(eta, rc::nabla(g2)),
                                   rc::conj(rc::nabla(g2), f1));
        FormulaPtr guard = f1;
        for (auto it = ys.rbegin(); it != ys.rend(); ++it) {
          guard = rc::exists(*it, guard);
          body = rc::forall(*it, body);
        }
        return {rc::conj(rc::nabla(guard), body), head};
      }
    }
    throw Error(ErrorCode::InvalidArgument, "corrupt expression node");
  }

  const Schema& schema_;
  std::size_t counter_ = 0;
};

}  // namespace

CalculusTranslation algebra_to_calculus(const AlgebraExpr& e, const Schema& schema) {
  return AlgebraToCalculus(schema).run(e);
}

// --- calculus to algebra -----------------------------------------------------

ExprPtr pad_align(const ExprPtr& e, const VarList& have, const VarList& want,
                  const ExprPtr& adom) {
  for (const auto& v : have) {
    if (std::find(want.begin(), want.end(), v) == want.end()) {
      throw Error(ErrorCode::InvalidArgument,
                  "pad_align: variable " + v + " missing from target list");
    }
  }
  if (have == want) return e;
  VarList cols = have;
  ExprPtr out = e;
  for (const auto& v : want) {
    if (std::find(have.begin(), have.end(), v) == have.end()) {
      out = ra::times(out, adom);
      cols.push_back(v);
    }
  }
  if (cols.size() != want.size()) {
    throw Error(ErrorCode::InvalidArgument, "pad_align: repeated variables");
  }
  std::vector<std::size_t> idx;
  for (const auto& v : want) {
    idx.push_back(static_cast<std::size_t>(
                      std::find(cols.begin(), cols.end(), v) - cols.begin()) + 1);
  }
  return ra::proj(idx, out);
}

namespace {

class CalculusToAlgebra {
 public:
  explicit CalculusToAlgebra(const Schema& schema)
      : schema_(schema), adom_(adom_expr(schema)) {}

  AlgebraTranslation run(const Formula& f) {
    check_formula(f, schema_);
    AlgebraTranslation out;
    out.witness = free_vars(f);
    out.expr = go(f);
    out.capability = capability_;
    return out;
  }

 private:
  static std::size_t position(const VarList& vs, const Variable& v) {
    return static_cast<std::size_t>(std::find(vs.begin(), vs.end(), v) - vs.begin()) + 1;
  }

  ExprPtr go(const Formula& f) {
    switch (f.kind) {
      case FormulaKind::Eq:
        if (f.vars[0] == f.vars[1]) return adom_;
        return ra::supp(ra::select(SelectionCondition::eq(1, 2), ra::times(adom_, adom_)));
      case FormulaKind::Atom: {
        VarList firsts;
        std::vector<std::size_t> keep;
        std::optional<SelectionCondition> cond;
        for (std::size_t i = 0; i < f.vars.size(); ++i) {
          auto it = std::find(firsts.begin(), firsts.end(), f.vars[i]);
          if (it == firsts.end()) {
            firsts.push_back(f.vars[i]);
            keep.push_back(i + 1);
          } else {
            auto eq = SelectionCondition::eq(keep[static_cast<std::size_t>(it - firsts.begin())], i + 1);
            cond = cond ? SelectionCondition::conj(*cond, eq) : eq;
          }
        }
        ExprPtr r = ra::rel(f.name);
        if (!cond) return r;
        return ra::proj(keep, ra::select(*cond, r));
      }
      case FormulaKind::Or:
      case FormulaKind::ButNot: {
        VarList want = free_vars(f);
        ExprPtr a = pad_align(go(*f.left), free_vars(*f.left), want, adom_);
        ExprPtr b = pad_align(go(*f.right), free_vars(*f.right), want, adom_);
        return f.kind == FormulaKind::Or ? ra::unite(a, b) : ra::diff(a, b);
      }
      case FormulaKind::And: {
        VarList v1 = free_vars(*f.left);
        VarList v2 = free_vars(*f.right);
        ExprPtr p = ra::times(go(*f.left), go(*f.right));
        std::optional<SelectionCondition> cond;
        std::vector<std::size_t> keep;
        for (std::size_t i = 1; i <= v1.size(); ++i) keep.push_back(i);
        for (std::size_t j = 0; j < v2.size(); ++j) {
          std::size_t col = v1.size() + j + 1;
          std::size_t k = position(v1, v2[j]);
          if (k <= v1.size()) {
            auto eq = SelectionCondition::eq(k, col);
            cond = cond ? SelectionCondition::conj(*cond, eq) : eq;
          } else {
            keep.push_back(col);
          }
        }
        if (!cond) return p;
        return ra::proj(keep, ra::select(*cond, p));
      }
      case FormulaKind::Nabla:
        return ra::supp(go(*f.left));
      case FormulaKind::Exists: {
        VarList vs = free_vars(*f.left);
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < vs.size(); ++i) {
          if (vs[i] != f.vars[0]) keep.push_back(i + 1);
        }
        return ra::proj(keep, go(*f.left));
      }
      case FormulaKind::Forall: {
        VarList vs = free_vars(*f.left);
        const std::size_t y = position(vs, f.vars[0]);
        ExprPtr body = go(*f.left);
        if (vs.size() == 1) {
          // A sentence: (adom x E) div adom is |adom| copies of the product,
          // summed by the empty projection.
          capability_ = strongest(capability_, Capability::PositiveIdempotent);
          return ra::proj({}, ra::div(ra::times(adom_, body), adom_));
        }
        capability_ = strongest(capability_, Capability::Positive);
        if (y != vs.size()) {
          std::vector<std::size_t> order;
          for (std::size_t i = 1; i <= vs.size(); ++i) {
            if (i != y) order.push_back(i);
          }
          order.push_back(y);
          body = ra::proj(order, body);
        }
        return ra::div(body, adom_);
      }
    }
    throw Error(ErrorCode::InvalidArgument, "corrupt formula node");
  }

  const Schema& schema_;
  ExprPtr adom_;
  Capability capability_ = Capability::ZeroSumFree;
};

}  // namespace

AlgebraTranslation calculus_to_algebra(const Formula& f, const Schema& schema) {
  return CalculusToAlgebra(schema).run(f);
}

}  // namespace krel
