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

#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "krel/relation.hpp"

namespace krel {

enum class FormulaKind { Eq, Atom, And, Or, ButNot, Nabla, Exists, Forall };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;
using Variable = std::string;
using VarList = std::vector<Variable>;

/// Immutable formula node.
///   Eq:      vars = {x, y}
///   Atom:    name, vars = argument list (repeats allowed)
///   Exists / Forall: vars = {bound variable}, left = body
///   And / Or / ButNot: left, right;  Nabla: left
struct Formula {
  FormulaKind kind;
  std::string name;
  VarList vars;
  FormulaPtr left;
  FormulaPtr right;

  bool operator==(const Formula& other) const;
};

namespace rc {
FormulaPtr eq(Variable x, Variable y);
/// x != y, i.e. (x = x) butnot (x = y).
FormulaPtr neq(const Variable& x, const Variable& y);
FormulaPtr atom(std::string name, VarList vars);
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr butnot(FormulaPtr a, FormulaPtr b);
FormulaPtr nabla(FormulaPtr a);
FormulaPtr exists(Variable v, FormulaPtr body);
FormulaPtr forall(Variable v, FormulaPtr body);
}  // namespace rc

bool same(const FormulaPtr& a, const FormulaPtr& b);

/// Free variables in order of first occurrence. Throws NotFreeVariable when a
/// quantifier binds a variable that is not free in its body.
VarList free_vars(const Formula& f);

/// Checks relation names and atom arities against the schema.
void check_formula(const Formula& f, const Schema& schema);

bool contains_kind(const Formula& f, FormulaKind kind);
std::size_t depth(const Formula& f);

/// Renames free occurrences; throws InvalidArgument if a new name would be
/// captured by a quantifier.
FormulaPtr rename_free(const FormulaPtr& f,
                       const std::map<Variable, Variable>& renaming);

using Assignment = std::map<Variable, DomainElem>;

/// ||f||(A, alpha). alpha must be total on free_vars(f) with values in A.
Value eval_at(const Formula& f, const KStructure& a, const Assignment& alpha);

/// f^A: arity |free_vars(f)|, columns in free_vars order.
KRelation relation_of(const Formula& f, const KStructure& a);

FormulaPtr parse_formula(std::string_view text);
std::string to_string(const Formula& f);
nlohmann::json to_json(const Formula& f);
std::string to_string(const VarList& vars);

}  // namespace krel
