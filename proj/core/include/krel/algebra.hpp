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

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "krel/relation.hpp"

namespace krel {

enum class ExprKind { Rel, Union, Diff, Product, Project, Select, Supp, Div };

struct AlgebraExpr;
using ExprPtr = std::shared_ptr<const AlgebraExpr>;

/// Immutable expression node. Only the fields relevant to `kind` are set.
struct AlgebraExpr {
  ExprKind kind;
  std::string name;                         // Rel
  std::vector<std::size_t> indices;         // Project, 1-based
  std::optional<SelectionCondition> cond;   // Select
  ExprPtr left;                             // unary child, or left operand
  ExprPtr right;                            // right operand

  bool operator==(const AlgebraExpr& other) const;
};

/// Node constructors.
namespace ra {
ExprPtr rel(std::string name);
ExprPtr unite(ExprPtr a, ExprPtr b);
ExprPtr diff(ExprPtr a, ExprPtr b);
ExprPtr times(ExprPtr a, ExprPtr b);
ExprPtr proj(std::vector<std::size_t> indices, ExprPtr e);
ExprPtr select(SelectionCondition cond, ExprPtr e);
ExprPtr supp(ExprPtr e);
ExprPtr div(ExprPtr a, ExprPtr b);
}  // namespace ra

/// Structural equality through pointers.
bool same(const ExprPtr& a, const ExprPtr& b);

/// Arity under the syntax rules. Throws UnknownRelation, ArityMismatch,
/// IndexError or DivArity.
std::size_t arity_of(const AlgebraExpr& e, const Schema& schema);

/// E^I. Arity-checks first, then evaluates bottom-up.
KRelation eval(const AlgebraExpr& e, const KDatabase& db);

bool contains_kind(const AlgebraExpr& e, ExprKind kind);
std::size_t depth(const AlgebraExpr& e);
std::size_t node_count(const AlgebraExpr& e);

ExprPtr parse_algebra(std::string_view text);
std::string to_string(const AlgebraExpr& e);
std::string to_string(const SelectionCondition& c);
nlohmann::json to_json(const AlgebraExpr& e);

}  // namespace krel
