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

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "krel/semiring.hpp"

namespace krel {

/// An element of the fixed, denumerable domain. Equality is symbol equality.
struct DomainElem {
  std::string symbol;

  DomainElem() = default;
  explicit DomainElem(std::string s) : symbol(std::move(s)) {}

  auto operator<=>(const DomainElem&) const = default;
};

std::ostream& operator<<(std::ostream& os, const DomainElem& e);

using Tuple = std::vector<DomainElem>;

/// Builds a tuple from symbols, e.g. tuple({"a", "b"}).
Tuple tuple(std::initializer_list<std::string_view> symbols);
std::string to_string(const Tuple& t);

/// A finite-support function from n-tuples to semiring values. Zero values
/// are never stored; rows iterate in lexicographic tuple order.
class KRelation {
 public:
  using Rows = std::map<Tuple, Value>;

  KRelation(SemiringKind kind, std::size_t arity) : kind_(kind), arity_(arity) {}

  SemiringKind kind() const { return kind_; }
  std::size_t arity() const { return arity_; }
  const Rows& rows() const { return rows_; }
  std::size_t support_size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  /// Value at t; zero when t is outside the support.
  Value at(const Tuple& t) const;

  /// Overwrites the value at t; storing zero erases the row.
  void set(const Tuple& t, const Value& v);
  /// Adds v to the value at t.
  void accumulate(const Tuple& t, const Value& v);

  bool operator==(const KRelation& other) const {
    return kind_ == other.kind_ && arity_ == other.arity_ && rows_ == other.rows_;
  }

 private:
  void check_tuple(const Tuple& t) const;
  void check_value(const Value& v) const;

  SemiringKind kind_;
  std::size_t arity_;
  Rows rows_;
};

std::ostream& operator<<(std::ostream& os, const KRelation& r);

/// Selection conditions over 1-based column indices.
class SelectionCondition {
 public:
  enum class Op { Eq, Neq, And, Or };

  static SelectionCondition eq(std::size_t i, std::size_t j);
  static SelectionCondition neq(std::size_t i, std::size_t j);
  static SelectionCondition conj(SelectionCondition a, SelectionCondition b);
  static SelectionCondition disj(SelectionCondition a, SelectionCondition b);

  Op op() const { return op_; }
  std::size_t left_index() const { return i_; }
  std::size_t right_index() const { return j_; }
  const SelectionCondition& lhs() const { return *lhs_; }
  const SelectionCondition& rhs() const { return *rhs_; }

  /// Largest column index mentioned.
  std::size_t max_index() const;
  /// P_theta(t): whether the assignment x_i -> t[i-1] satisfies the condition.
  bool holds(const Tuple& t) const;

  bool operator==(const SelectionCondition& other) const;

 private:
  SelectionCondition(Op op, std::size_t i, std::size_t j,
                     std::shared_ptr<const SelectionCondition> l,
                     std::shared_ptr<const SelectionCondition> r)
      : op_(op), i_(i), j_(j), lhs_(std::move(l)), rhs_(std::move(r)) {}

  Op op_;
  std::size_t i_ = 0;
  std::size_t j_ = 0;
  std::shared_ptr<const SelectionCondition> lhs_;
  std::shared_ptr<const SelectionCondition> rhs_;
};

// Relation-level operations. All are pure and return canonical relations.
KRelation union_of(const KRelation& r1, const KRelation& r2);
/// Pointwise monus; throws MonusUnsupported on instances without one.
KRelation difference(const KRelation& r1, const KRelation& r2);
KRelation product(const KRelation& r1, const KRelation& r2);
/// 1-based, distinct indices; an empty list yields the 0-ary total sum.
KRelation project(const KRelation& r, const std::vector<std::size_t>& v);
KRelation select(const KRelation& r, const SelectionCondition& theta);
KRelation support_rel(const KRelation& r);
/// (r1 / r2)(a) = s(sum_b r1(a,b)) * prod_{b in supp(r2)} r1(a,b).
KRelation divide(const KRelation& r1, const KRelation& r2);

struct RelationSymbol {
  std::string name;
  std::size_t arity;
  bool operator==(const RelationSymbol&) const = default;
};

using Schema = std::vector<RelationSymbol>;

/// Parses "R:2,S:1".
Schema parse_schema(std::string_view text);
std::string to_string(const Schema& schema);

/// Named K-relations over a schema.
class KDatabase {
 public:
  KDatabase(SemiringKind kind, Schema schema);

  SemiringKind kind() const { return kind_; }
  const Schema& schema() const { return schema_; }

  const KRelation& relation(const std::string& name) const;
  KRelation& relation(const std::string& name);
  bool has_relation(const std::string& name) const {
    return relations_.count(name) != 0;
  }
  std::size_t arity_of(const std::string& name) const;

  /// True when some relation has nonempty support.
  bool non_trivial() const;

  bool operator==(const KDatabase&) const = default;

 private:
  SemiringKind kind_;
  Schema schema_;
  std::map<std::string, KRelation> relations_;
};

std::set<DomainElem> active_domain(const KDatabase& db);

/// A database together with a finite nonempty universe containing the
/// support of every relation.
class KStructure {
 public:
  KStructure(const KDatabase& db, std::set<DomainElem> universe);

  /// A(I): the structure whose universe is the active domain.
  static KStructure active(const KDatabase& db);

  const KDatabase& database() const { return db_; }
  const std::vector<DomainElem>& universe() const { return universe_; }
  bool contains(const DomainElem& e) const;

 private:
  KDatabase db_;
  std::vector<DomainElem> universe_;  // sorted
};

}  // namespace krel
