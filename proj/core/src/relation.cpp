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

#include "krel/relation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "krel/error.hpp"

namespace krel {

std::ostream& operator<<(std::ostream& os, const DomainElem& e) {
  return os << e.symbol;
}

Tuple tuple(std::initializer_list<std::string_view> symbols) {
  Tuple t;
  t.reserve(symbols.size());
  for (auto s : symbols) t.emplace_back(std::string(s));
  return t;
}

std::string to_string(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += t[i].symbol;
  }
  return out + ")";
}

// --- KRelation ---------------------------------------------------------------

void KRelation::check_tuple(const Tuple& t) const {
  if (t.size() != arity_) {
    throw Error(ErrorCode::ArityMismatch,
                "tuple " + krel::to_string(t) + " does not have arity " +
                    std::to_string(arity_));
  }
}

void KRelation::check_value(const Value& v) const {
  if (v.kind() != kind_) {
    throw Error(ErrorCode::InstanceMismatch,
                "value of " + std::string(name_of(v.kind())) +
                    " stored in a " + std::string(name_of(kind_)) + " relation");
  }
}

Value KRelation::at(const Tuple& t) const {
  auto it = rows_.find(t);
  return it == rows_.end() ? Value::zero(kind_) : it->second;
}

void KRelation::set(const Tuple& t, const Value& v) {
  check_tuple(t);
  check_value(v);
  if (v.is_zero()) {
    rows_.erase(t);
  } else {
    rows_.insert_or_assign(t, v);
  }
}

void KRelation::accumulate(const Tuple& t, const Value& v) {
  check_tuple(t);
  check_value(v);
  auto it = rows_.find(t);
  if (it == rows_.end()) {
    if (!v.is_zero()) rows_.emplace(t, v);
    return;
  }
  Value sum = add(it->second, v);
  if (sum.is_zero()) {
    rows_.erase(it);
  } else {
    it->second = std::move(sum);
  }
}

std::ostream& operator<<(std::ostream& os, const KRelation& r) {
  os << '{';
  bool first = true;
  for (const auto& [t, v] : r.rows()) {
    if (!first) os << ", ";
    first = false;
    os << (t.empty() ? std::string("<>") : to_string(t)) << " -> " << v;
  }
  return os << '}';
}

// --- SelectionCondition ------------------------------------------------------

SelectionCondition SelectionCondition::eq(std::size_t i, std::size_t j) {
  if (i == 0 || j == 0) throw Error(ErrorCode::IndexError, "indices are 1-based");
  return SelectionCondition(Op::Eq, i, j, nullptr, nullptr);
}

SelectionCondition SelectionCondition::neq(std::size_t i, std::size_t j) {
  if (i == 0 || j == 0) throw Error(ErrorCode::IndexError, "indices are 1-based");
  return SelectionCondition(Op::Neq, i, j, nullptr, nullptr);
}

SelectionCondition SelectionCondition::conj(SelectionCondition a,
                                            SelectionCondition b) {
  return SelectionCondition(Op::And, 0, 0,
                            std::make_shared<const SelectionCondition>(std::move(a)),
                            std::make_shared<const SelectionCondition>(std::move(b)));
}

SelectionCondition SelectionCondition::disj(SelectionCondition a,
                                            SelectionCondition b) {
  return SelectionCondition(Op::Or, 0, 0,
                            std::make_shared<const SelectionCondition>(std::move(a)),
                            std::make_shared<const SelectionCondition>(std::move(b)));
}

std::size_t SelectionCondition::max_index() const {
  switch (op_) {
    case Op::Eq:
    case Op::Neq: return std::max(i_, j_);
    case Op::And:
    case Op::Or: return std::max(lhs_->max_index(), rhs_->max_index());
  }
  return 0;
}

bool SelectionCondition::holds(const Tuple& t) const {
  switch (op_) {
    case Op::Eq: return t.at(i_ - 1) == t.at(j_ - 1);
    case Op::Neq: return t.at(i_ - 1) != t.at(j_ - 1);
    case Op::And: return lhs_->holds(t) && rhs_->holds(t);
    case Op::Or: return lhs_->holds(t) || rhs_->holds(t);
  }
  return false;
}

bool SelectionCondition::operator==(const SelectionCondition& other) const {
  if (op_ != other.op_) return false;
  if (op_ == Op::Eq || op_ == Op::Neq) return i_ == other.i_ && j_ == other.j_;
  return *lhs_ == *other.lhs_ && *rhs_ == *other.rhs_;
}

// --- operations --------------------------------------------------------------

namespace {

void require_compatible(const KRelation& r1, const KRelation& r2, const char* op,
                        bool same_arity) {
  if (r1.kind() != r2.kind()) {
    throw Error(ErrorCode::InstanceMismatch,
                std::string(op) + ": relations over different semirings");
  }
  if (same_arity && r1.arity() != r2.arity()) {
    throw Error(ErrorCode::ArityMismatch,
                std::string(op) + ": arities " + std::to_string(r1.arity()) +
                    " and " + std::to_string(r2.arity()) + " differ");
  }
}

}  // namespace

KRelation union_of(const KRelation& r1, const KRelation& r2) {
  require_compatible(r1, r2, "union", true);
  KRelation out = r1;
  for (const auto& [t, v] : r2.rows()) out.accumulate(t, v);
  return out;
}

KRelation difference(const KRelation& r1, const KRelation& r2) {
  require_compatible(r1, r2, "difference", true);
  if (!descriptor(r1.kind()).has_monus) {
    throw Error(ErrorCode::MonusUnsupported,
                "difference needs a monus; " + std::string(name_of(r1.kind())) +
                    " has none");
  }
  // 0 - b = 0, so only rows of r1 can survive.
  KRelation out(r1.kind(), r1.arity());
  for (const auto& [t, v] : r1.rows()) out.set(t, monus(v, r2.at(t)));
  return out;
}

KRelation product(const KRelation& r1, const KRelation& r2) {
  require_compatible(r1, r2, "product", false);
  KRelation out(r1.kind(), r1.arity() + r2.arity());
  for (const auto& [t1, v1] : r1.rows()) {
    for (const auto& [t2, v2] : r2.rows()) {
      Tuple t = t1;
      t.insert(t.end(), t2.begin(), t2.end());
      out.set(t, mul(v1, v2));
    }
  }
  return out;
}

KRelation project(const KRelation& r, const std::vector<std::size_t>& v) {
  std::vector<bool> seen(r.arity() + 1, false);
  for (std::size_t i : v) {
    if (i == 0 || i > r.arity()) {
      throw Error(ErrorCode::IndexError,
                  "projection index " + std::to_string(i) +
                      " out of range for arity " + std::to_string(r.arity()));
    }
    if (seen[i]) {
      throw Error(ErrorCode::IndexError,
                  "duplicate projection index " + std::to_string(i));
    }
    seen[i] = true;
  }
  KRelation out(r.kind(), v.size());
  for (const auto& [t, val] : r.rows()) {
    Tuple key;
    key.reserve(v.size());
    for (std::size_t i : v) key.push_back(t[i - 1]);
    out.accumulate(key, val);
  }
  return out;
}

KRelation select(const KRelation& r, const SelectionCondition& theta) {
  if (theta.max_index() > r.arity()) {
    throw Error(ErrorCode::IndexError,
                "selection index " + std::to_string(theta.max_index()) +
                    " out of range for arity " + std::to_string(r.arity()));
  }
  KRelation out(r.kind(), r.arity());
  for (const auto& [t, v] : r.rows()) {
    if (theta.holds(t)) out.set(t, v);
  }
  return out;
}

KRelation support_rel(const KRelation& r) {
  KRelation out(r.kind(), r.arity());
  Value one = Value::one(r.kind());
  for (const auto& [t, v] : r.rows()) out.set(t, one);
  return out;
}

KRelation divide(const KRelation& r1, const KRelation& r2) {
  require_compatible(r1, r2, "division", false);
  if (r1.arity() <= r2.arity()) {
    throw Error(ErrorCode::DivArity,
                "division needs arity(left) > arity(right), got " +
                    std::to_string(r1.arity()) + " and " +
                    std::to_string(r2.arity()));
  }
  const std::size_t keep = r1.arity() - r2.arity();
  const SemiringKind kind = r1.kind();

  // The leading support factor is the literal sum over stored rows, so
  // cancellation in non-zero-sum-free instances is honored.
  std::map<Tuple, Value> sums;
  for (const auto& [t, v] : r1.rows()) {
    Tuple a(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(keep));
    auto it = sums.find(a);
    if (it == sums.end()) {
      sums.emplace(std::move(a), v);
    } else {
      it->second = add(it->second, v);
    }
  }

  KRelation out(kind, keep);
  for (const auto& [a, sum] : sums) {
    Value value = support_val(sum);
    for (const auto& [b, unused] : r2.rows()) {
      if (value.is_zero()) break;
      Tuple ab = a;
      ab.insert(ab.end(), b.begin(), b.end());
      value = mul(value, r1.at(ab));
    }
    out.set(a, value);
  }
  return out;
}

// --- schema, databases, structures -------------------------------------------

Schema parse_schema(std::string_view text) {
  Schema schema;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               item.end());
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == item.size()) {
      throw Error(ErrorCode::InvalidArgument,
                  "schema entries look like NAME:ARITY, got '" + item + "'");
    }
    std::string arity = item.substr(colon + 1);
    if (!std::all_of(arity.begin(), arity.end(),
                     [](unsigned char c) { return std::isdigit(c); })) {
      throw Error(ErrorCode::InvalidArgument, "bad arity in '" + item + "'");
    }
    schema.push_back({item.substr(0, colon), std::stoul(arity)});
  }
  return schema;
}

std::string to_string(const Schema& schema) {
  std::string out;
  for (const auto& sym : schema) {
    if (!out.empty()) out += ',';
    out += sym.name + ":" + std::to_string(sym.arity);
  }
  return out;
}

KDatabase::KDatabase(SemiringKind kind, Schema schema)
    : kind_(kind), schema_(std::move(schema)) {
  for (const auto& sym : schema_) {
    if (sym.arity == 0) {
      throw Error(ErrorCode::InvalidArgument,
                  "relation symbols have arity >= 1: " + sym.name);
    }
    if (!relations_.emplace(sym.name, KRelation(kind_, sym.arity)).second) {
      throw Error(ErrorCode::InvalidArgument,
                  "duplicate relation symbol " + sym.name);
    }
  }
}

const KRelation& KDatabase::relation(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) {
    throw Error(ErrorCode::UnknownRelation, "unknown relation " + name);
  }
  return it->second;
}

KRelation& KDatabase::relation(const std::string& name) {
  auto it = relations_.find(name);
  if (it == relations_.end()) {
    throw Error(ErrorCode::UnknownRelation, "unknown relation " + name);
  }
  return it->second;
}

std::size_t KDatabase::arity_of(const std::string& name) const {
  return relation(name).arity();
}

bool KDatabase::non_trivial() const {
  return std::any_of(relations_.begin(), relations_.end(),
                     [](const auto& kv) { return !kv.second.empty(); });
}

std::set<DomainElem> active_domain(const KDatabase& db) {
  std::set<DomainElem> adom;
  for (const auto& sym : db.schema()) {
    for (const auto& [t, v] : db.relation(sym.name).rows()) {
      adom.insert(t.begin(), t.end());
    }
  }
  return adom;
}

KStructure::KStructure(const KDatabase& db, std::set<DomainElem> universe)
    : db_(db), universe_(universe.begin(), universe.end()) {
  if (universe_.empty()) {
    throw Error(ErrorCode::EmptyUniverse, "a structure needs a nonempty universe");
  }
  for (const auto& e : active_domain(db)) {
    if (!contains(e)) {
      throw Error(ErrorCode::InvalidArgument,
                  "universe misses active-domain element " + e.symbol);
    }
  }
}

KStructure KStructure::active(const KDatabase& db) {
  return KStructure(db, active_domain(db));
}

bool KStructure::contains(const DomainElem& e) const {
  return std::binary_search(universe_.begin(), universe_.end(), e);
}

}  // namespace krel
