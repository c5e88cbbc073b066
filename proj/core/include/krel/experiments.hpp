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

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "krel/algebra.hpp"

namespace krel {

/// I(n) over R:2, S:1: R(a, b_i) = 2 and S(b_i) = 1 for i = 1..n.
KDatabase division_witness_db(std::size_t n);

/// (R div S)(a) on I(n); equals 2^n.
Value bag_division_witness(std::size_t n);

/// l(E): 1 for a relation name, l1 + l2 + 1 for binary and l + 1 for unary
/// operators.
std::size_t expr_length(const AlgebraExpr& e);

/// p_E(n). Relation names give 1, product multiplies, projection of F gives
/// n^l(F) * p_F. The remaining cases:
///   union:  hm(E1 u E2) <= hm1 + hm2 <= (p1 + p2) 2^l, so p = p1 + p2
///   diff:   a - b <= a, so p = p1
///   select: keeps values, so p = p1
///   supp:   values are 0/1 <= 2^l, so p = 1
/// Throws InvalidArgument on division.
BigInt bound_poly(const AlgebraExpr& e, std::size_t n);

struct ExprMetrics {
  std::string expr;
  std::size_t length = 0;
  BigInt supp_size;
  BigInt highest_mult;
  BigInt supp_bound;  // n^l(E)
  BigInt mult_bound;  // p_E(n) * 2^l(E)

  bool ok() const { return supp_size <= supp_bound && highest_mult <= mult_bound; }
  nlohmann::json to_json() const;
};

ExprMetrics measure(const AlgebraExpr& e, std::size_t n);

struct BoundsReport {
  std::size_t n = 0;
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::vector<ExprMetrics> failing;  // first few
  ExprMetrics tightest_mult;         // largest hm / bound ratio seen

  bool pass() const { return violations == 0; }
  nlohmann::json to_json() const;
  std::string to_table() const;
};

/// Samples division-free expressions over R:2, S:1 and checks both bounds on
/// I(n). n >= 2.
BoundsReport expression_bounds(std::size_t n, std::size_t samples, std::uint64_t seed);

struct SecurityReport {
  std::size_t candidates = 0;  // |P| within the enumeration window
  std::vector<Value> minimal;  // minimal layer of P
  bool pairwise_incomparable = false;
  bool has_minimum = true;

  bool pass() const {
    return minimal.size() == 5 && pairwise_incomparable && !has_minimum;
  }
  nlohmann::json to_json() const;
  std::string to_table() const;
};

/// P = {(x,s) : (43,I) <= (1,I) + (x,s)} for x in 1..60 and every level,
/// reduced to its minimal elements.
SecurityReport security_no_monus();

struct SupportReport {
  std::string name;
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::vector<std::string> counterexamples;  // first few

  bool pass() const { return violations == 0; }
  nlohmann::json to_json() const;
  std::string to_table() const;
};

/// Fuzzy R(a) = 1/2; supp-free, division-free expressions. Every value must
/// lie in (0, 1/2] on constant tuples, and the result must differ from supp(R).
SupportReport fuzzy_support_witness(std::size_t samples, std::uint64_t seed);

/// Bag R(a) = 2; supp-free expressions with division allowed. Every nonzero
/// multiplicity must be even.
SupportReport bag_support_even(std::size_t samples, std::uint64_t seed);

struct AdomFailureReport {
  KRelation e_adom{SemiringKind::Integer, 1};
  std::set<DomainElem> adom;

  bool reproduced() const { return e_adom.empty() && adom.size() == 2; }
  nlohmann::json to_json() const;
  std::string to_table() const;
};

/// Integer R(a,b) = 1, R(b,a) = -1: E_adom evaluates to the empty relation.
AdomFailureReport adom_failure_nonzsf();

}  // namespace krel
