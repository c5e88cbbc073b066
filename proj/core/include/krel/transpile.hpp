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

#include <string_view>

#include "krel/algebra.hpp"
#include "krel/calculus.hpp"

namespace krel {

/// What the target semiring must satisfy for a translation to be exact.
enum class Capability {
  ZeroSumFree,
  Positive,
  /// Positive and additively idempotent. Needed by forall-sentences, whose
  /// 0-ary product over the active domain has no division-based encoding
  /// that is exact under counting semantics.
  PositiveIdempotent,
};

std::string_view to_string(Capability c);
bool satisfies(SemiringKind kind, Capability c);
/// Throws CapabilityViolation.
void require_capability(SemiringKind kind, Capability c);
Capability strongest(Capability a, Capability b);

struct CalculusTranslation {
  FormulaPtr formula;
  /// witness[i] is the variable holding output column i+1 of the input.
  VarList witness;
  Capability capability = Capability::ZeroSumFree;
};

struct AlgebraTranslation {
  ExprPtr expr;
  /// witness[i] is the formula variable stored in column i+1 of the output;
  /// always the canonical free-variable order of the input.
  VarList witness;
  Capability capability = Capability::ZeroSumFree;
};

/// supp( union over relations R and columns j of proj[j](R) ), left-nested
/// in schema order. Throws InvalidArgument on an empty schema.
ExprPtr adom_expr(const Schema& schema);

CalculusTranslation algebra_to_calculus(const AlgebraExpr& e, const Schema& schema);
AlgebraTranslation calculus_to_algebra(const Formula& f, const Schema& schema);

/// Pads e (columns `have`) with adom columns for every variable of `want`
/// missing from `have`, then projects into `want` order. Returns e itself
/// when have == want.
ExprPtr pad_align(const ExprPtr& e, const VarList& have, const VarList& want,
                  const ExprPtr& adom);

}  // namespace krel
