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
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "krel/algebra.hpp"
#include "krel/calculus.hpp"
#include "krel/transpile.hpp"

namespace krel {

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t max_depth = 5;
  std::size_t max_arity = 4;
  std::size_t adom_size = 4;
  std::size_t max_supp_rows = 6;
  SemiringKind semiring = SemiringKind::Bag;
  bool allow_div = false;
  bool allow_forall = false;
  bool allow_supp = true;
};

/// Seeded generator. Draws are plain modulo reductions of mt19937_64 output,
/// so a seed produces the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform-ish in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }
  /// Inclusive range.
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool chance(unsigned num, unsigned den) { return below(den) < num; }
  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

 private:
  std::mt19937_64 eng_;
};

/// R:2, S:1.
Schema default_schema();

/// A random value of the instance; nonzero unless allow_zero.
Value gen_value(Rng& rng, SemiringKind kind, bool allow_zero = false);

KDatabase gen_database(const GenConfig& cfg, const Schema& schema);
KDatabase gen_database(Rng& rng, const GenConfig& cfg, const Schema& schema);

ExprPtr gen_algebra_expr(const GenConfig& cfg, const Schema& schema);
ExprPtr gen_algebra_expr(Rng& rng, const GenConfig& cfg, const Schema& schema);

FormulaPtr gen_formula(const GenConfig& cfg, const Schema& schema);
FormulaPtr gen_formula(Rng& rng, const GenConfig& cfg, const Schema& schema);

struct Verdict {
  bool pass = true;
  std::optional<Tuple> tuple;  // first differing tuple
  std::string left;            // value on the algebra / active-domain side
  std::string right;           // value on the calculus / enlarged side
  std::string detail;

  nlohmann::json to_json() const;
};

/// eval(e, db) against relation_of(f, A(db)), with column i of e matched to
/// variable witness[i]. Throws CapabilityViolation if db's instance does not
/// meet `cap`.
Verdict check_equivalence(const AlgebraExpr& e, const Formula& f,
                          const VarList& witness, const KDatabase& db,
                          Capability cap = Capability::ZeroSumFree);

/// The `count` smallest names not in adom: single letters a..z first, then
/// e1, e2, ...
std::vector<DomainElem> fresh_elements(const std::set<DomainElem>& adom,
                                       std::size_t count);

/// relation_of over A(db) against relation_of over adom(db) plus `extra`
/// fresh elements.
Verdict check_domain_independence(const Formula& f, const KDatabase& db,
                                  std::size_t extra);

struct AxiomReport {
  SemiringKind kind;
  bool exhaustive = false;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::vector<std::string> counterexamples;  // at most a few

  bool pass() const { return failures == 0; }
  nlohmann::json to_json() const;
};

/// a-a=0, 0-a=0, a+(b-a)=b+(a-b), a-(b+c)=(a-b)-c, and
/// a-b <= c iff a <= b+c. Exhaustive on Boolean. Throws MonusUnsupported.
AxiomReport monus_axiom_suite(SemiringKind kind, std::size_t samples,
                              std::uint64_t seed);

/// One JSON-lines verdict record.
nlohmann::json verdict_record(const std::string& property, std::uint64_t seed,
                              SemiringKind kind, const Verdict& v);

}  // namespace krel
