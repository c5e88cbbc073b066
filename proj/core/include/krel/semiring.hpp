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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

namespace krel {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// The concrete commutative semirings shipped with the library.
enum class SemiringKind : std::uint8_t {
  Boolean,      // ({false,true}, or, and, false, true)
  Bag,          // (N, +, *, 0, 1)
  Tropical,     // (N u {inf}, min, +, inf, 0)
  Fuzzy,        // ([0,1] n Q, max, min, 0, 1)
  Lukasiewicz,  // ([0,1] n Q, max, max(a+b-1,0), 0, 1)
  Provenance,   // N[X]
  Security,     // {0} u (N+ x {I,T,S,C,P}); naturally ordered, no monus
  Integer,      // Z; not zero-sum-free, no monus
};

inline constexpr std::array<SemiringKind, 8> kAllSemirings = {
    SemiringKind::Boolean,    SemiringKind::Bag,
    SemiringKind::Tropical,   SemiringKind::Fuzzy,
    SemiringKind::Lukasiewicz, SemiringKind::Provenance,
    SemiringKind::Security,   SemiringKind::Integer};

/// Capability flags of one instance.
struct SemiringDescriptor {
  std::string_view name;
  bool zero_sum_free;
  bool no_zero_divisors;
  bool positive;  // zero_sum_free && no_zero_divisors
  bool has_monus;
  bool order_decidable;
  bool additively_idempotent;  // a + a = a
};

const SemiringDescriptor& descriptor(SemiringKind kind);
std::string_view name_of(SemiringKind kind);
/// Accepts the canonical names ("bool", "bag", "tropical", "fuzzy",
/// "lukasiewicz", "poly", "security", "int") plus a few aliases.
SemiringKind parse_semiring(std::string_view name);

/// Natural numbers extended with the tropical zero.
struct TropicalNat {
  std::optional<BigInt> finite;  // nullopt is infinity

  static TropicalNat infinity() { return {}; }
  bool is_infinite() const { return !finite.has_value(); }
  bool operator==(const TropicalNat&) const = default;
};

/// Monomial x^alpha keyed by indeterminate name; exponents are positive.
using Monomial = std::map<std::string, unsigned>;
/// Polynomial with positive coefficients; the zero polynomial is empty.
using Polynomial = std::map<Monomial, BigInt>;

/// Ordered from most to least restrictive: I < T < S < C < P.
enum class SecurityLevel : std::uint8_t { I, T, S, C, P };

char level_char(SecurityLevel level);

struct SecurityPair {
  BigInt count;  // >= 1
  SecurityLevel level;
  bool operator==(const SecurityPair&) const = default;
};

/// A scalar of one concrete semiring. Values are immutable; every factory
/// canonicalizes (reduced fractions, no zero coefficients or exponents).
class Value {
 public:
  using Rep = std::variant<bool, BigInt, TropicalNat, Rational, Polynomial,
                           std::optional<SecurityPair>>;

  static Value boolean(bool b);
  static Value bag(BigInt n);
  static Value integer(BigInt n);
  static Value tropical(BigInt n);
  static Value tropical_infinity();
  static Value fuzzy(Rational q);
  static Value lukasiewicz(Rational q);
  static Value polynomial(Polynomial p);
  /// Single-term helper: coef * prod(var^exp).
  static Value monomial(BigInt coef, Monomial mono);
  static Value security(BigInt count, SecurityLevel level);
  static Value security_zero();

  static Value zero(SemiringKind kind);
  static Value one(SemiringKind kind);

  SemiringKind kind() const { return kind_; }
  const Rep& rep() const { return rep_; }

  bool is_zero() const;
  bool is_one() const;

  bool as_bool() const { return std::get<bool>(rep_); }
  const BigInt& as_int() const { return std::get<BigInt>(rep_); }
  const TropicalNat& as_tropical() const { return std::get<TropicalNat>(rep_); }
  const Rational& as_rational() const { return std::get<Rational>(rep_); }
  const Polynomial& as_polynomial() const {
    return std::get<Polynomial>(rep_);
  }
  const std::optional<SecurityPair>& as_security() const {
    return std::get<std::optional<SecurityPair>>(rep_);
  }

  bool operator==(const Value& other) const {
    return kind_ == other.kind_ && rep_ == other.rep_;
  }

  /// Human-readable text; identical to the JSON string encoding except for
  /// Boolean (true/false) and polynomials (rendered like "2*x^2*y + 3").
  std::string to_string() const;

 private:
  Value(SemiringKind kind, Rep rep) : kind_(kind), rep_(std::move(rep)) {}

  SemiringKind kind_;
  Rep rep_;
};

std::ostream& operator<<(std::ostream& os, const Value& v);

Value add(const Value& a, const Value& b);
Value mul(const Value& a, const Value& b);
/// Throws Error(MonusUnsupported) on instances without monus.
Value monus(const Value& a, const Value& b);
/// one if a is nonzero, else zero.
Value support_val(const Value& a);
/// The natural order a <= b (exists c: a + c = b). Throws
/// Error(OrderUndecidable) when the instance does not expose it.
bool nat_leq(const Value& a, const Value& b);

/// Value encodings shared by the database file format and the CLI.
nlohmann::json to_json(const Value& v);
Value value_from_json(SemiringKind kind, const nlohmann::json& j);
/// Parses the scalar text forms: decimal, "inf", "p/q", "(n,L)", "0",
/// true/false, and polynomial text such as "2*x^2*y + 3".
Value parse_value(SemiringKind kind, std::string_view text);

}  // namespace krel
