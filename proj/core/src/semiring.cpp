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

#include "krel/semiring.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

#include "krel/error.hpp"

namespace krel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InstanceMismatch: return "InstanceMismatch";
    case ErrorCode::MonusUnsupported: return "MonusUnsupported";
    case ErrorCode::OrderUndecidable: return "OrderUndecidable";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnknownRelation: return "UnknownRelation";
    case ErrorCode::IndexError: return "IndexError";
    case ErrorCode::DivArity: return "DivArity";
    case ErrorCode::DuplicateTuple: return "DuplicateTuple";
    case ErrorCode::ZeroValue: return "ZeroValue";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::NotFreeVariable: return "NotFreeVariable";
    case ErrorCode::EmptyUniverse: return "EmptyUniverse";
    case ErrorCode::CapabilityViolation: return "CapabilityViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

constexpr SemiringDescriptor kDescriptors[] = {
    // name         zsf    nzd    pos    monus  order  idem
    {"bool",        true,  true,  true,  true,  true,  true},
    {"bag",         true,  true,  true,  true,  true,  false},
    {"tropical",    true,  true,  true,  true,  true,  true},
    {"fuzzy",       true,  true,  true,  true,  true,  true},
    // 1/2 (.) 1/2 = 0, so Lukasiewicz has zero divisors.
    {"lukasiewicz", true,  false, false, true,  true,  true},
    {"poly",        true,  true,  true,  true,  true,  false},
    {"security",    true,  true,  true,  false, true,  false},
    // The natural preorder of Z relates every pair; it is not an order.
    {"int",         false, true,  false, false, false, false},
};

[[noreturn]] void invalid(const std::string& msg) {
  throw Error(ErrorCode::InvalidValue, msg);
}

void require_same(const Value& a, const Value& b, const char* op) {
  if (a.kind() != b.kind()) {
    throw Error(ErrorCode::InstanceMismatch,
                std::string(op) + ": cannot combine " +
                    std::string(name_of(a.kind())) + " and " +
                    std::string(name_of(b.kind())) + " values");
  }
}

Polynomial canonical(Polynomial p) {
  Polynomial out;
  for (auto& [mono, coef] : p) {
    if (coef < 0) invalid("negative polynomial coefficient");
    if (coef == 0) continue;
    Monomial m;
    for (const auto& [var, exp] : mono) {
      if (var.empty()) invalid("empty indeterminate name");
      if (exp != 0) m.emplace(var, exp);
    }
    out[m] += coef;
  }
  return out;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      Monomial m = ma;
      for (const auto& [var, exp] : mb) m[var] += exp;
      out[m] += ca * cb;
    }
  }
  return out;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

BigInt parse_nat(std::string_view text) {
  std::string t = trim(text);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
      })) {
    invalid("expected a decimal natural number, got '" + t + "'");
  }
  return BigInt(t);
}

BigInt parse_signed(std::string_view text) {
  std::string t = trim(text);
  if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
    BigInt mag = parse_nat(std::string_view(t).substr(1));
    return t[0] == '-' ? BigInt(-mag) : mag;
  }
  return parse_nat(t);
}

Rational parse_unit_rational(std::string_view text) {
  std::string t = trim(text);
  auto slash = t.find('/');
  Rational q;
  if (slash == std::string::npos) {
    q = Rational(parse_nat(t));
  } else {
    BigInt den = parse_nat(std::string_view(t).substr(slash + 1));
    if (den == 0) invalid("zero denominator in '" + t + "'");
    q = Rational(parse_nat(std::string_view(t).substr(0, slash)), den);
  }
  if (q > 1) invalid("value '" + t + "' is outside [0,1]");
  return q;
}

SecurityLevel parse_level(char c) {
  switch (c) {
    case 'I': return SecurityLevel::I;
    case 'T': return SecurityLevel::T;
    case 'S': return SecurityLevel::S;
    case 'C': return SecurityLevel::C;
    case 'P': return SecurityLevel::P;
    default: invalid(std::string("unknown security level '") + c + "'");
  }
}

// Terms separated by '+', factors by '*', e.g. "2*x^2*y + 3".
Polynomial parse_polynomial_text(std::string_view text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  if (t.empty()) invalid("empty polynomial");
  Polynomial p;
  std::size_t pos = 0;
  while (pos <= t.size()) {
    std::size_t end = t.find('+', pos);
    if (end == std::string::npos) end = t.size();
    std::string term = t.substr(pos, end - pos);
    if (term.empty()) invalid("malformed polynomial '" + std::string(text) + "'");
    BigInt coef = 1;
    Monomial mono;
    std::size_t fpos = 0;
    while (fpos <= term.size()) {
      std::size_t fend = term.find('*', fpos);
      if (fend == std::string::npos) fend = term.size();
      std::string factor = term.substr(fpos, fend - fpos);
      if (factor.empty()) invalid("malformed polynomial term '" + term + "'");
      if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
        coef *= parse_nat(factor);
      } else {
        auto caret = factor.find('^');
        std::string var = factor.substr(0, caret);
        unsigned exp = 1;
        if (caret != std::string::npos) {
          exp = static_cast<unsigned>(parse_nat(factor.substr(caret + 1)));
        }
        for (char c : var) {
          if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
            invalid("bad indeterminate '" + var + "'");
          }
        }
        mono[var] += exp;
      }
      fpos = fend + 1;
    }
    p[mono] += coef;
    pos = end + 1;
  }
  return canonical(std::move(p));
}

std::string polynomial_text(const Polynomial& p) {
  if (p.empty()) return "0";
  // Higher total degree first; ties broken by the monomial map order.
  std::vector<std::pair<Monomial, BigInt>> terms(p.begin(), p.end());
  auto degree = [](const Monomial& m) {
    unsigned d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
  };
  std::stable_sort(terms.begin(), terms.end(), [&](const auto& x, const auto& y) {
    return degree(x.first) > degree(y.first);
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, coef] : terms) {
    if (!first) os << " + ";
    first = false;
    bool wrote = false;
    if (coef != 1 || mono.empty()) {
      os << coef;
      wrote = true;
    }
    for (const auto& [var, exp] : mono) {
      if (wrote) os << '*';
      os << var;
      if (exp != 1) os << '^' << exp;
      wrote = true;
    }
  }
  return os.str();
}

std::string rational_text(const Rational& q) {
  auto num = boost::multiprecision::numerator(q);
  auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace

const SemiringDescriptor& descriptor(SemiringKind kind) {
  return kDescriptors[static_cast<std::size_t>(kind)];
}

std::string_view name_of(SemiringKind kind) { return descriptor(kind).name; }

SemiringKind parse_semiring(std::string_view name) {
  std::string n(name);
  std::transform(n.begin(), n.end(), n.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (n == "bool" || n == "boolean" || n == "b") return SemiringKind::Boolean;
  if (n == "bag" || n == "nat" || n == "n") return SemiringKind::Bag;
  if (n == "tropical" || n == "trop" || n == "tn") return SemiringKind::Tropical;
  if (n == "fuzzy" || n == "f") return SemiringKind::Fuzzy;
  if (n == "lukasiewicz" || n == "luk" || n == "l") {
    return SemiringKind::Lukasiewicz;
  }
  if (n == "poly" || n == "provenance" || n == "nx") {
    return SemiringKind::Provenance;
  }
  if (n == "security" || n == "sec") return SemiringKind::Security;
  if (n == "int" || n == "integer" || n == "z") return SemiringKind::Integer;
  throw Error(ErrorCode::InvalidArgument,
              "unknown semiring '" + std::string(name) + "'");
}

char level_char(SecurityLevel level) { return "ITSCP"[static_cast<int>(level)]; }

// --- factories -------------------------------------------------------------

Value Value::boolean(bool b) { return Value(SemiringKind::Boolean, b); }

Value Value::bag(BigInt n) {
  if (n < 0) invalid("bag multiplicities are nonnegative");
  return Value(SemiringKind::Bag, std::move(n));
}

Value Value::integer(BigInt n) {
  return Value(SemiringKind::Integer, std::move(n));
}

Value Value::tropical(BigInt n) {
  if (n < 0) invalid("tropical naturals are nonnegative");
  return Value(SemiringKind::Tropical, TropicalNat{std::move(n)});
}

Value Value::tropical_infinity() {
  return Value(SemiringKind::Tropical, TropicalNat::infinity());
}

Value Value::fuzzy(Rational q) {
  if (q < 0 || q > 1) invalid("fuzzy values lie in [0,1]");
  return Value(SemiringKind::Fuzzy, std::move(q));
}

Value Value::lukasiewicz(Rational q) {
  if (q < 0 || q > 1) invalid("Lukasiewicz values lie in [0,1]");
  return Value(SemiringKind::Lukasiewicz, std::move(q));
}

Value Value::polynomial(Polynomial p) {
  return Value(SemiringKind::Provenance, canonical(std::move(p)));
}

Value Value::monomial(BigInt coef, Monomial mono) {
  Polynomial p;
  p.emplace(std::move(mono), std::move(coef));
  return polynomial(std::move(p));
}

Value Value::security(BigInt count, SecurityLevel level) {
  if (count < 1) invalid("security pairs carry a positive count");
  return Value(SemiringKind::Security,
               std::optional<SecurityPair>(SecurityPair{std::move(count), level}));
}

Value Value::security_zero() {
  return Value(SemiringKind::Security, std::optional<SecurityPair>());
}

Value Value::zero(SemiringKind kind) {
  switch (kind) {
    case SemiringKind::Boolean: return boolean(false);
    case SemiringKind::Bag: return bag(0);
    case SemiringKind::Tropical: return tropical_infinity();
    case SemiringKind::Fuzzy: return fuzzy(0);
    case SemiringKind::Lukasiewicz: return lukasiewicz(0);
    case SemiringKind::Provenance: return polynomial({});
    case SemiringKind::Security: return security_zero();
    case SemiringKind::Integer: return integer(0);
  }
  invalid("unknown semiring");
}

Value Value::one(SemiringKind kind) {
  switch (kind) {
    case SemiringKind::Boolean: return boolean(true);
    case SemiringKind::Bag: return bag(1);
    case SemiringKind::Tropical: return tropical(0);
    case SemiringKind::Fuzzy: return fuzzy(1);
    case SemiringKind::Lukasiewicz: return lukasiewicz(1);
    case SemiringKind::Provenance: return monomial(1, {});
    case SemiringKind::Security: return security(1, SecurityLevel::P);
    case SemiringKind::Integer: return integer(1);
  }
  invalid("unknown semiring");
}

bool Value::is_zero() const {
  switch (kind_) {
    case SemiringKind::Boolean: return !as_bool();
    case SemiringKind::Bag:
    case SemiringKind::Integer: return as_int().is_zero();
    case SemiringKind::Tropical: return as_tropical().is_infinite();
    case SemiringKind::Fuzzy:
    case SemiringKind::Lukasiewicz: return as_rational().is_zero();
    case SemiringKind::Provenance: return as_polynomial().empty();
    case SemiringKind::Security: return !as_security().has_value();
  }
  return false;
}

bool Value::is_one() const {
  static const std::array<Value, 8> ones = {
      one(SemiringKind::Boolean),    one(SemiringKind::Bag),
      one(SemiringKind::Tropical),   one(SemiringKind::Fuzzy),
      one(SemiringKind::Lukasiewicz), one(SemiringKind::Provenance),
      one(SemiringKind::Security),   one(SemiringKind::Integer)};
  return *this == ones[static_cast<std::size_t>(kind_)];
}

std::string Value::to_string() const {
  switch (kind_) {
    case SemiringKind::Boolean: return as_bool() ? "true" : "false";
    case SemiringKind::Bag:
    case SemiringKind::Integer: return as_int().str();
    case SemiringKind::Tropical: {
      const auto& t = as_tropical();
      return t.is_infinite() ? "inf" : t.finite->str();
    }
    case SemiringKind::Fuzzy:
    case SemiringKind::Lukasiewicz: return rational_text(as_rational());
    case SemiringKind::Provenance: return polynomial_text(as_polynomial());
    case SemiringKind::Security: {
      const auto& s = as_security();
      if (!s) return "0";
      return "(" + s->count.str() + "," + level_char(s->level) + ")";
    }
  }
  return "?";
}

std::ostream& operator<<(std::ostream& os, const Value& v) {
  return os << v.to_string();
}

// --- operations ------------------------------------------------------------

Value add(const Value& a, const Value& b) {
  require_same(a, b, "add");
  switch (a.kind()) {
    case SemiringKind::Boolean: return Value::boolean(a.as_bool() || b.as_bool());
    case SemiringKind::Bag: return Value::bag(a.as_int() + b.as_int());
    case SemiringKind::Integer: return Value::integer(a.as_int() + b.as_int());
    case SemiringKind::Tropical: {
      const auto& x = a.as_tropical();
      const auto& y = b.as_tropical();
      if (x.is_infinite()) return b;
      if (y.is_infinite()) return a;
      return Value::tropical(std::min(*x.finite, *y.finite));
    }
    case SemiringKind::Fuzzy:
    case SemiringKind::Lukasiewicz:
      return a.as_rational() >= b.as_rational() ? a : b;
    case SemiringKind::Provenance: {
      Polynomial p = a.as_polynomial();
      for (const auto& [m, c] : b.as_polynomial()) p[m] += c;
      return Value::polynomial(std::move(p));
    }
    case SemiringKind::Security: {
      const auto& x = a.as_security();
      const auto& y = b.as_security();
      if (!x) return b;
      if (!y) return a;
      return Value::security(x->count + y->count, std::min(x->level, y->level));
    }
  }
  invalid("unknown semiring");
}

Value mul(const Value& a, const Value& b) {
  require_same(a, b, "mul");
  switch (a.kind()) {
    case SemiringKind::Boolean: return Value::boolean(a.as_bool() && b.as_bool());
    case SemiringKind::Bag: return Value::bag(a.as_int() * b.as_int());
    case SemiringKind::Integer: return Value::integer(a.as_int() * b.as_int());
    case SemiringKind::Tropical: {
      const auto& x = a.as_tropical();
      const auto& y = b.as_tropical();
      if (x.is_infinite() || y.is_infinite()) return Value::tropical_infinity();
      return Value::tropical(*x.finite + *y.finite);
    }
    case SemiringKind::Fuzzy:
      return a.as_rational() <= b.as_rational() ? a : b;
    case SemiringKind::Lukasiewicz: {
      Rational s = a.as_rational() + b.as_rational() - 1;
      return Value::lukasiewicz(s > 0 ? s : Rational(0));
    }
    case SemiringKind::Provenance:
      return Value::polynomial(poly_mul(a.as_polynomial(), b.as_polynomial()));
    case SemiringKind::Security: {
      const auto& x = a.as_security();
      const auto& y = b.as_security();
      if (!x || !y) return Value::security_zero();
      return Value::security(x->count * y->count, std::min(x->level, y->level));
    }
  }
  invalid("unknown semiring");
}

Value monus(const Value& a, const Value& b) {
  require_same(a, b, "monus");
  if (!descriptor(a.kind()).has_monus) {
    throw Error(ErrorCode::MonusUnsupported,
                "the " + std::string(name_of(a.kind())) +
                    " semiring has no monus");
  }
  switch (a.kind()) {
    case SemiringKind::Boolean: return Value::boolean(a.as_bool() && !b.as_bool());
    case SemiringKind::Bag: {
      const auto& x = a.as_int();
      const auto& y = b.as_int();
      return Value::bag(x >= y ? BigInt(x - y) : BigInt(0));
    }
    case SemiringKind::Tropical: {
      // a - b = a when a < b in the standard order (inf is largest), else inf.
      const auto& x = a.as_tropical();
      const auto& y = b.as_tropical();
      if (x.is_infinite()) return a;
      if (y.is_infinite() || *x.finite < *y.finite) return a;
      return Value::tropical_infinity();
    }
    case SemiringKind::Fuzzy:
    case SemiringKind::Lukasiewicz:
      return a.as_rational() > b.as_rational() ? a : Value::zero(a.kind());
    case SemiringKind::Provenance: {
      Polynomial p;
      const auto& g = b.as_polynomial();
      for (const auto& [m, c] : a.as_polynomial()) {
        auto it = g.find(m);
        if (it == g.end()) {
          p.emplace(m, c);
        } else if (c > it->second) {
          p.emplace(m, c - it->second);
        }
      }
      return Value::polynomial(std::move(p));
    }
    case SemiringKind::Security:
    case SemiringKind::Integer: break;
  }
  throw Error(ErrorCode::MonusUnsupported, "no monus");
}

Value support_val(const Value& a) {
  return a.is_zero() ? Value::zero(a.kind()) : Value::one(a.kind());
}

bool nat_leq(const Value& a, const Value& b) {
  require_same(a, b, "nat_leq");
  switch (a.kind()) {
    case SemiringKind::Boolean: return !a.as_bool() || b.as_bool();
    case SemiringKind::Bag: return a.as_int() <= b.as_int();
    case SemiringKind::Tropical: {
      const auto& x = a.as_tropical();
      const auto& y = b.as_tropical();
      if (x.is_infinite()) return true;
      if (y.is_infinite()) return false;
      return *x.finite >= *y.finite;
    }
    case SemiringKind::Fuzzy:
    case SemiringKind::Lukasiewicz: return a.as_rational() <= b.as_rational();
    case SemiringKind::Provenance: {
      const auto& g = b.as_polynomial();
      for (const auto& [m, c] : a.as_polynomial()) {
        auto it = g.find(m);
        if (it == g.end() || it->second < c) return false;
      }
      return true;
    }
    case SemiringKind::Security: {
      // (x,s) + (c,u) = (x+c, min(s,u)) reaches (x',t) iff x < x' and t <= s.
      const auto& x = a.as_security();
      const auto& y = b.as_security();
      if (!x || a == b) return true;
      if (!y) return false;
      return x->count < y->count && y->level <= x->level;
    }
    case SemiringKind::Integer: break;
  }
  throw Error(ErrorCode::OrderUndecidable,
              "the natural preorder of " + std::string(name_of(a.kind())) +
                  " is not an order");
}

// --- encodings -------------------------------------------------------------

nlohmann::json to_json(const Value& v) {
  switch (v.kind()) {
    case SemiringKind::Boolean: return v.as_bool();
    case SemiringKind::Provenance: {
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& [mono, coef] : v.as_polynomial()) {
        nlohmann::json m = nlohmann::json::object();
        for (const auto& [var, exp] : mono) m[var] = exp;
        terms.push_back({{"coef", coef.str()}, {"mono", m}});
      }
      return terms;
    }
    default: return v.to_string();
  }
}

Value value_from_json(SemiringKind kind, const nlohmann::json& j) {
  if (kind == SemiringKind::Boolean) {
    if (j.is_boolean()) return Value::boolean(j.get<bool>());
    invalid("Boolean values are encoded as true/false");
  }
  if (kind == SemiringKind::Provenance) {
    if (j.is_string()) return parse_value(kind, j.get<std::string>());
    if (!j.is_array()) invalid("polynomials are encoded as a list of terms");
    Polynomial p;
    for (const auto& term : j) {
      if (!term.is_object() || !term.contains("coef")) {
        invalid("polynomial term needs a coef field");
      }
      BigInt coef = term["coef"].is_string()
                        ? parse_nat(term["coef"].get<std::string>())
                        : BigInt(term["coef"].get<std::uint64_t>());
      Monomial mono;
      if (term.contains("mono")) {
        for (const auto& [var, exp] : term["mono"].items()) {
          mono[var] += exp.get<unsigned>();
        }
      }
      p[mono] += coef;
    }
    return Value::polynomial(std::move(p));
  }
  if (j.is_number_unsigned() || j.is_number_integer()) {
    return parse_value(kind, j.dump());
  }
  if (!j.is_string()) invalid("expected a string-encoded value, got " + j.dump());
  return parse_value(kind, j.get<std::string>());
}

Value parse_value(SemiringKind kind, std::string_view text) {
  std::string t = trim(text);
  switch (kind) {
    case SemiringKind::Boolean:
      if (t == "true" || t == "1") return Value::boolean(true);
      if (t == "false" || t == "0") return Value::boolean(false);
      invalid("expected true or false, got '" + t + "'");
    case SemiringKind::Bag: return Value::bag(parse_nat(t));
    case SemiringKind::Integer: return Value::integer(parse_signed(t));
    case SemiringKind::Tropical:
      if (t == "inf") return Value::tropical_infinity();
      return Value::tropical(parse_nat(t));
    case SemiringKind::Fuzzy: return Value::fuzzy(parse_unit_rational(t));
    case SemiringKind::Lukasiewicz:
      return Value::lukasiewicz(parse_unit_rational(t));
    case SemiringKind::Provenance: return Value::polynomial(parse_polynomial_text(t));
    case SemiringKind::Security: {
      if (t == "0") return Value::security_zero();
      if (t.size() < 5 || t.front() != '(' || t.back() != ')') {
        invalid("expected (n,L), got '" + t + "'");
      }
      auto comma = t.find(',');
      if (comma == std::string::npos) invalid("expected (n,L), got '" + t + "'");
      std::string level = trim(std::string_view(t).substr(comma + 1, t.size() - comma - 2));
      if (level.size() != 1) invalid("bad security level in '" + t + "'");
      return Value::security(parse_nat(std::string_view(t).substr(1, comma - 1)),
                             parse_level(level[0]));
    }
  }
  invalid("unknown semiring");
}

}  // namespace krel
