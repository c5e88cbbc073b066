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

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "krel/error.hpp"

namespace krel::detail {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok type;
  std::string text;
  std::size_t pos;
};

// Identifiers: [A-Za-z_][A-Za-z0-9_']*. Punctuation: ( ) [ ] , . # = !=
inline std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (std::isalpha(c) || c == '_') {
      std::size_t j = i + 1;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' ||
              s[j] == '\'')) {
        ++j;
      }
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
    } else if (std::isdigit(c)) {
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Number, std::string(s.substr(i, j - i)), i});
      i = j;
    } else if (c == '!' && i + 1 < s.size() && s[i + 1] == '=') {
      out.push_back({Tok::Punct, "!=", i});
      i += 2;
    } else if (std::string_view("()[],.#=").find(static_cast<char>(c)) !=
               std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, static_cast<char>(c)), i});
      ++i;
    } else {
      throw SyntaxError(i, std::string("unexpected character '") +
                               static_cast<char>(c) + "'");
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class TokenStream {
 public:
  explicit TokenStream(std::string_view s) : toks_(lex(s)) {}

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(i_ + k, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[i_];
    if (i_ + 1 < toks_.size()) ++i_;
    return t;
  }
  bool at_end() const { return peek().type == Tok::End; }

  bool is_punct(std::string_view p, std::size_t k = 0) const {
    return peek(k).type == Tok::Punct && peek(k).text == p;
  }
  bool is_word(std::string_view w, std::size_t k = 0) const {
    return peek(k).type == Tok::Ident && peek(k).text == w;
  }
  bool accept_punct(std::string_view p) {
    if (!is_punct(p)) return false;
    next();
    return true;
  }
  bool accept_word(std::string_view w) {
    if (!is_word(w)) return false;
    next();
    return true;
  }
  void expect_punct(std::string_view p) {
    if (!accept_punct(p)) fail("expected '" + std::string(p) + "'");
  }
  std::string expect_ident(const char* what) {
    if (peek().type != Tok::Ident) fail(std::string("expected ") + what);
    return next().text;
  }
  std::size_t expect_number() {
    if (peek().type != Tok::Number) fail("expected a number");
    const std::string& t = next().text;
    if (t.size() > 9) fail("number too large");
    return std::stoul(t);
  }
  void expect_end() {
    if (!at_end()) fail("unexpected trailing input '" + peek().text + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    std::string m = msg;
    if (peek().type == Tok::End) {
      m += " at end of input";
    } else {
      m += ", found '" + peek().text + "'";
    }
    throw SyntaxError(peek().pos, m);
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace krel::detail
