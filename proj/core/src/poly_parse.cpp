// Copyright 2026 The gltrees Authors
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


// Recursive-descent parser for polynomial text.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := atom ('^' digits)?
//   atom    := number | 'i' | 'x' digits | '(' expr ')'
//   number  := digits ('/' digits)? 'i'?

#include <cctype>

#include "gltrees/errors.hpp"
#include "gltrees/poly.hpp"

namespace gltrees {

namespace {

constexpr unsigned kMaxExponent = 1000;

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t n) : text_(text), n_(n) {}

  Polynomial parse() {
    skip_space();
    if (pos_ == text_.size()) fail("empty polynomial");
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_digit() const { return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])); }

  std::string digits() {
    const std::size_t start = pos_;
    while (at_digit()) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        Polynomial d = unary();
        if (d.is_zero() || d.degree() != 0u) {
          pos_ = at;
          fail("division by a nonconstant or zero expression");
        }
        acc *= d.coefficient(Exponent{}).inverse();
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (!accept('^')) return base;
    skip_space();
    if (!at_digit()) fail("exponent must be a non-negative integer");
    const std::size_t at = pos_;
    const std::string e = digits();
    if (e.size() > 4 || std::stoul(e) > kMaxExponent) {
      pos_ = at;
      fail("exponent too large");
    }
    return pow(base, static_cast<unsigned>(std::stoul(e)));
  }

  Polynomial atom() {
    skip_space();
    if (pos_ == text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (c == 'i') {
      ++pos_;
      return Polynomial::constant(n_, GaussianRational::imaginary_unit());
    }
    if (c == 'x') {
      const std::size_t at = pos_;
      ++pos_;
      if (!at_digit()) fail("variable name needs an index");
      const std::string idx = digits();
      const unsigned long k = idx.size() > 3 ? 1000 : std::stoul(idx);
      if (k < 1 || k > n_) {
        pos_ = at;
        fail("variable x" + idx + " outside x1..x" + std::to_string(n_));
      }
      return Polynomial::variable(n_, k - 1);
    }
    if (accept('(')) {
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  Polynomial number() {
    const std::size_t at = pos_;
    std::string lit = digits();
    // "a/b" is a single literal only when digits follow the slash directly.
    if (pos_ + 1 < text_.size() && text_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      lit += "/" + digits();
    }
    Rational q;
    try {
      q = parse_rational(lit);
    } catch (const std::invalid_argument&) {
      pos_ = at;
      fail("bad number '" + lit + "'");
    }
    if (pos_ < text_.size() && text_[pos_] == 'i') {
      ++pos_;
      return Polynomial::constant(n_, GaussianRational(Rational(0), q));
    }
    return Polynomial::constant(n_, q);
  }

  std::string_view text_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_poly(std::string_view text, std::size_t n) {
  if (n > kMaxVariables) throw std::invalid_argument("at most 16 variables are supported");
  return PolyParser(text, n).parse();
}

PolyMap parse_poly_map(std::string_view text, std::size_t n) {
  PolyMap out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) out.push_back(parse_poly(line, n));
    start = end + 1;
  }
  return out;
}

}  // namespace gltrees
