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


// Exact multivariate polynomials over the Gaussian rationals Q(i).
//
// Exponent vectors are dense arrays with room for 16 variables.  Terms live
// in a map ordered by graded lex, so iteration and printing are
// deterministic.  Variable indices are 0-based in C++ and 1-based in text
// (x1..xn).

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gltrees/rational.hpp"

namespace gltrees {

inline constexpr std::size_t kMaxVariables = 16;

struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT: real embedding
  GaussianRational(int r) : re(r) {}                   // NOLINT
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational imaginary_unit() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  GaussianRational conj() const { return {re, -im}; }
  /// Throws std::domain_error for zero.
  GaussianRational inverse() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// "3", "-1/2", "2i", "-i", "(1/2+3/2i)".
std::string to_string(const GaussianRational& z);

using Exponent = std::array<std::uint16_t, kMaxVariables>;

unsigned total_degree(const Exponent& e);

/// Graded lex: lower total degree first, then lexicographic with x1 largest.
struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

class Polynomial {
 public:
  using Terms = std::map<Exponent, GaussianRational, GradedLexLess>;

  explicit Polynomial(std::size_t n = 0);
  static Polynomial constant(std::size_t n, const GaussianRational& c);
  /// The variable x_{i+1}.
  static Polynomial variable(std::size_t n, std::size_t i);
  static Polynomial monomial(std::size_t n, const Exponent& e, const GaussianRational& c = 1);

  std::size_t variables() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }
  GaussianRational coefficient(const Exponent& e) const;

  /// Adds c * x^e, dropping the term if it cancels.
  void add_term(const Exponent& e, const GaussianRational& c);

  /// Total degree; nullopt for the zero polynomial.
  std::optional<unsigned> degree() const;
  /// Zero counts as homogeneous of every degree.
  bool is_homogeneous() const;
  /// Terms of total degree exactly k.
  Polynomial homogeneous_part(unsigned k) const;
  /// Drops terms of total degree above `max_degree`.
  Polynomial truncated(unsigned max_degree) const;
  /// All coefficients real.
  bool is_real() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const GaussianRational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= GaussianRational(-1); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const GaussianRational& c, Polynomial p) { return p *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

 private:
  void check_compatible(const Polynomial& o) const;

  std::size_t n_;
  Terms terms_;
};

/// Product with every term of total degree above `max_degree` discarded.
Polynomial multiply_truncated(const Polynomial& a, const Polynomial& b, unsigned max_degree);
Polynomial pow(const Polynomial& p, unsigned k);

/// Partial derivative in x_{i+1}; throws std::out_of_range for i >= n.
Polynomial diff(const Polynomial& p, std::size_t i);
/// D^alpha p.
Polynomial derivative(const Polynomial& p, const Exponent& alpha);

/// Highest degree first, e.g. "x1^2*x3 + 2i*x1*x2*x3 - x2^2*x3"; "0" for zero.
std::string to_string(const Polynomial& p);

/// Grammar: rationals, i, x1..xn, + - * / ^ and parentheses.  A numeric
/// literal "a/b" or "a/bi" is read as one number, so "3/2i" is (3/2)i.
/// Division is only by nonzero constants.  Throws ParseError.
Polynomial parse_poly(std::string_view text, std::size_t n);

// ---------------------------------------------------------------------------
// Maps and matrices.

using PolyMap = std::vector<Polynomial>;
using PolyMatrix = std::vector<std::vector<Polynomial>>;

PolyMap identity_map(std::size_t n);
PolyMap gradient(const Polynomial& p);
PolyMatrix hessian(const Polynomial& p);
PolyMatrix jacobian(const PolyMap& f);

bool is_symmetric(const PolyMatrix& m);
PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix mat_pow(const PolyMatrix& m, unsigned r);
bool is_zero(const PolyMatrix& m);
/// Whether m^r = 0; throws std::invalid_argument for non-square input.
bool mat_nilpotent(const PolyMatrix& m, unsigned r);

/// Sum of f_i g_i; throws std::invalid_argument on length mismatch.
Polynomial dot(const PolyMap& f, const PolyMap& g);

/// f(g(X)), truncated above total degree `trunc` at every intermediate step.
PolyMap compose(const PolyMap& f, const PolyMap& g, unsigned trunc);

PolyMap operator+(const PolyMap& a, const PolyMap& b);
PolyMap operator-(const PolyMap& a, const PolyMap& b);

/// Largest component degree; nullopt if every component is zero.
std::optional<unsigned> degree(const PolyMap& f);
std::string to_string(const PolyMap& f);
std::string to_string(const PolyMatrix& m);

/// Parses one polynomial per non-empty line ('#' starts a comment).
PolyMap parse_poly_map(std::string_view text, std::size_t n);

}  // namespace gltrees
