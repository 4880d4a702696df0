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


#include <doctest.h>

#include "gltrees/errors.hpp"
#include "gltrees/poly.hpp"
#include "oracles.hpp"

using namespace gltrees;

namespace {

const GaussianRational I = GaussianRational::imaginary_unit();

Polynomial x(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }

Polynomial witness() {
  const Polynomial l = x(3, 0) + I * x(3, 1);
  return l * l * x(3, 2);
}

}  // namespace

TEST_CASE("Gaussian rational arithmetic") {
  const GaussianRational a(Rational(1), Rational(2)), b(Rational(3), Rational(-1));
  CHECK(a * b == GaussianRational(Rational(5), Rational(5)));
  CHECK(a / a == GaussianRational(1));
  CHECK(a * a.inverse() == GaussianRational(1));
  CHECK(I * I == GaussianRational(-1));
  CHECK_THROWS_AS(GaussianRational().inverse(), std::domain_error);
  CHECK(to_string(GaussianRational(Rational(1, 2), Rational(3, 2))) == "(1/2+3/2i)");
  CHECK(to_string(-I) == "-i");
  CHECK(to_string(GaussianRational(Rational(-1, 2))) == "-1/2");
}

TEST_CASE("parsing") {
  CHECK(parse_poly("(x1+i*x2)^2*x3", 3) == witness());
  CHECK(to_string(witness()) == "x1^2*x3 + 2i*x1*x2*x3 - x2^2*x3");
  CHECK(parse_poly("3/2i", 1) == Polynomial::constant(1, GaussianRational(Rational(0), Rational(3, 2))));
  CHECK(parse_poly("x1/2 - x1*1/2", 1).is_zero());
  CHECK(parse_poly("-(x1 - x2)^3", 2) == -pow(x(2, 0) - x(2, 1), 3));
  CHECK(parse_poly(" 2 * x1 ^ 2 ", 1) == GaussianRational(2) * x(1, 0) * x(1, 0));
  CHECK(parse_poly("0", 2).is_zero());
  CHECK(to_string(parse_poly("0", 2)) == "0");
  CHECK(parse_poly("x1*(1+i)", 1).coefficient(Exponent{1}) == GaussianRational(Rational(1), Rational(1)));
}

TEST_CASE("malformed polynomial input") {
  CHECK_THROWS_AS(parse_poly("x4", 3), ParseError);
  CHECK_THROWS_AS(parse_poly("x0", 3), ParseError);
  CHECK_THROWS_AS(parse_poly("x1 +", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("(x1", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("x1/x2", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("x1/0", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("x1^x2", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("x1^100000", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("y", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("", 2), ParseError);
  CHECK_THROWS_AS(Polynomial(17), std::invalid_argument);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Polynomial a = oracle::random_polynomial(rng, 3, 3, 5);
    const Polynomial b = oracle::random_polynomial(rng, 3, 3, 5);
    const Polynomial c = oracle::random_polynomial(rng, 3, 2, 4);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    CHECK(multiply_truncated(a, b, 4) == (a * b).truncated(4));
    if (!a.is_zero() && !b.is_zero()) CHECK(*(a * b).degree() == *a.degree() + *b.degree());
    // Leibniz rule.
    for (std::size_t i = 0; i < 3; ++i) CHECK(diff(a * b, i) == diff(a, i) * b + a * diff(b, i));
    CHECK(parse_poly(to_string(a), 3) == a);
  }
}

TEST_CASE("derivatives") {
  const Polynomial p = parse_poly("x1^3*x2 + 5*x2^2", 2);
  CHECK(diff(p, 0) == parse_poly("3*x1^2*x2", 2));
  CHECK(diff(p, 1) == parse_poly("x1^3 + 10*x2", 2));
  CHECK_THROWS_AS(diff(p, 2), std::out_of_range);
  Exponent alpha{};
  alpha[0] = 2;
  alpha[1] = 1;
  CHECK(derivative(p, alpha) == parse_poly("6*x1", 2));
  CHECK(derivative(p, Exponent{}) == p);
}

TEST_CASE("Euler identity and Hessian symmetry for homogeneous polynomials") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const unsigned d = 2 + trial % 3;
    const Polynomial p = oracle::random_homogeneous(rng, n, d);
    CHECK(p.is_homogeneous());
    CHECK(dot(identity_map(n), gradient(p)) == GaussianRational(static_cast<int>(d)) * p);
    const PolyMatrix h = hessian(p);
    CHECK(is_symmetric(h));
    CHECK(h == jacobian(gradient(p)));
  }
}

TEST_CASE("nilpotent Hessians") {
  const PolyMatrix h = hessian(witness());
  CHECK_FALSE(mat_nilpotent(h, 2));
  CHECK(mat_nilpotent(h, 3));
  CHECK(is_zero(mat_pow(h, 4)));
  CHECK(mat_pow(h, 0) == mat_pow(h, 0));
  CHECK_FALSE(is_zero(mat_pow(h, 0)));
  // A real symmetric nilpotent matrix is zero, so no real random cubic qualifies.
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Polynomial p = oracle::random_homogeneous(rng, 3, 3, true);
    if (p.is_zero()) continue;
    CHECK_FALSE(mat_nilpotent(hessian(p), 3));
  }
  // Strictly upper triangular, not symmetric.
  const PolyMatrix u{{Polynomial(2), x(2, 0)}, {Polynomial(2), Polynomial(2)}};
  CHECK(mat_nilpotent(u, 2));
  CHECK_FALSE(is_symmetric(u));
  CHECK_THROWS_AS(mat_nilpotent(PolyMatrix{{Polynomial(1), Polynomial(1)}}, 2), std::invalid_argument);
}

TEST_CASE("maps: dot, compose, degree") {
  const PolyMap f{parse_poly("x1 + x2^2", 2), parse_poly("x2", 2)};
  const PolyMap g{parse_poly("x1 - x2^2", 2), parse_poly("x2", 2)};
  CHECK(compose(f, g, 10) == identity_map(2));
  CHECK(compose(g, f, 10) == identity_map(2));
  CHECK(compose(f, f, 10) == PolyMap{parse_poly("x1 + 2*x2^2", 2), parse_poly("x2", 2)});
  CHECK(degree(f) == 2u);
  CHECK(degree(PolyMap{Polynomial(2)}) == std::nullopt);
  CHECK(dot(f, g) == parse_poly("x1^2 - x2^4 + x2^2", 2));
  CHECK_THROWS_AS(dot(f, PolyMap{Polynomial(2)}), std::invalid_argument);
  CHECK(f - f == PolyMap{Polynomial(2), Polynomial(2)});
  CHECK(f + g == PolyMap{parse_poly("2*x1", 2), parse_poly("2*x2", 2)});
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const PolyMap a{oracle::random_polynomial(rng, 2, 3, 4), oracle::random_polynomial(rng, 2, 3, 4)};
    const PolyMap b{oracle::random_polynomial(rng, 2, 2, 4), oracle::random_polynomial(rng, 2, 2, 4)};
    const PolyMap exact = compose(a, b, 100);
    for (unsigned t = 0; t <= 6; ++t) {
      const PolyMap trunc = compose(a, b, t);
      for (std::size_t i = 0; i < 2; ++i) CHECK(trunc[i] == exact[i].truncated(t));
    }
  }
}

TEST_CASE("polynomial map files") {
  const PolyMap m = parse_poly_map("# comment\nx1^2\n\n  x1*x2 # trailing\n", 2);
  REQUIRE(m.size() == 2);
  CHECK(m[1] == parse_poly("x1*x2", 2));
  CHECK(to_string(m) == "x1^2\nx1*x2\n");
  CHECK(to_string(hessian(parse_poly("x1^2*x2", 2))) == "[2*x2, 2*x1]\n[2*x1, 0]\n");
}
