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


#include "gltrees/poly.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gltrees {

// ---------------------------------------------------------------------------
// GaussianRational

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(i)");
  const Rational norm = re * re + im * im;
  return {re / norm, -im / norm};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (o.im == 0) {
    re *= o.re;
    im *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

std::string to_string(const GaussianRational& z) {
  if (z.im == 0) return to_string(z.re);
  auto imag = [](const Rational& q) {
    if (q == 1) return std::string("i");
    if (q == -1) return std::string("-i");
    return to_string(q) + "i";
  };
  if (z.re == 0) return imag(z.im);
  std::string im = imag(z.im);
  if (im.front() != '-') im = "+" + im;
  return "(" + to_string(z.re) + im + ")";
}

// ---------------------------------------------------------------------------
// Exponents

unsigned total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0u); }

bool GradedLexLess::operator()(const Exponent& a, const Exponent& b) const {
  const unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::size_t n) : n_(n) {
  if (n > kMaxVariables) {
    throw std::invalid_argument("at most " + std::to_string(kMaxVariables) + " variables are supported");
  }
}

Polynomial Polynomial::constant(std::size_t n, const GaussianRational& c) { return monomial(n, Exponent{}, c); }

Polynomial Polynomial::variable(std::size_t n, std::size_t i) {
  if (i >= n) throw std::out_of_range("variable x" + std::to_string(i + 1) + " with n = " + std::to_string(n));
  Exponent e{};
  e[i] = 1;
  return monomial(n, e);
}

Polynomial Polynomial::monomial(std::size_t n, const Exponent& e, const GaussianRational& c) {
  Polynomial p(n);
  for (std::size_t k = n; k < kMaxVariables; ++k) {
    if (e[k] != 0) throw std::out_of_range("exponent uses a variable beyond n");
  }
  p.add_term(e, c);
  return p;
}

GaussianRational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? GaussianRational() : it->second;
}

void Polynomial::add_term(const Exponent& e, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

std::optional<unsigned> Polynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  return total_degree(terms_.rbegin()->first);
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  return total_degree(terms_.begin()->first) == total_degree(terms_.rbegin()->first);
}

Polynomial Polynomial::homogeneous_part(unsigned k) const {
  Polynomial out(n_);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) == k) out.terms_.emplace_hint(out.terms_.end(), e, c);
  }
  return out;
}

Polynomial Polynomial::truncated(unsigned max_degree) const {
  Polynomial out(n_);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) > max_degree) break;
    out.terms_.emplace_hint(out.terms_.end(), e, c);
  }
  return out;
}

bool Polynomial::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

void Polynomial::check_compatible(const Polynomial& o) const {
  if (n_ != o.n_) {
    throw std::invalid_argument("polynomials in " + std::to_string(n_) + " and " + std::to_string(o.n_) +
                                " variables");
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial multiply_truncated(const Polynomial& a, const Polynomial& b, unsigned max_degree) {
  if (a.variables() != b.variables()) throw std::invalid_argument("multiplying polynomials with different n");
  Polynomial out(a.variables());
  for (const auto& [ea, ca] : a.terms()) {
    const unsigned da = total_degree(ea);
    if (da > max_degree) break;
    for (const auto& [eb, cb] : b.terms()) {
      if (da + total_degree(eb) > max_degree) break;
      Exponent e;
      for (std::size_t k = 0; k < kMaxVariables; ++k) e[k] = static_cast<std::uint16_t>(ea[k] + eb[k]);
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  return multiply_truncated(a, b, std::numeric_limits<unsigned>::max());
}

Polynomial pow(const Polynomial& p, unsigned k) {
  Polynomial result = Polynomial::constant(p.variables(), 1);
  Polynomial base = p;
  while (k) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

Polynomial diff(const Polynomial& p, std::size_t i) {
  if (i >= p.variables()) {
    throw std::out_of_range("derivative index " + std::to_string(i + 1) + " outside 1.." +
                            std::to_string(p.variables()));
  }
  Polynomial out(p.variables());
  for (const auto& [e, c] : p.terms()) {
    if (e[i] == 0) continue;
    Exponent f = e;
    --f[i];
    out.add_term(f, c * GaussianRational(Rational(e[i])));
  }
  return out;
}

Polynomial derivative(const Polynomial& p, const Exponent& alpha) {
  const unsigned order = total_degree(alpha);
  Polynomial out(p.variables());
  if (order == 0) return p;
  for (std::size_t k = p.variables(); k < kMaxVariables; ++k) {
    if (alpha[k] != 0) throw std::out_of_range("derivative in a variable beyond n");
  }
  for (const auto& [e, c] : p.terms()) {
    Exponent f = e;
    BigInt factor = 1;
    bool vanishes = false;
    for (std::size_t k = 0; k < p.variables() && !vanishes; ++k) {
      if (alpha[k] > e[k]) {
        vanishes = true;
        break;
      }
      for (unsigned j = 0; j < alpha[k]; ++j) factor *= e[k] - j;
      f[k] = static_cast<std::uint16_t>(e[k] - alpha[k]);
    }
    if (!vanishes) out.add_term(f, c * GaussianRational(Rational(factor)));
  }
  return out;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t k = 0; k < p.variables(); ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(k + 1);
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    bool negative = false;
    std::string coef;
    if (c.is_real() || c.re == 0) {
      const Rational& part = c.is_real() ? c.re : c.im;
      negative = part < 0;
      const Rational mag = negative ? Rational(-part) : part;
      if (c.is_real()) {
        coef = (mag == 1 && !mono.empty()) ? "" : to_string(mag);
      } else {
        coef = mag == 1 ? "i" : to_string(mag) + "i";
      }
    } else {
      coef = to_string(c);
    }
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    out += coef;
    if (!coef.empty() && !mono.empty()) out += "*";
    out += mono;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Maps and matrices

PolyMap identity_map(std::size_t n) {
  PolyMap out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Polynomial::variable(n, i));
  return out;
}

PolyMap gradient(const Polynomial& p) {
  PolyMap out;
  for (std::size_t i = 0; i < p.variables(); ++i) out.push_back(diff(p, i));
  return out;
}

PolyMatrix hessian(const Polynomial& p) {
  const PolyMap g = gradient(p);
  PolyMatrix out(p.variables());
  for (std::size_t i = 0; i < p.variables(); ++i) {
    for (std::size_t j = 0; j < p.variables(); ++j) out[i].push_back(diff(g[i], j));
  }
  return out;
}

PolyMatrix jacobian(const PolyMap& f) {
  PolyMatrix out;
  for (const auto& fi : f) out.push_back(gradient(fi));
  return out;
}

namespace {

std::size_t square_size(const PolyMatrix& m) {
  for (const auto& row : m) {
    if (row.size() != m.size()) throw std::invalid_argument("matrix is not square");
  }
  return m.size();
}

}  // namespace

bool is_symmetric(const PolyMatrix& m) {
  const std::size_t n = square_size(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(m[i][j] == m[j][i])) return false;
    }
  }
  return true;
}

PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b) {
  const std::size_t n = square_size(a);
  if (square_size(b) != n) throw std::invalid_argument("matrix sizes differ");
  if (n == 0) return {};
  const std::size_t vars = a[0][0].variables();
  PolyMatrix out(n, std::vector<Polynomial>(n, Polynomial(vars)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return out;
}

bool is_zero(const PolyMatrix& m) {
  return std::all_of(m.begin(), m.end(), [](const auto& row) {
    return std::all_of(row.begin(), row.end(), [](const Polynomial& p) { return p.is_zero(); });
  });
}

PolyMatrix mat_pow(const PolyMatrix& m, unsigned r) {
  const std::size_t n = square_size(m);
  if (r == 0) {
    const std::size_t vars = n ? m[0][0].variables() : 0;
    PolyMatrix id(n, std::vector<Polynomial>(n, Polynomial(vars)));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = Polynomial::constant(vars, 1);
    return id;
  }
  PolyMatrix out = m;
  for (unsigned k = 1; k < r && !is_zero(out); ++k) out = mat_mul(out, m);
  return out;
}

bool mat_nilpotent(const PolyMatrix& m, unsigned r) { return is_zero(mat_pow(m, r)); }

Polynomial dot(const PolyMap& f, const PolyMap& g) {
  if (f.size() != g.size()) {
    throw std::invalid_argument("dot product of maps with " + std::to_string(f.size()) + " and " +
                                std::to_string(g.size()) + " components");
  }
  if (f.empty()) return Polynomial(0);
  Polynomial out(f[0].variables());
  for (std::size_t i = 0; i < f.size(); ++i) out += f[i] * g[i];
  return out;
}

PolyMap compose(const PolyMap& f, const PolyMap& g, unsigned trunc) {
  const std::size_t n = g.size();
  for (const auto& fi : f) {
    if (fi.variables() != n) throw std::invalid_argument("compose: f is not a map in " + std::to_string(n) + " variables");
  }
  const std::size_t vars = n ? g[0].variables() : 0;
  // powers[j][k] = g_j^k truncated; built lazily.
  std::vector<std::vector<Polynomial>> powers(n);
  auto power = [&](std::size_t j, unsigned k) -> const Polynomial& {
    auto& list = powers[j];
    if (list.empty()) list.push_back(Polynomial::constant(vars, 1));
    while (list.size() <= k) list.push_back(multiply_truncated(list.back(), g[j], trunc));
    return list[k];
  };
  PolyMap out;
  for (const auto& fi : f) {
    Polynomial acc(vars);
    for (const auto& [e, c] : fi.terms()) {
      Polynomial term = Polynomial::constant(vars, c);
      for (std::size_t j = 0; j < n && !term.is_zero(); ++j) {
        if (e[j]) term = multiply_truncated(term, power(j, e[j]), trunc);
      }
      acc += term;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

PolyMap operator+(const PolyMap& a, const PolyMap& b) {
  if (a.size() != b.size()) throw std::invalid_argument("adding maps of different length");
  PolyMap out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

PolyMap operator-(const PolyMap& a, const PolyMap& b) {
  if (a.size() != b.size()) throw std::invalid_argument("subtracting maps of different length");
  PolyMap out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

std::optional<unsigned> degree(const PolyMap& f) {
  std::optional<unsigned> out;
  for (const auto& fi : f) {
    if (auto d = fi.degree(); d && (!out || *d > *out)) out = d;
  }
  return out;
}

std::string to_string(const PolyMap& f) {
  std::string out;
  for (const auto& fi : f) out += to_string(fi) + "\n";
  return out;
}

std::string to_string(const PolyMatrix& m) {
  std::string out;
  for (const auto& row : m) {
    out += "[";
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? ", " : "") + to_string(row[j]);
    out += "]\n";
  }
  return out;
}

}  // namespace gltrees
