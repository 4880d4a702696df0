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

#include "selftest.hpp"

#include <chrono>
#include <ostream>
#include <random>
#include <sstream>

#include "gltrees/gl_algebra.hpp"
#include "gltrees/inverse.hpp"
#include "gltrees/poly.hpp"
#include "gltrees/quotient.hpp"
#include "gltrees/trees.hpp"

namespace gltrees::cli {

namespace {

CheckResult pass() { return {true, {}}; }

template <class A, class B>
CheckResult expect_eq(const A& actual, const B& expected, const std::string& what) {
  if (actual == expected) return pass();
  std::ostringstream s;
  s << what << ": expected " << expected << ", got " << actual;
  return {false, s.str()};
}

CheckResult expect(bool ok, const std::string& what) { return ok ? pass() : CheckResult{false, what}; }

// Free and rooted tree counts from the Otter/Polya recurrences.
std::vector<BigInt> rooted_counts(std::size_t up_to) {
  std::vector<BigInt> r(up_to + 1, 0);
  if (up_to >= 1) r[1] = 1;
  for (std::size_t n = 1; n < up_to; ++n) {
    BigInt s = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      BigInt inner = 0;
      for (std::size_t d = 1; d <= k; ++d) {
        if (k % d == 0) inner += BigInt(static_cast<unsigned long>(d)) * r[d];
      }
      s += inner * r[n - k + 1];
    }
    r[n + 1] = s / static_cast<unsigned long>(n);
  }
  return r;
}

std::vector<BigInt> free_counts(std::size_t up_to) {
  const auto r = rooted_counts(up_to);
  std::vector<BigInt> t(up_to + 1, 0);
  for (std::size_t n = 1; n <= up_to; ++n) {
    BigInt pairs = 0;
    for (std::size_t k = 1; k < n; ++k) pairs += r[k] * r[n - k];
    // Otter: t_n = r_n - (sum_k r_k r_{n-k} - [n even] r_{n/2}) / 2.
    if (n % 2 == 0) pairs -= r[n / 2];
    t[n] = r[n] - pairs / 2;
  }
  return t;
}

Polynomial random_cubic(std::mt19937_64& rng, std::size_t n = 3) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  Polynomial p(n);
  do {
    p = Polynomial(n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        for (std::size_t c = b; c < n; ++c) {
          Exponent e{};
          ++e[a];
          ++e[b];
          ++e[c];
          p.add_term(e, GaussianRational(make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng))));
        }
      }
    }
  } while (p.is_zero());
  return p;
}

Polynomial random_poly(std::mt19937_64& rng, std::size_t n, unsigned max_degree, int terms) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3), deg(0, static_cast<int>(max_degree));
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  Polynomial p(n);
  for (int k = 0; k < terms; ++k) {
    Exponent e{};
    const int d = deg(rng);
    for (int j = 0; j < d; ++j) ++e[var(rng)];
    p.add_term(e, GaussianRational(make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng))));
  }
  return p;
}

std::vector<RootedTree> rooted_up_to(std::size_t m) {
  std::vector<RootedTree> out;
  for (std::size_t k = 1; k <= m; ++k) {
    for (const auto& t : enumerate_rooted(k)) out.push_back(t);
  }
  return out;
}

std::vector<FreeTree> free_up_to(std::size_t m) {
  std::vector<FreeTree> out;
  for (std::size_t k = 1; k <= m; ++k) {
    for (const auto& t : enumerate_free(k)) out.push_back(t);
  }
  return out;
}

CheckResult quotient_dims(int r, std::optional<int> e, const std::vector<std::pair<std::size_t, std::size_t>>& expected,
                          unsigned threads, std::size_t nu_degree = 0) {
  QuotientOptions opt;
  opt.threads = threads;
  SubmoduleTower tower(r, e, opt);
  for (const auto& [m, dim] : expected) {
    const QuotientReport rep = tower.report(m, m == nu_degree);
    if (rep.dim_quotient != dim) {
      return {false, "(r=" + std::to_string(r) + ", e=" + format_e(e) + ") m=" + std::to_string(m) + ": expected dim " +
                         std::to_string(dim) + ", got " + std::to_string(rep.dim_quotient)};
    }
    if (m == nu_degree && !rep.nu_in_submodule.value_or(false)) {
      return {false, "nu_" + std::to_string(m) + " is not in N(r,e)"};
    }
  }
  return pass();
}

Polynomial witness() { return parse_poly("(x1 + i*x2)^2 * x3", 3); }

// ---------------------------------------------------------------------------

CheckResult check_small_counts() {
  const std::vector<std::size_t> free_expected{1, 1, 1, 2, 3, 6, 11};
  const std::vector<std::size_t> rooted_expected{1, 1, 2, 4, 9, 20, 48};
  for (std::size_t m = 1; m <= 7; ++m) {
    if (enumerate_free(m).size() != free_expected[m - 1] || enumerate_rooted(m).size() != rooted_expected[m - 1]) {
      return {false, "tree counts differ at m=" + std::to_string(m)};
    }
  }
  return pass();
}

CheckResult check_cayley() {
  for (std::size_t m = 1; m <= 7; ++m) {
    BigInt fact = 1;
    for (std::size_t k = 2; k <= m; ++k) fact *= static_cast<unsigned long>(k);
    Rational free_sum = 0, rooted_sum = 0;
    for (const auto& t : enumerate_free(m)) free_sum += Rational(fact) / Rational(BigInt(std::to_string(aut_order(t))));
    for (const auto& t : enumerate_rooted(m)) {
      rooted_sum += Rational(fact) / Rational(BigInt(std::to_string(aut_order(t))));
    }
    BigInt mm = 1, mm1 = 1;
    for (std::size_t k = 0; k + 2 < m; ++k) mm *= static_cast<unsigned long>(m);
    for (std::size_t k = 0; k + 1 < m; ++k) mm1 *= static_cast<unsigned long>(m);
    if (free_sum != Rational(mm) || rooted_sum != Rational(mm1)) {
      return {false, "labelled-tree count mismatch at m=" + std::to_string(m)};
    }
  }
  return pass();
}

CheckResult check_round_trip() {
  for (const auto& t : free_up_to(7)) {
    if (!(parse_free(t.code()) == t) || !(canonical_free(view_of(t)) == t)) return {false, "round trip failed for " + t.code()};
  }
  for (const auto& t : rooted_up_to(7)) {
    if (!(parse_rooted(t.code()) == t) || !(canonical_rooted(view_of(t), 0) == t)) {
      return {false, "round trip failed for " + t.code()};
    }
  }
  return pass();
}

CheckResult check_gl_example() {
  TreeVector expected;
  expected.add(chain(4), Rational(2));
  expected.add(star(3), Rational(1));
  return expect(gl_act(rooted_chain(2), chain(3)) == expected, "S.T != 2 T1 + T2 for S = rooted 2-chain, T = 3-chain");
}

CheckResult check_associativity() {
  const auto trees = rooted_up_to(3);
  for (const auto& a : trees) {
    for (const auto& b : trees) {
      for (const auto& c : trees) {
        const RootedVector lhs = gl_product(gl_product(RootedVector(a), RootedVector(b)), RootedVector(c));
        const RootedVector rhs = gl_product(RootedVector(a), gl_product(RootedVector(b), RootedVector(c)));
        if (!(lhs == rhs)) return {false, "GL product not associative on " + a.code() + ", " + b.code() + ", " + c.code()};
      }
    }
  }
  return pass();
}

CheckResult check_free_counts_published() {
  const std::vector<std::size_t> expected{1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235};
  for (std::size_t m = 1; m <= 11; ++m) {
    if (auto r = expect_eq(enumerate_free(m).size(), expected[m - 1], "t_" + std::to_string(m)); !r.passed) return r;
  }
  const auto oracle = free_counts(13);
  for (std::size_t m = 12; m <= 13; ++m) {
    if (BigInt(static_cast<unsigned long>(enumerate_free(m).size())) != oracle[m]) {
      return {false, "t_" + std::to_string(m) + " disagrees with the counting recurrence"};
    }
  }
  return pass();
}

CheckResult check_witness_nilpotency() {
  const PolyMatrix h = hessian(witness());
  if (!mat_nilpotent(h, 3)) return {false, "Hess^3 != 0"};
  if (mat_nilpotent(h, 2)) return {false, "Hess^2 = 0"};
  return pass();
}

CheckResult check_gap_inversion() {
  const Polynomial p = witness();
  const auto g = gap_invert(p, 2);
  if (!g) return {false, "gap_invert(M=2) returned none"};
  const PolyMap f = special_map(p);
  if (!verify_inverse(f, *g, 25)) return {false, "F o G != X"};
  PolyMap expected = identity_map(3) + gradient(p) + gradient(gap_inversion(p, 2).q[1]);
  if (!(expected == *g)) return {false, "G != X + N^(1) + N^(2)"};
  const auto d = degree(*g);
  if (!d || *d > 5) return {false, "inverse degree exceeds 5"};
  return pass();
}

CheckResult check_oracles() {
  std::mt19937_64 rng(20261014);
  for (int k = 0; k < 5; ++k) {
    const Polynomial p = random_cubic(rng);
    const InverseSeries tree = q_series_tree(p, 6);
    const InverseSeries zhao = q_series_zhao(p, 6);
    for (std::size_t m = 0; m < 6; ++m) {
      if (!(tree.q[m] == zhao.q[m])) return {false, "tree and recursion differ at Q^(" + std::to_string(m + 1) + ")"};
    }
    const auto bcw = n_series_bcw(gradient(p), 5);
    for (std::size_t m = 0; m < 5; ++m) {
      if (!(bcw[m] == zhao.n[m])) return {false, "grad Q != N at m=" + std::to_string(m + 1)};
    }
  }
  return pass();
}

CheckResult check_operator_calculus() {
  std::mt19937_64 rng(314159);
  const Polynomial p = random_cubic(rng);
  const Polynomial q = random_poly(rng, 3, 5, 8);
  const auto rooted = rooted_up_to(4);
  for (const auto& s : rooted) {
    const DiffOperator ds = dop_tree(s, p);
    for (const auto& t : rooted) {
      const Polynomial lhs = apply_dop(dop_tree(gl_product(s, t), p), q);
      const Polynomial rhs = apply_dop(ds, apply_dop(dop_tree(t, p), q));
      if (!(lhs == rhs)) return {false, "dop not multiplicative on " + s.code() + ", " + t.code()};
    }
    for (const auto& t : free_up_to(4)) {
      if (!(q_tree(gl_act(s, t), p) == apply_dop(ds, q_tree(t, p)))) {
        return {false, "module square fails on " + s.code() + ", " + t.code()};
      }
    }
  }
  const Polynomial w = witness();
  const Polynomial identity = GaussianRational(2) * q_tree(chain(4), w) + q_tree(star(3), w);
  return expect(identity.is_zero(), "2 Q_{T1,P} + Q_{T2,P} != 0 for the witness");
}

}  // namespace

std::vector<Check> selftest_checks(SelftestLevel level, unsigned threads) {
  using L = SelftestLevel;
  std::vector<Check> all = {
      {"tree counts through 7 vertices", L::quick, check_small_counts},
      {"labelled tree sums (Cayley)", L::quick, check_cayley},
      {"canonical code round trip", L::quick, check_round_trip},
      {"GL action 2-chain on 3-chain", L::quick, check_gl_example},
      {"GL product associativity", L::quick, check_associativity},
      {"witness Hessian nilpotency", L::quick, check_witness_nilpotency},
      {"(3,inf) quotient through m=6", L::quick,
       [threads] { return quotient_dims(3, std::nullopt, {{1, 1}, {2, 1}, {3, 0}, {4, 0}, {5, 0}, {6, 0}}, threads); }},
      {"free tree counts t1..t13", L::paper, check_free_counts_published},
      {"(3,inf) quotient through m=10", L::paper,
       [threads] {
         std::vector<std::pair<std::size_t, std::size_t>> dims{{1, 1}, {2, 1}};
         for (std::size_t m = 3; m <= 10; ++m) dims.emplace_back(m, 0);
         return quotient_dims(3, std::nullopt, dims, threads);
       }},
      {"(4,3) quotient for m=5..8", L::paper,
       [threads] { return quotient_dims(4, 3, {{5, 0}, {6, 0}, {7, 0}, {8, 0}}, threads); }},
      {"(4,4) quotient for m=8..12", L::paper,
       [threads] { return quotient_dims(4, 4, {{8, 0}, {9, 0}, {10, 0}, {11, 0}, {12, 0}}, threads); }},
      {"gap inversion of the witness", L::paper, check_gap_inversion},
      {"tree formula vs recursion vs BCW", L::paper, check_oracles},
      {"operator calculus", L::paper, check_operator_calculus},
      {"(4,4) quotient for m=13,14 and nu_13", L::extended,
       [threads] { return quotient_dims(4, 4, {{13, 1}, {14, 0}}, threads, 13); }},
      {"(3,inf) nu window 6..10", L::extended,
       [threads] {
         QuotientOptions opt;
         opt.threads = threads;
         const WindowReport w = gap_window_check(3, std::nullopt, 5, opt);
         return expect(w.complete && w.verdict, "nu_m not in N(3,inf) for some m in 6..10");
       }},
  };
  std::vector<Check> out;
  for (auto& c : all) {
    if (static_cast<int>(c.level) <= static_cast<int>(level)) out.push_back(std::move(c));
  }
  return out;
}

std::size_t run_selftest(SelftestLevel level, unsigned threads, std::ostream& out) {
  std::size_t failures = 0;
  for (const auto& check : selftest_checks(level, threads)) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = check.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream secs;
    secs.precision(2);
    secs << std::fixed << s;
    out << (r.passed ? "PASS  " : "FAIL  ") << check.name << " (" << secs.str() << "s)\n";
    if (!r.passed) {
      out << "      " << r.detail << "\n";
      ++failures;
    }
  }
  out << (failures ? std::to_string(failures) + " check(s) failed\n" : "all checks passed\n");
  return failures;
}

}  // namespace gltrees::cli
