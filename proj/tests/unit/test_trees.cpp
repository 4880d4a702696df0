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

#include <set>

#include "gltrees/errors.hpp"
#include "gltrees/trees.hpp"
#include "oracles.hpp"

using namespace gltrees;

TEST_CASE("rooted codes sort children non-increasingly") {
  CHECK(parse_rooted("((())())").code() == "(()(()))");
  CHECK(parse_rooted("()").is_singleton());
  CHECK(rooted_chain(3).code() == "((()))");
  CHECK(rooted_star(2).code() == "(()())");
  CHECK(rooted_star(2).root_degree() == 2);
  CHECK(RootedTree::from_children({rooted_chain(2), rooted_chain(1)}).code() == "(()(()))");
}

TEST_CASE("free codes") {
  CHECK(chain(1).code() == "()");
  CHECK(chain(2).code() == "()()");
  CHECK(chain(2).bicentral());
  CHECK(chain(3).code() == "(()())");
  CHECK(chain(4).code() == "(())(())");
  CHECK(star(3).code() == "(()()())");
  CHECK_FALSE(star(3).bicentral());
  const auto [a, b] = chain(4).halves();
  CHECK(a == rooted_chain(2));
  CHECK(b == rooted_chain(2));
  CHECK(star(3).centered() == rooted_star(3));
}

TEST_CASE("free trees parse from any rooting and from edge lists") {
  CHECK(parse_free("((()))") == chain(3));
  CHECK(parse_free("(((())))") == chain(4));
  CHECK(parse_free("1-2,2-3,3-4") == chain(4));
  CHECK(parse_free("1-2, 1-3, 1-4") == star(3));
  CHECK(parse_free("2-1") == chain(2));
}

TEST_CASE("malformed tree input") {
  CHECK_THROWS_AS(parse_rooted(""), ParseError);
  CHECK_THROWS_AS(parse_rooted("(()"), ParseError);
  CHECK_THROWS_AS(parse_rooted("())"), ParseError);
  CHECK_THROWS_AS(parse_rooted("(a)"), ParseError);
  CHECK_THROWS_AS(parse_rooted("()()"), ParseError);
  CHECK_THROWS_AS(parse_free("()()()"), ParseError);
  CHECK_THROWS_AS(parse_free("1-1"), ParseError);
  CHECK_THROWS_AS(parse_free("1-2,1-2"), ParseError);
  CHECK_THROWS(parse_free("1-2,3-4"));
  CHECK_THROWS(parse_free("1-2,2-3,3-1"));
  try {
    parse_rooted("(()x)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
  }
}

TEST_CASE("tree counts match Otter's recurrence through 14 vertices") {
  const auto free = oracle::free_tree_counts(14);
  const auto rooted = oracle::rooted_tree_counts(14);
  for (std::size_t m = 1; m <= 14; ++m) {
    CAPTURE(m);
    CHECK(BigInt(static_cast<unsigned long>(enumerate_free(m).size())) == free[m]);
    if (m <= 12) CHECK(BigInt(static_cast<unsigned long>(enumerate_rooted(m).size())) == rooted[m]);
  }
}

TEST_CASE("enumeration is sorted, duplicate-free and guarded") {
  for (std::size_t m = 1; m <= 10; ++m) {
    const auto& f = enumerate_free(m);
    CHECK(std::is_sorted(f.begin(), f.end()));
    CHECK(std::set<FreeTree>(f.begin(), f.end()).size() == f.size());
    for (const auto& t : f) CHECK(t.vertex_count() == m);
  }
  CHECK_THROWS_AS(enumerate_free(17), ResourceLimitError);
  CHECK_THROWS_AS(enumerate_rooted(20, 16), ResourceLimitError);
  CHECK_THROWS_AS(enumerate_free(0), std::invalid_argument);
}

TEST_CASE("labelled counts: sum m!/|Aut| gives Cayley's formulas") {
  for (std::size_t m = 1; m <= 9; ++m) {
    BigInt fact = 1;
    for (std::size_t k = 2; k <= m; ++k) fact *= static_cast<unsigned long>(k);
    Rational free_sum = 0, rooted_sum = 0;
    for (const auto& t : enumerate_free(m)) free_sum += Rational(fact) / Rational(BigInt(std::to_string(aut_order(t))));
    for (const auto& t : enumerate_rooted(m)) rooted_sum += Rational(fact) / Rational(BigInt(std::to_string(aut_order(t))));
    BigInt m_pow;
    mpz_ui_pow_ui(m_pow.get_mpz_t(), m, m - 1);
    CHECK(rooted_sum == Rational(m_pow));
    if (m >= 2) {
      mpz_ui_pow_ui(m_pow.get_mpz_t(), m, m - 2);
      CHECK(free_sum == Rational(m_pow));
    }
  }
}

TEST_CASE("automorphism orders agree with brute-force permutation counts") {
  for (std::size_t m = 1; m <= 7; ++m) {
    for (const auto& t : enumerate_free(m)) {
      CAPTURE(t.code());
      CHECK(aut_order(t) == oracle::automorphisms_by_permutation(view_of(t)));
    }
    for (const auto& t : enumerate_rooted(m)) {
      CAPTURE(t.code());
      CHECK(aut_order(t) == oracle::automorphisms_by_permutation(view_of(t)));
    }
  }
  CHECK(aut_order(chain(2)) == 2);
  CHECK(aut_order(chain(4)) == 2);
  CHECK(aut_order(star(3)) == 6);
  CHECK(aut_order(rooted_star(3)) == 6);
}

TEST_CASE("rooting relation: sum over rootings equals vertex count") {
  for (std::size_t m = 1; m <= 8; ++m) {
    for (const auto& t : enumerate_free(m)) {
      std::size_t total = 0;
      for (const auto& s : enumerate_rooted(m)) total += count_rootings_isomorphic(t, s);
      CHECK(total == m);
      // Orbit-stabilizer: the rootings isomorphic to S form one Aut(T) orbit.
      for (int w = 0; w < static_cast<int>(m); ++w) {
        const RootedTree s = root_at(t, w);
        CHECK(forget_root(s) == t);
        CHECK(count_rootings_isomorphic(t, s) * aut_order(s) == aut_order(t));
      }
    }
  }
}

TEST_CASE("canonical forms are invariant under relabeling") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 12;
    LabeledTreeView v = oracle::random_labeled_tree(rng, n);
    const FreeTree t = canonical_free(v);
    CHECK(canonical_free(oracle::relabel(rng, v)) == t);
    CHECK(parse_free(t.code()) == t);
    CHECK(canonical_free(view_of(t)) == t);
    const int root = static_cast<int>(rng() % n);
    const RootedTree r = canonical_rooted(v, root);
    CHECK(parse_rooted(r.code()) == r);
    CHECK(canonical_rooted(view_of(r), 0) == r);
    CHECK(forget_root(r) == t);
  }
}

TEST_CASE("round trip for every tree up to 12 vertices") {
  for (std::size_t m = 1; m <= 12; ++m) {
    for (const auto& t : enumerate_free(m)) {
      REQUIRE(parse_free(t.code()) == t);
      REQUIRE(canonical_free(view_of(t)) == t);
    }
  }
}

TEST_CASE("naked chains") {
  CHECK(has_naked_chain(chain(3), 3));
  CHECK_FALSE(has_naked_chain(chain(2), 3));
  CHECK_FALSE(has_naked_chain(star(3), 3));
  CHECK_FALSE(has_naked_chain(star(3), 2));
  CHECK(has_naked_chain(star(2), 2));
  CHECK(has_naked_chain(chain(5), 4));
  CHECK_THROWS_AS(has_naked_chain(chain(3), 1), std::invalid_argument);
  for (std::size_t m = 1; m <= 9; ++m) {
    for (const auto& t : enumerate_free(m)) {
      for (int r = 2; r <= 5; ++r) {
        CAPTURE(t.code());
        CAPTURE(r);
        CHECK(has_naked_chain(t, r) == oracle::naked_chain_by_paths(view_of(t), r));
      }
    }
  }
}

TEST_CASE("max degree") {
  CHECK(max_degree(chain(1)) == 0);
  CHECK(max_degree(chain(2)) == 1);
  CHECK(max_degree(star(5)) == 5);
}
