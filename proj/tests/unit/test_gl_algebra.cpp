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

#include "gltrees/gl_algebra.hpp"
#include "oracles.hpp"

using namespace gltrees;

namespace {

std::vector<RootedTree> rooted_range(std::size_t lo, std::size_t hi) {
  std::vector<RootedTree> out;
  for (std::size_t m = lo; m <= hi; ++m) {
    for (const auto& t : enumerate_rooted(m)) out.push_back(t);
  }
  return out;
}

template <class V>
Rational mass(const V& v) {
  Rational s = 0;
  for (const auto& [t, c] : v) s += c;
  return s;
}

}  // namespace

TEST_CASE("2-chain acting on the 3-chain gives 2 T1 + T2") {
  const TreeVector v = gl_act(rooted_chain(2), chain(3));
  CHECK(v.size() == 2);
  CHECK(v.coefficient(chain(4)) == 2);
  CHECK(v.coefficient(star(3)) == 1);
  CHECK(to_string(v) == "1 * (()()())\n2 * (())(())\n");
}

TEST_CASE("singleton is the identity") {
  for (const auto& t : rooted_range(1, 5)) {
    CHECK(gl_product(RootedTree(), t) == RootedVector(t));
    CHECK(gl_product(t, RootedTree()) == RootedVector(t));
  }
  for (std::size_t m = 1; m <= 5; ++m) {
    for (const auto& t : enumerate_free(m)) CHECK(gl_act(RootedTree(), t) == TreeVector(t));
  }
}

TEST_CASE("small products by hand") {
  // B+(.) . B+(.) = B+(.,.) + B+(B+(.))
  const RootedVector p = gl_product(rooted_chain(2), rooted_chain(2));
  CHECK(p.coefficient(rooted_star(2)) == 1);
  CHECK(p.coefficient(rooted_chain(3)) == 1);
  CHECK(p.size() == 2);
  // 2-chain on a single vertex of a free tree.
  CHECK(gl_act(rooted_chain(2), chain(1)) == TreeVector(chain(2)));
  CHECK(gl_act(rooted_chain(2), chain(2)) == Rational(2) * TreeVector(chain(3)));
}

TEST_CASE("grouped grafting agrees with the ordered-tuple sum") {
  const auto rooted = rooted_range(1, 5);
  for (const auto& s : rooted) {
    for (const auto& t : rooted_range(1, 4)) {
      CAPTURE(s.code());
      CAPTURE(t.code());
      CHECK(gl_product(s, t) == oracle::gl_product_by_tuples(s, t));
    }
    for (std::size_t m = 1; m <= 5; ++m) {
      for (const auto& t : enumerate_free(m)) {
        CAPTURE(s.code());
        CAPTURE(t.code());
        CHECK(gl_act(s, t) == oracle::gl_act_by_tuples(s, t));
      }
    }
  }
}

TEST_CASE("associativity and module axiom") {
  const auto rooted = rooted_range(1, 4);
  for (const auto& a : rooted) {
    for (const auto& b : rooted) {
      const RootedVector ab = gl_product(RootedVector(a), RootedVector(b));
      for (const auto& c : rooted_range(1, 3)) {
        CHECK(gl_product(ab, RootedVector(c)) == gl_product(RootedVector(a), gl_product(RootedVector(b), RootedVector(c))));
      }
      for (std::size_t m = 1; m <= 4; ++m) {
        for (const auto& t : enumerate_free(m)) {
          CHECK(gl_act(ab, TreeVector(t)) == gl_act(RootedVector(a), gl_act(RootedVector(b), TreeVector(t))));
        }
      }
    }
  }
}

TEST_CASE("grading, integrality and total mass") {
  for (const auto& s : rooted_range(1, 6)) {
    for (const auto& t : rooted_range(1, 5)) {
      const RootedVector p = gl_product(s, t);
      // Every ordered target tuple contributes once: mass = |T|^(branches of S).
      BigInt expected;
      mpz_ui_pow_ui(expected.get_mpz_t(), t.vertex_count(), s.root_degree());
      CHECK(mass(p) == Rational(expected));
      for (const auto& [u, c] : p) {
        CHECK(u.vertex_count() == s.vertex_count() + t.vertex_count() - 1);
        CHECK(c.get_den() == 1);
        CHECK(c > 0);
      }
    }
  }
}

TEST_CASE("degree cap drops exactly the summands with a vertex of degree > cap") {
  for (const auto& s : rooted_range(1, 5)) {
    for (std::size_t m = 1; m <= 5; ++m) {
      for (const auto& t : enumerate_free(m)) {
        const TreeVector full = gl_act(s, t);
        for (std::size_t cap = 1; cap <= 4; ++cap) {
          TreeVector expected;
          for (const auto& [u, c] : full) {
            if (max_degree(u) <= cap) expected.add(u, c);
          }
          CHECK(gl_act(s, t, cap) == expected);
        }
      }
    }
  }
}

TEST_CASE("graft validates arguments") {
  const std::vector<RootedTree> one{rooted_chain(1)};
  const std::vector<int> two{0, 0};
  const std::vector<int> bad{5};
  CHECK_THROWS_AS(graft(one, two, chain(3)), std::invalid_argument);
  CHECK_THROWS_AS(graft(one, bad, chain(3)), std::out_of_range);
  const std::vector<int> mid{0};
  CHECK(graft(one, mid, chain(3)) == star(3));
  CHECK(graft(one, mid, rooted_chain(2)) == rooted_star(2));
}

TEST_CASE("linear combinations") {
  TreeVector v;
  v.add(chain(3), Rational(2));
  v.add(chain(3), Rational(-2));
  CHECK(v.empty());
  CHECK(to_string(v) == "0\n");
  TreeVector w = TreeVector(chain(2)) + TreeVector(chain(3));
  w -= TreeVector(chain(2));
  CHECK(w == TreeVector(chain(3)));
  CHECK(del_root(rooted_star(3)).at(RootedTree()) == 3);
}
