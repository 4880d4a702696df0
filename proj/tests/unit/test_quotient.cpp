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
#include "gltrees/quotient.hpp"
#include "oracles.hpp"

using namespace gltrees;

namespace {

std::size_t brute_force_chain_count(int r, std::size_t m) {
  std::size_t n = 0;
  for (const auto& t : enumerate_free(m)) n += oracle::naked_chain_by_paths(view_of(t), r) ? 1 : 0;
  return n;
}

// Rank of N(r,e)_m from the explicit full-mode spanning set, by dense
// elimination in the free-tree basis.
std::size_t rank_from_spanning_set(int r, std::optional<int> e, std::size_t m) {
  const auto& basis = enumerate_free(m);
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < basis.size(); ++i) column[basis[i].code()] = i;
  std::vector<std::vector<Rational>> dense;
  for (const auto& sv : spanning_set(r, e, m)) {
    std::vector<Rational> row(basis.size(), 0);
    for (const auto& [t, c] : sv.vector) row[column.at(t.code())] = c;
    dense.push_back(std::move(row));
  }
  return oracle::dense_rank(std::move(dense));
}

Rational pair(const std::map<std::string, Rational>& y, const TreeVector& v) {
  Rational s = 0;
  for (const auto& [t, c] : v) {
    auto it = y.find(t.code());
    if (it != y.end()) s += it->second * c;
  }
  return s;
}

}  // namespace

TEST_CASE("chain generators and high-degree trees match their definitions") {
  for (std::size_t m = 1; m <= 10; ++m) {
    for (int r = 2; r <= 5; ++r) {
      const auto g = chain_generators(r, m);
      CHECK(g.size() == brute_force_chain_count(r, m));
      for (const auto& t : g) CHECK(has_naked_chain(t, r));
    }
    for (int e = 1; e <= 4; ++e) {
      std::size_t expected = 0;
      for (const auto& t : enumerate_free(m)) expected += max_degree(t) >= static_cast<std::size_t>(e) + 1 ? 1 : 0;
      CHECK(high_degree_trees(e, m).size() == expected);
    }
    CHECK(high_degree_trees(std::nullopt, m).empty());
  }
  CHECK_THROWS_AS(chain_generators(1, 4), std::invalid_argument);
  CHECK_THROWS_AS(high_degree_trees(0, 4), std::invalid_argument);
}

TEST_CASE("tower rank equals the rank of the explicit spanning set") {
  const std::vector<std::pair<int, std::optional<int>>> cases{{2, std::nullopt}, {3, std::nullopt}, {3, 2},
                                                              {4, 3},            {4, 4},            {5, std::nullopt}};
  for (const auto& [r, e] : cases) {
    SubmoduleTower tower(r, e);
    for (std::size_t m = 1; m <= 7; ++m) {
      CAPTURE(r);
      CAPTURE(m);
      CHECK(tower.report(m).rank == rank_from_spanning_set(r, e, m));
    }
  }
}

TEST_CASE("single-branch and full spanning give the same ranks") {
  QuotientOptions full;
  full.mode = SpanningMode::full;
  QuotientOptions single;
  single.validate_small_degrees = false;
  for (int r = 2; r <= 5; ++r) {
    for (std::optional<int> e : {std::optional<int>(), std::optional<int>(3), std::optional<int>(4)}) {
      SubmoduleTower a(r, e, full), b(r, e, single);
      for (std::size_t m = 1; m <= 8; ++m) {
        CAPTURE(r);
        CAPTURE(m);
        CHECK(a.report(m).rank == b.report(m).rank);
      }
    }
  }
  SubmoduleTower a(4, 4, full), b(4, 4, single);
  for (std::size_t m = 9; m <= 10; ++m) CHECK(a.report(m).rank == b.report(m).rank);
}

TEST_CASE("annihilators vanish on every spanning vector and detect the quotient") {
  for (const auto& [r, e] : std::vector<std::pair<int, std::optional<int>>>{{3, std::nullopt}, {4, 4}, {5, std::nullopt}}) {
    SubmoduleTower tower(r, e);
    for (std::size_t m = 1; m <= 7; ++m) {
      const QuotientReport rep = tower.report(m);
      CHECK(rep.annihilators.size() == rep.dim_quotient);
      for (const auto& sv : spanning_set(r, e, m)) {
        for (const auto& y : rep.annihilators) CHECK(pair(y, sv.vector) == 0);
        CHECK(tower.contains(sv.vector, m));
      }
      for (const auto& t : enumerate_free(m)) {
        bool killed = true;
        for (const auto& y : rep.annihilators) killed = killed && pair(y, TreeVector(t)) == 0;
        CHECK(tower.contains(TreeVector(t), m) == killed);
      }
    }
  }
}

TEST_CASE("small quotient dimensions") {
  SubmoduleTower t3(3, std::nullopt);
  CHECK(t3.report(1).dim_quotient == 1);
  CHECK(t3.report(2).dim_quotient == 1);
  for (std::size_t m = 3; m <= 8; ++m) CHECK(t3.report(m).dim_quotient == 0);
  // A 2-chain is an edge, so every tree with at least two vertices is a generator.
  SubmoduleTower t2(2, std::nullopt);
  CHECK(t2.report(1).dim_quotient == 1);
  for (std::size_t m = 2; m <= 7; ++m) CHECK(t2.report(m).dim_quotient == 0);
  // e = 1 keeps only the single vertex and the edge.
  SubmoduleTower t1(10, 1);
  CHECK(t1.report(2).dim_quotient == 1);
  for (std::size_t m = 3; m <= 7; ++m) CHECK(t1.report(m).dim_quotient == 0);
}

TEST_CASE("nu") {
  for (std::size_t m = 1; m <= 8; ++m) {
    const TreeVector v = nu(m);
    CHECK(v.size() == enumerate_free(m).size());
    for (const auto& [t, c] : v) CHECK(c * Rational(BigInt(std::to_string(aut_order(t)))) == 1);
  }
  CHECK(nu_in_submodule({3, std::nullopt, 4}));
  CHECK_FALSE(nu_in_submodule({3, std::nullopt, 2}));
  const QuotientReport rep = SubmoduleTower(4, 3).report(6, true);
  REQUIRE(rep.nu_in_submodule.has_value());
  CHECK(*rep.nu_in_submodule);
}

TEST_CASE("gap window") {
  const WindowReport w = gap_window_check(3, std::nullopt, 3);
  CHECK(w.complete);
  CHECK(w.verdict);
  REQUIRE(w.degrees.size() == 3);
  CHECK(w.degrees.front().params.m == 4);
  QuotientOptions tight;
  tight.max_degree = 5;
  const WindowReport partial = gap_window_check(3, std::nullopt, 3, tight);
  CHECK_FALSE(partial.complete);
  CHECK_FALSE(partial.verdict);
  CHECK(partial.degrees.size() == 2);
  CHECK_FALSE(partial.stopped_reason.empty());
  CHECK_THROWS_AS(gap_window_check(3, std::nullopt, 0), std::invalid_argument);
}

TEST_CASE("resource guards") {
  CHECK_THROWS_AS(graded_rank({3, std::nullopt, 16}), ResourceLimitError);
  QuotientOptions few_rows;
  few_rows.max_rows = 3;
  CHECK_THROWS_AS(graded_rank({3, std::nullopt, 7}, few_rows), ResourceLimitError);
  few_rows.allow_large = true;
  CHECK(graded_rank({3, std::nullopt, 7}, few_rows).dim_quotient == 0);
  CHECK_THROWS_AS(graded_rank({1, std::nullopt, 4}), std::invalid_argument);
  CHECK_THROWS_AS(graded_rank({3, 0, 4}), std::invalid_argument);
  CHECK_THROWS_AS(graded_rank({3, std::nullopt, 0}), std::invalid_argument);
}

TEST_CASE("payloads are deterministic across runs, thread counts and rank routes") {
  QuotientOptions one, two, modular;
  two.threads = 2;
  modular.rank_method = RankMethod::modular;
  for (const QuotientParams p : {QuotientParams{4, 4, 9}, QuotientParams{3, std::nullopt, 7}, QuotientParams{5, 3, 8}}) {
    const QuotientReport a = graded_rank(p, one);
    const QuotientReport b = graded_rank(p, two);
    const QuotientReport c = graded_rank(p, one);
    CHECK(a.payload().dump() == b.payload().dump());
    CHECK(a.payload().dump() == c.payload().dump());
    CHECK(a.content_hash == b.content_hash);
    CHECK(a.content_hash.size() == 64);
    const QuotientReport d = graded_rank(p, modular);
    CHECK(d.rank == a.rank);
    CHECK(d.annihilators == a.annihilators);
  }
  const nlohmann::json j = graded_rank({4, 3, 5}).to_json();
  CHECK(j.at("dim_quotient") == 0);
  CHECK(j.at("params").at("e") == "3");
  CHECK(graded_rank({3, std::nullopt, 3}).to_json().at("params").at("e") == "inf");
}
