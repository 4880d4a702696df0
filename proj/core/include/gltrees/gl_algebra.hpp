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

// The Grossman-Larson algebra H spanned by rooted trees and its action on the
// tree module M spanned by free trees.
//
// For rooted S with root branches S_1..S_r and a tree T,
//
//   S . T = sum over (v_1..v_r) in V(T)^r of (S_1..S_r) grafted at (v_1..v_r),
//
// where grafting joins the root of S_i to v_i by a new edge.  If T is rooted
// the result keeps T's root.  Tuples are ordered, so isomorphic branches are
// counted with multiplicity.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "gltrees/rational.hpp"
#include "gltrees/trees.hpp"

namespace gltrees {

/// Finite rational combination of basis trees with no stored zeros.
template <class Basis>
class LinearCombination {
 public:
  using container = std::map<Basis, Rational>;
  using const_iterator = typename container::const_iterator;

  LinearCombination() = default;
  LinearCombination(const Basis& b) { terms_.emplace(b, Rational(1)); }  // NOLINT: a tree is a vector

  void add(const Basis& b, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(b, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const Basis& b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  LinearCombination& operator+=(const LinearCombination& o) {
    for (const auto& [b, c] : o.terms_) add(b, c);
    return *this;
  }
  LinearCombination& operator-=(const LinearCombination& o) {
    for (const auto& [b, c] : o.terms_) add(b, -c);
    return *this;
  }
  LinearCombination& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& term : terms_) term.second *= s;
    }
    return *this;
  }
  friend LinearCombination operator+(LinearCombination a, const LinearCombination& b) { return a += b; }
  friend LinearCombination operator-(LinearCombination a, const LinearCombination& b) { return a -= b; }
  friend LinearCombination operator*(const Rational& s, LinearCombination a) { return a *= s; }
  friend bool operator==(const LinearCombination&, const LinearCombination&) = default;

  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const container& terms() const noexcept { return terms_; }

 private:
  container terms_;
};

using RootedVector = LinearCombination<RootedTree>;
using TreeVector = LinearCombination<FreeTree>;

/// Root branches with multiplicity.
using Forest = std::map<RootedTree, std::size_t>;

Forest del_root(const RootedTree& s);

/// Attaches branches[i] to vertex targets[i] of view_of(t).  Throws
/// std::invalid_argument on a length mismatch, std::out_of_range on a bad vertex.
RootedTree graft(std::span<const RootedTree> branches, std::span<const int> targets, const RootedTree& t);
FreeTree graft(std::span<const RootedTree> branches, std::span<const int> targets, const FreeTree& t);

RootedVector gl_product(const RootedTree& s, const RootedTree& t);
RootedVector gl_product(const RootedVector& s, const RootedVector& t);

/// s . t in the tree module.  With a degree cap, summands having any vertex of
/// degree above the cap are dropped (they are never built).
TreeVector gl_act(const RootedTree& s, const FreeTree& t, std::optional<std::size_t> degree_cap = std::nullopt);
TreeVector gl_act(const RootedVector& s, const TreeVector& t);

/// Grading degree in H: the number of non-root vertices.
inline std::size_t h_degree(const RootedTree& t) { return t.vertex_count() - 1; }

std::string to_string(const RootedVector& v);
std::string to_string(const TreeVector& v);

}  // namespace gltrees
