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

// Tree formulas for formal inverses of maps F = X - grad P.
//
// For a potential P in n variables:
//   q_tree(T, P)    sum over edge labelings of T of prod_v D_{adj(v)} P
//   p_tree(S, H, i) sum over vertex labelings of S with root label i of
//                   prod_v D_{labels of children of v} H_{label(v)}
//   dop_tree(S, P)  the differential operator left after labeling every edge
//                   of S, with the root's derivatives kept open
// and the inverse G = X + sum_m N^(m) with N^(m) = grad Q^(m).
//
// Labeling sums are evaluated by dynamic programming over a DFS order of the
// tree: each vertex contributes a polynomial per label of its parent edge.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gltrees/gl_algebra.hpp"
#include "gltrees/poly.hpp"
#include "gltrees/trees.hpp"

namespace gltrees {

/// Finite sum of coefficient * D^alpha, keyed by distinct alpha.
class DiffOperator {
 public:
  using Terms = std::map<Exponent, Polynomial, GradedLexLess>;

  explicit DiffOperator(std::size_t n = 0) : n_(n) {}
  static DiffOperator identity(std::size_t n);

  std::size_t variables() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const Exponent& alpha, const Polynomial& coefficient);
  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator& operator*=(const GaussianRational& c);
  friend bool operator==(const DiffOperator& a, const DiffOperator& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t n_;
  Terms terms_;
};

/// Lines "coefficient * D[a1,...,an]".
std::string to_string(const DiffOperator& d);

Polynomial apply_dop(const DiffOperator& d, const Polynomial& q);

Polynomial q_tree(const FreeTree& t, const Polynomial& p);
Polynomial q_tree(const TreeVector& v, const Polynomial& p);

/// i is 0-based; throws std::out_of_range.
Polynomial p_tree(const RootedTree& s, const PolyMap& h, std::size_t i);
/// All n components at once.
PolyMap p_tree(const RootedTree& s, const PolyMap& h);

DiffOperator dop_tree(const RootedTree& s, const Polynomial& p);
DiffOperator dop_tree(const RootedVector& v, const Polynomial& p);

struct InverseOptions {
  /// Largest tree size the tree formulas may enumerate.
  std::size_t max_tree_vertices = 12;
  /// Largest series index accepted by the recursion.
  std::size_t max_series_index = 64;
};

struct InverseSeries {
  enum class Source { tree_formula, zhao };

  Polynomial potential;
  std::vector<Polynomial> q;  // q[m-1] = Q^(m)
  std::vector<PolyMap> n;     // n[m-1] = N^(m) = grad Q^(m)
  Source source = Source::zhao;

  std::size_t size() const noexcept { return q.size(); }
};

std::string to_string(InverseSeries::Source s);

/// Q^(m) = sum over free trees T with m vertices of q_tree(T, P) / |Aut T|.
InverseSeries q_series_tree(const Polynomial& p, std::size_t m_max, const InverseOptions& options = {});
/// Q^(1) = P, Q^(m) = 1/(2(m-1)) sum_{k+l=m} grad Q^(k) . grad Q^(l).
InverseSeries q_series_zhao(const Polynomial& p, std::size_t m_max, const InverseOptions& options = {});
/// N^(m) = sum over rooted trees S with m vertices of p_tree(S, H) / |Aut S|,
/// for m = 1..m_max.
std::vector<PolyMap> n_series_bcw(const PolyMap& h, std::size_t m_max, const InverseOptions& options = {});

struct GapInversion {
  std::size_t M = 0;
  std::vector<Polynomial> q;  // Q^(1..2M), or up to the first nonzero one past M
  /// First m in M+1..2M with Q^(m) != 0.
  std::optional<std::size_t> obstruction;
  bool cross_checked = false;  // Q^(M+1) recomputed by the tree formula
  std::optional<PolyMap> inverse;
};

/// Returns G = X + sum_{m<=M} grad Q^(m) when Q^(M+1) = ... = Q^(2M) = 0.
/// Throws VerificationError if the tree cross-check disagrees.
GapInversion gap_inversion(const Polynomial& p, std::size_t M, const InverseOptions& options = {});
std::optional<PolyMap> gap_invert(const Polynomial& p, std::size_t M, const InverseOptions& options = {});

/// compose(f, g) = X = compose(g, f) up to total degree `trunc`.
bool verify_inverse(const PolyMap& f, const PolyMap& g, unsigned trunc);

/// F = X - grad P.
PolyMap special_map(const Polynomial& p);

}  // namespace gltrees
