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

// Rooted and free trees up to isomorphism.
//
// Trees are stored by their canonical parenthesis code.  A rooted tree's code
// is "(" followed by the codes of its root branches in non-increasing
// lexicographic order, then ")".  A free tree is rooted at its centroid; when
// the centroid is an edge the code is the concatenation of the two half codes,
// larger first.  Vertex indices used by LabeledTreeView follow the order in
// which '(' characters appear in the code.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gltrees {

class TreeCanonicalizer;

class RootedTree {
 public:
  /// The singleton tree "()".
  RootedTree() : code_("()") {}

  /// Canonical tree whose root branches are the given trees (any order).
  static RootedTree from_children(const std::vector<RootedTree>& children);

  const std::string& code() const noexcept { return code_; }
  std::size_t vertex_count() const noexcept { return code_.size() / 2; }
  bool is_singleton() const noexcept { return code_.size() == 2; }

  /// Root branches in canonical order.
  std::vector<RootedTree> children() const;
  std::size_t root_degree() const;

  friend bool operator==(const RootedTree&, const RootedTree&) = default;
  friend auto operator<=>(const RootedTree& a, const RootedTree& b) { return a.code_ <=> b.code_; }

 private:
  friend class TreeCanonicalizer;
  explicit RootedTree(std::string canonical) : code_(std::move(canonical)) {}
  std::string code_;
};

class FreeTree {
 public:
  /// The one-vertex free tree.
  FreeTree() : code_("()") {}

  const std::string& code() const noexcept { return code_; }
  std::size_t vertex_count() const noexcept { return code_.size() / 2; }

  /// True when the centroid is an edge.
  bool bicentral() const noexcept { return split_ != 0; }

  /// Tree rooted at the unique centroid; throws std::logic_error if bicentral.
  RootedTree centered() const;

  /// The two rooted halves, larger code first; throws std::logic_error unless bicentral.
  std::pair<RootedTree, RootedTree> halves() const;

  friend bool operator==(const FreeTree& a, const FreeTree& b) { return a.code_ == b.code_; }
  friend auto operator<=>(const FreeTree& a, const FreeTree& b) { return a.code_ <=> b.code_; }

 private:
  friend class TreeCanonicalizer;
  FreeTree(std::string canonical, std::size_t split) : code_(std::move(canonical)), split_(split) {}
  std::string code_;
  std::size_t split_ = 0;  // length of the first half's code, 0 if unicentral
};

/// Working form for traversals: vertex-indexed adjacency lists.
struct LabeledTreeView {
  std::vector<std::vector<int>> adjacency;
  std::optional<int> root;

  std::size_t vertex_count() const noexcept { return adjacency.size(); }
  std::size_t degree(int v) const { return adjacency.at(static_cast<std::size_t>(v)).size(); }
  int add_vertex();
  void add_edge(int u, int v);

  /// Throws std::invalid_argument unless the view is connected and acyclic.
  void validate() const;
};

/// Labeled view in code order; rooted views have root 0.
LabeledTreeView view_of(const RootedTree& t);
LabeledTreeView view_of(const FreeTree& t);

/// Canonical form of a labeled tree rooted at the given vertex.
RootedTree canonical_rooted(const LabeledTreeView& view, int root);
/// Canonical form of a labeled tree with its root (if any) forgotten.
FreeTree canonical_free(const LabeledTreeView& view);

/// Parses a balanced-parenthesis code (any branch order).
RootedTree parse_rooted(std::string_view text);
/// Parses one code (any rooting), two concatenated codes joined at their
/// roots, or an edge list "u-v,v-w,..." with positive integer vertex names.
FreeTree parse_free(std::string_view text);

FreeTree forget_root(const RootedTree& t);

/// The rooted tree obtained by declaring vertex w of view_of(t) the root.
RootedTree root_at(const FreeTree& t, int w);

/// Number of vertices w with root_at(tbar, w) isomorphic to s.
std::size_t count_rootings_isomorphic(const FreeTree& tbar, const RootedTree& s);

std::uint64_t aut_order(const RootedTree& t);
std::uint64_t aut_order(const FreeTree& t);

/// A geodesic of r vertices whose interior vertices have degree 2 and whose
/// end vertices have degree 1 or 2.  Requires r >= 2.
bool has_naked_chain(const FreeTree& t, int r);

/// Largest vertex degree; 0 for the singleton.
std::size_t max_degree(const FreeTree& t);
std::size_t max_degree(const LabeledTreeView& view);

inline constexpr std::size_t kDefaultMaxVertices = 16;

/// All rooted trees with m vertices, ordered by canonical code.  Results are
/// cached and safe to share between threads.
const std::vector<RootedTree>& enumerate_rooted(std::size_t m,
                                                std::size_t max_vertices = kDefaultMaxVertices);
/// All free trees with m vertices, ordered by canonical code.
const std::vector<FreeTree>& enumerate_free(std::size_t m,
                                            std::size_t max_vertices = kDefaultMaxVertices);

FreeTree chain(std::size_t vertices);
FreeTree star(std::size_t leaves);
RootedTree rooted_chain(std::size_t vertices);
RootedTree rooted_star(std::size_t leaves);

}  // namespace gltrees
