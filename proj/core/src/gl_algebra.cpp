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

#include "gltrees/gl_algebra.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gltrees {

namespace {

struct BranchClass {
  LabeledTreeView view;  // rooted at 0
  std::size_t multiplicity;
};

void append_branch(LabeledTreeView& out, const LabeledTreeView& branch, int target) {
  const int offset = static_cast<int>(out.vertex_count());
  for (std::size_t v = 0; v < branch.vertex_count(); ++v) out.add_vertex();
  for (std::size_t v = 0; v < branch.vertex_count(); ++v) {
    for (int w : branch.adjacency[v]) {
      if (static_cast<int>(v) < w) out.add_edge(offset + static_cast<int>(v), offset + w);
    }
  }
  out.add_edge(offset, target);
}

// Enumerates the grafts of a forest onto a labeled target, grouping ordered
// target tuples that differ only by permuting isomorphic branches.  `emit`
// receives each grafted view with its tuple count.
template <class Emit>
void expand_grafts(const Forest& forest, const LabeledTreeView& target, std::optional<std::size_t> cap,
                   Emit&& emit) {
  const std::size_t n = target.vertex_count();
  if (cap && max_degree(target) > *cap) return;

  std::vector<BranchClass> classes;
  for (const auto& [branch, mult] : forest) {
    LabeledTreeView view = view_of(branch);
    if (cap) {
      // The branch root gains the grafting edge; other branch vertices keep theirs.
      for (std::size_t v = 0; v < view.vertex_count(); ++v) {
        if (view.degree(static_cast<int>(v)) + (v == 0 ? 1 : 0) > *cap) return;
      }
    }
    classes.push_back({std::move(view), mult});
  }

  std::vector<std::size_t> extra(n, 0);
  std::vector<std::vector<int>> assigned(classes.size());
  std::uint64_t weight = 1;

  auto build = [&] {
    LabeledTreeView out = target;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      for (int v : assigned[k]) append_branch(out, classes[k].view, v);
    }
    return out;
  };

  auto multinomial = [](const std::vector<int>& seq) {
    std::uint64_t num = 1;
    std::uint64_t run = 0;
    std::uint64_t result = 1;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      num = i + 1;
      run = (i > 0 && seq[i] == seq[i - 1]) ? run + 1 : 1;
      result = result * num / run;  // exact: running value is a multinomial coefficient
    }
    return result;
  };

  auto choose = [&](auto&& self, std::size_t cls, int start) -> void {
    if (cls == classes.size()) {
      emit(build(), weight);
      return;
    }
    if (assigned[cls].size() == classes[cls].multiplicity) {
      const std::uint64_t saved = weight;
      weight *= multinomial(assigned[cls]);
      self(self, cls + 1, 0);
      weight = saved;
      return;
    }
    for (int v = start; v < static_cast<int>(n); ++v) {
      if (cap && target.degree(v) + extra[static_cast<std::size_t>(v)] + 1 > *cap) continue;
      assigned[cls].push_back(v);
      ++extra[static_cast<std::size_t>(v)];
      self(self, cls, v);
      --extra[static_cast<std::size_t>(v)];
      assigned[cls].pop_back();
    }
  };
  choose(choose, 0, 0);
}

template <class View>
void check_graft_args(std::span<const RootedTree> branches, std::span<const int> targets, const View& view) {
  if (branches.size() != targets.size()) {
    throw std::invalid_argument("graft: " + std::to_string(branches.size()) + " branches but " +
                                std::to_string(targets.size()) + " targets");
  }
  for (int v : targets) {
    if (v < 0 || static_cast<std::size_t>(v) >= view.vertex_count()) {
      throw std::out_of_range("graft: vertex " + std::to_string(v) + " is not in the target tree");
    }
  }
}

LabeledTreeView graft_view(std::span<const RootedTree> branches, std::span<const int> targets,
                           LabeledTreeView view) {
  for (std::size_t i = 0; i < branches.size(); ++i) append_branch(view, view_of(branches[i]), targets[i]);
  return view;
}

template <class Basis>
std::string format_vector(const LinearCombination<Basis>& v) {
  if (v.empty()) return "0\n";
  std::string out;
  for (const auto& [tree, c] : v) out += to_string(c) + " * " + tree.code() + "\n";
  return out;
}

}  // namespace

Forest del_root(const RootedTree& s) {
  Forest forest;
  for (auto& child : s.children()) ++forest[child];
  return forest;
}

RootedTree graft(std::span<const RootedTree> branches, std::span<const int> targets, const RootedTree& t) {
  LabeledTreeView view = view_of(t);
  check_graft_args(branches, targets, view);
  return canonical_rooted(graft_view(branches, targets, std::move(view)), 0);
}

FreeTree graft(std::span<const RootedTree> branches, std::span<const int> targets, const FreeTree& t) {
  LabeledTreeView view = view_of(t);
  check_graft_args(branches, targets, view);
  return canonical_free(graft_view(branches, targets, std::move(view)));
}

RootedVector gl_product(const RootedTree& s, const RootedTree& t) {
  std::map<RootedTree, std::uint64_t> acc;
  expand_grafts(del_root(s), view_of(t), std::nullopt,
                [&](const LabeledTreeView& v, std::uint64_t w) { acc[canonical_rooted(v, 0)] += w; });
  RootedVector out;
  for (const auto& [tree, w] : acc) out.add(tree, Rational(BigInt(std::to_string(w))));
  return out;
}

RootedVector gl_product(const RootedVector& s, const RootedVector& t) {
  RootedVector out;
  for (const auto& [a, ca] : s) {
    for (const auto& [b, cb] : t) {
      RootedVector ab = gl_product(a, b);
      for (const auto& [tree, c] : ab) {
        if (h_degree(tree) != h_degree(a) + h_degree(b)) throw std::logic_error("GL product broke the grading");
        out.add(tree, ca * cb * c);
      }
    }
  }
  return out;
}

TreeVector gl_act(const RootedTree& s, const FreeTree& t, std::optional<std::size_t> degree_cap) {
  std::map<FreeTree, std::uint64_t> acc;
  expand_grafts(del_root(s), view_of(t), degree_cap,
                [&](const LabeledTreeView& v, std::uint64_t w) { acc[canonical_free(v)] += w; });
  TreeVector out;
  for (const auto& [tree, w] : acc) out.add(tree, Rational(BigInt(std::to_string(w))));
  return out;
}

TreeVector gl_act(const RootedVector& s, const TreeVector& t) {
  TreeVector out;
  for (const auto& [a, ca] : s) {
    for (const auto& [b, cb] : t) {
      TreeVector ab = gl_act(a, b);
      for (const auto& [tree, c] : ab) {
        if (tree.vertex_count() != h_degree(a) + b.vertex_count()) {
          throw std::logic_error("tree module action broke the grading");
        }
        out.add(tree, ca * cb * c);
      }
    }
  }
  return out;
}

std::string to_string(const RootedVector& v) { return format_vector(v); }
std::string to_string(const TreeVector& v) { return format_vector(v); }

}  // namespace gltrees
