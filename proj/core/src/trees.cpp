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

#include "gltrees/trees.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

#include "gltrees/errors.hpp"

namespace gltrees {

class TreeCanonicalizer {
 public:
  static RootedTree rooted(std::string code) { return RootedTree(std::move(code)); }
  static FreeTree free(std::string code, std::size_t split) { return FreeTree(std::move(code), split); }
};

namespace {

// Top-level balanced groups of an already validated code.
std::vector<std::string_view> top_groups(std::string_view code) {
  std::vector<std::string_view> groups;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (code[i] == '(') {
      if (depth++ == 0) start = i;
    } else if (--depth == 0) {
      groups.push_back(code.substr(start, i - start + 1));
    }
  }
  return groups;
}

std::string encode(const LabeledTreeView& view, int node, int parent) {
  std::vector<std::string> parts;
  parts.reserve(view.adjacency[static_cast<std::size_t>(node)].size());
  for (int child : view.adjacency[static_cast<std::size_t>(node)]) {
    if (child != parent) parts.push_back(encode(view, child, node));
  }
  std::sort(parts.begin(), parts.end(), std::greater<>());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  out += ')';
  return out;
}

std::uint64_t rooted_aut(std::string_view code) {
  std::vector<std::string_view> kids = top_groups(code.substr(1, code.size() - 2));
  std::uint64_t result = 1;
  std::size_t run = 0;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    result *= rooted_aut(kids[i]);
    run = (i > 0 && kids[i] == kids[i - 1]) ? run + 1 : 1;
    result *= run;  // accumulates run! across equal neighbours
  }
  return result;
}

// Appends the vertices of a code to the view; returns the index of its root.
int append_code(LabeledTreeView& view, std::string_view code) {
  std::vector<int> stack;
  int first = -1;
  for (char c : code) {
    if (c == '(') {
      int v = view.add_vertex();
      if (stack.empty()) {
        first = v;
      } else {
        view.add_edge(stack.back(), v);
      }
      stack.push_back(v);
    } else {
      stack.pop_back();
    }
  }
  return first;
}

// Checks characters and balance; returns the top-level groups.
std::vector<std::string_view> validate_code(std::string_view text) {
  if (text.empty()) throw ParseError("empty tree code", 0);
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(') {
      ++depth;
    } else if (c == ')') {
      if (depth == 0) throw ParseError("unbalanced ')'", i);
      --depth;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  if (depth != 0) throw ParseError("unterminated '('", text.size());
  return top_groups(text);
}

std::vector<int> subtree_sizes(const LabeledTreeView& view, std::vector<int>& parent) {
  const std::size_t n = view.vertex_count();
  std::vector<int> order;
  order.reserve(n);
  parent.assign(n, -1);
  std::vector<int> stack{0};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int w : view.adjacency[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        parent[static_cast<std::size_t>(w)] = v;
        stack.push_back(w);
      }
    }
  }
  std::vector<int> size(n, 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int p = parent[static_cast<std::size_t>(*it)];
    if (p >= 0) size[static_cast<std::size_t>(p)] += size[static_cast<std::size_t>(*it)];
  }
  return size;
}

}  // namespace

RootedTree RootedTree::from_children(const std::vector<RootedTree>& children) {
  std::vector<std::string> parts;
  parts.reserve(children.size());
  for (const auto& c : children) parts.push_back(c.code());
  std::sort(parts.begin(), parts.end(), std::greater<>());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  out += ')';
  return RootedTree(std::move(out));
}

std::vector<RootedTree> RootedTree::children() const {
  std::vector<RootedTree> out;
  for (auto g : top_groups(std::string_view(code_).substr(1, code_.size() - 2))) {
    out.push_back(RootedTree(std::string(g)));
  }
  return out;
}

std::size_t RootedTree::root_degree() const {
  return top_groups(std::string_view(code_).substr(1, code_.size() - 2)).size();
}

RootedTree FreeTree::centered() const {
  if (bicentral()) throw std::logic_error("free tree " + code_ + " is bicentral");
  return TreeCanonicalizer::rooted(code_);
}

std::pair<RootedTree, RootedTree> FreeTree::halves() const {
  if (!bicentral()) throw std::logic_error("free tree " + code_ + " has a single centroid");
  return {TreeCanonicalizer::rooted(code_.substr(0, split_)),
          TreeCanonicalizer::rooted(code_.substr(split_))};
}

int LabeledTreeView::add_vertex() {
  adjacency.emplace_back();
  return static_cast<int>(adjacency.size() - 1);
}

void LabeledTreeView::add_edge(int u, int v) {
  const auto n = static_cast<int>(adjacency.size());
  if (u < 0 || v < 0 || u >= n || v >= n) throw std::out_of_range("edge endpoint out of range");
  adjacency[static_cast<std::size_t>(u)].push_back(v);
  adjacency[static_cast<std::size_t>(v)].push_back(u);
}

void LabeledTreeView::validate() const {
  const std::size_t n = vertex_count();
  if (n == 0) throw std::invalid_argument("tree has no vertices");
  std::size_t degree_sum = 0;
  for (const auto& nbrs : adjacency) degree_sum += nbrs.size();
  if (degree_sum != 2 * (n - 1)) throw std::invalid_argument("edge count is not |V|-1 (cycle or forest)");
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adjacency[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n) throw std::invalid_argument("graph is disconnected");
  if (root && (*root < 0 || static_cast<std::size_t>(*root) >= n)) {
    throw std::out_of_range("root index out of range");
  }
}

LabeledTreeView view_of(const RootedTree& t) {
  LabeledTreeView view;
  view.adjacency.reserve(t.vertex_count());
  view.root = append_code(view, t.code());
  return view;
}

LabeledTreeView view_of(const FreeTree& t) {
  LabeledTreeView view;
  view.adjacency.reserve(t.vertex_count());
  auto groups = top_groups(t.code());
  int a = append_code(view, groups[0]);
  if (groups.size() == 2) {
    int b = append_code(view, groups[1]);
    view.add_edge(a, b);
  }
  return view;
}

RootedTree canonical_rooted(const LabeledTreeView& view, int root) {
  if (root < 0 || static_cast<std::size_t>(root) >= view.vertex_count()) {
    throw std::out_of_range("vertex " + std::to_string(root) + " is not in the tree");
  }
  return TreeCanonicalizer::rooted(encode(view, root, -1));
}

FreeTree canonical_free(const LabeledTreeView& view) {
  const std::size_t n = view.vertex_count();
  if (n == 0) throw std::invalid_argument("tree has no vertices");
  if (n == 1) return FreeTree();
  std::vector<int> parent;
  std::vector<int> size = subtree_sizes(view, parent);
  std::vector<int> centroids;
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t heaviest = n - static_cast<std::size_t>(size[v]);
    for (int w : view.adjacency[v]) {
      if (w != parent[v]) heaviest = std::max(heaviest, static_cast<std::size_t>(size[static_cast<std::size_t>(w)]));
    }
    if (2 * heaviest <= n) centroids.push_back(static_cast<int>(v));
  }
  if (centroids.size() == 1) return TreeCanonicalizer::free(encode(view, centroids[0], -1), 0);
  std::string a = encode(view, centroids[0], centroids[1]);
  std::string b = encode(view, centroids[1], centroids[0]);
  if (a < b) std::swap(a, b);
  std::size_t split = a.size();
  return TreeCanonicalizer::free(a + b, split);
}

RootedTree parse_rooted(std::string_view text) {
  auto groups = validate_code(text);
  if (groups.size() != 1) throw ParseError("rooted code must be a single group", groups[0].size());
  LabeledTreeView view;
  int root = append_code(view, text);
  return canonical_rooted(view, root);
}

namespace {

FreeTree parse_edge_list(std::string_view text) {
  std::map<unsigned long, int> index;
  LabeledTreeView view;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_vertex = [&]() -> int {
    skip_ws();
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw ParseError("expected a vertex name", start);
    unsigned long name = std::stoul(std::string(text.substr(start, i - start)));
    if (name == 0) throw ParseError("vertex names must be positive", start);
    auto [it, inserted] = index.try_emplace(name, 0);
    if (inserted) it->second = view.add_vertex();
    return it->second;
  };
  while (true) {
    std::size_t edge_start = i;
    int u = read_vertex();
    skip_ws();
    if (i >= text.size() || text[i] != '-') throw ParseError("expected '-'", i);
    ++i;
    int v = read_vertex();
    if (u == v) throw ParseError("self-loop", edge_start);
    for (int w : view.adjacency[static_cast<std::size_t>(u)]) {
      if (w == v) throw ParseError("repeated edge", edge_start);
    }
    view.add_edge(u, v);
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != ',') throw ParseError("expected ','", i);
    ++i;
  }
  view.validate();
  return canonical_free(view);
}

}  // namespace

FreeTree parse_free(std::string_view text) {
  if (text.find_first_of("0123456789-") != std::string_view::npos) return parse_edge_list(text);
  auto groups = validate_code(text);
  if (groups.size() > 2) throw ParseError("free code has more than two groups", groups[0].size() + groups[1].size());
  LabeledTreeView view;
  int a = append_code(view, groups[0]);
  if (groups.size() == 2) {
    int b = append_code(view, groups[1]);
    view.add_edge(a, b);
  }
  return canonical_free(view);
}

FreeTree forget_root(const RootedTree& t) { return canonical_free(view_of(t)); }

RootedTree root_at(const FreeTree& t, int w) { return canonical_rooted(view_of(t), w); }

std::size_t count_rootings_isomorphic(const FreeTree& tbar, const RootedTree& s) {
  if (tbar.vertex_count() != s.vertex_count()) return 0;
  LabeledTreeView view = view_of(tbar);
  std::size_t count = 0;
  for (std::size_t w = 0; w < view.vertex_count(); ++w) {
    if (canonical_rooted(view, static_cast<int>(w)) == s) ++count;
  }
  return count;
}

std::uint64_t aut_order(const RootedTree& t) { return rooted_aut(t.code()); }

std::uint64_t aut_order(const FreeTree& t) {
  if (!t.bicentral()) return rooted_aut(t.code());
  auto [a, b] = t.halves();
  return rooted_aut(a.code()) * rooted_aut(b.code()) * (a == b ? 2 : 1);
}

bool has_naked_chain(const FreeTree& t, int r) {
  if (r < 2) throw std::invalid_argument("naked chains need r >= 2");
  const std::size_t n = t.vertex_count();
  if (n < static_cast<std::size_t>(r)) return false;
  LabeledTreeView view = view_of(t);
  std::vector<int> parent(n), dist(n);
  for (std::size_t u = 0; u < n; ++u) {
    if (view.degree(static_cast<int>(u)) > 2) continue;
    std::fill(dist.begin(), dist.end(), -1);
    dist[u] = 0;
    parent[u] = -1;
    std::vector<int> queue{static_cast<int>(u)};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int v = queue[head];
      for (int w : view.adjacency[static_cast<std::size_t>(v)]) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
          parent[static_cast<std::size_t>(w)] = v;
          queue.push_back(w);
        }
      }
    }
    for (std::size_t v = u + 1; v < n; ++v) {
      if (dist[v] != r - 1 || view.degree(static_cast<int>(v)) > 2) continue;
      bool naked = true;
      for (int x = parent[v]; x != static_cast<int>(u); x = parent[static_cast<std::size_t>(x)]) {
        if (view.degree(x) != 2) {
          naked = false;
          break;
        }
      }
      if (naked) return true;
    }
  }
  return false;
}

std::size_t max_degree(const LabeledTreeView& view) {
  std::size_t best = 0;
  for (const auto& nbrs : view.adjacency) best = std::max(best, nbrs.size());
  return best;
}

std::size_t max_degree(const FreeTree& t) { return max_degree(view_of(t)); }

namespace {

struct EnumerationCache {
  std::mutex mutex;
  std::map<std::size_t, std::vector<RootedTree>> rooted;
  std::map<std::size_t, std::vector<FreeTree>> free;
};

EnumerationCache& cache() {
  static EnumerationCache instance;
  return instance;
}

void check_size(std::size_t m, std::size_t max_vertices) {
  if (m == 0) throw std::invalid_argument("trees need at least one vertex");
  if (m > max_vertices) {
    throw ResourceLimitError("enumeration of " + std::to_string(m) + "-vertex trees exceeds the bound of " +
                             std::to_string(max_vertices) + " vertices");
  }
}

// Assumes the cache lock is held.
const std::vector<RootedTree>& rooted_locked(EnumerationCache& c, std::size_t m) {
  if (auto it = c.rooted.find(m); it != c.rooted.end()) return it->second;
  std::vector<RootedTree> out;
  if (m == 1) {
    out.emplace_back();
  } else {
    // Children are chosen as a non-increasing sequence of positions in `pool`.
    std::vector<const RootedTree*> pool;
    for (std::size_t k = 1; k < m; ++k) {
      for (const auto& t : rooted_locked(c, k)) pool.push_back(&t);
    }
    std::vector<const std::string*> chosen;
    std::vector<std::string> parts;
    std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t remaining, std::size_t limit) {
      if (remaining == 0) {
        parts.clear();
        for (const auto* s : chosen) parts.push_back(*s);
        std::sort(parts.begin(), parts.end(), std::greater<>());
        std::string code = "(";
        for (const auto& p : parts) code += p;
        code += ')';
        out.push_back(TreeCanonicalizer::rooted(std::move(code)));
        return;
      }
      for (std::size_t idx = limit; idx-- > 0;) {
        const RootedTree& t = *pool[idx];
        if (t.vertex_count() > remaining) continue;
        chosen.push_back(&t.code());
        extend(remaining - t.vertex_count(), idx + 1);
        chosen.pop_back();
      }
    };
    extend(m - 1, pool.size());
  }
  std::sort(out.begin(), out.end());
  return c.rooted.emplace(m, std::move(out)).first->second;
}

}  // namespace

const std::vector<RootedTree>& enumerate_rooted(std::size_t m, std::size_t max_vertices) {
  check_size(m, max_vertices);
  auto& c = cache();
  std::lock_guard lock(c.mutex);
  return rooted_locked(c, m);
}

const std::vector<FreeTree>& enumerate_free(std::size_t m, std::size_t max_vertices) {
  check_size(m, max_vertices);
  auto& c = cache();
  std::lock_guard lock(c.mutex);
  if (auto it = c.free.find(m); it != c.free.end()) return it->second;
  std::vector<FreeTree> out;
  for (const auto& t : rooted_locked(c, m)) {
    bool centroid = true;
    for (auto g : top_groups(std::string_view(t.code()).substr(1, t.code().size() - 2))) {
      if (g.size() >= m) {  // a branch of at least m/2 vertices
        centroid = false;
        break;
      }
    }
    if (centroid) out.push_back(TreeCanonicalizer::free(t.code(), 0));
  }
  if (m % 2 == 0) {
    const auto& half = rooted_locked(c, m / 2);
    for (std::size_t i = 0; i < half.size(); ++i) {
      for (std::size_t j = i; j < half.size(); ++j) {
        // half is sorted ascending, so half[j] >= half[i].
        out.push_back(TreeCanonicalizer::free(half[j].code() + half[i].code(), half[j].code().size()));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return c.free.emplace(m, std::move(out)).first->second;
}

FreeTree chain(std::size_t vertices) { return forget_root(rooted_chain(vertices)); }

FreeTree star(std::size_t leaves) { return forget_root(rooted_star(leaves)); }

RootedTree rooted_chain(std::size_t vertices) {
  if (vertices == 0) throw std::invalid_argument("chain needs at least one vertex");
  return TreeCanonicalizer::rooted(std::string(vertices, '(') + std::string(vertices, ')'));
}

RootedTree rooted_star(std::size_t leaves) {
  std::string code = "(";
  for (std::size_t i = 0; i < leaves; ++i) code += "()";
  return TreeCanonicalizer::rooted(code + ")");
}

}  // namespace gltrees
