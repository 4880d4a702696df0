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

#include "gltrees/inverse.hpp"

#include <functional>
#include <stdexcept>

#include "gltrees/errors.hpp"

namespace gltrees {

namespace {

struct DfsOrder {
  std::vector<std::vector<int>> children;
  std::vector<int> postorder;
};

DfsOrder dfs_from_root(const LabeledTreeView& view) {
  DfsOrder out;
  const std::size_t n = view.vertex_count();
  out.children.resize(n);
  std::vector<int> parent(n, -1);
  std::vector<int> stack{0};
  std::vector<int> preorder;
  std::vector<bool> seen(n, false);
  seen[0] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    preorder.push_back(v);
    for (int w : view.adjacency[static_cast<std::size_t>(v)]) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      parent[static_cast<std::size_t>(w)] = v;
      out.children[static_cast<std::size_t>(v)].push_back(w);
      stack.push_back(w);
    }
  }
  out.postorder.assign(preorder.rbegin(), preorder.rend());
  return out;
}

class DerivativeCache {
 public:
  explicit DerivativeCache(const Polynomial& p) : p_(p), degree_(p.degree().value_or(0)) {}

  const Polynomial& operator()(const Exponent& alpha) {
    auto it = cache_.find(alpha);
    if (it == cache_.end()) it = cache_.emplace(alpha, derivative(p_, alpha)).first;
    return it->second;
  }

  unsigned degree() const { return degree_; }
  std::size_t variables() const { return p_.variables(); }

 private:
  const Polynomial& p_;
  unsigned degree_;
  std::map<Exponent, Polynomial> cache_;
};

using Messages = std::vector<std::vector<Polynomial>>;  // per vertex, per label

// Calls emit(alpha, product) for every labeling of the child edges of v,
// where alpha = base + the child labels and product = prod_c messages[c][label].
void for_child_labelings(const std::vector<int>& kids, const Messages& messages, std::size_t n, Exponent base,
                         const std::function<void(const Exponent&, const Polynomial&)>& emit,
                         std::optional<unsigned> max_order) {
  std::function<void(std::size_t, Exponent&, const Polynomial&)> rec = [&](std::size_t k, Exponent& alpha,
                                                                           const Polynomial& product) {
    if (k == kids.size()) {
      emit(alpha, product);
      return;
    }
    const auto& msg = messages[static_cast<std::size_t>(kids[k])];
    for (std::size_t l = 0; l < n; ++l) {
      if (msg[l].is_zero()) continue;
      ++alpha[l];
      rec(k + 1, alpha, product * msg[l]);
      --alpha[l];
    }
  };
  if (max_order && total_degree(base) + kids.size() > *max_order) return;
  rec(0, base, Polynomial::constant(n, 1));
}

// Edge messages for q_tree and dop_tree: messages[v][j] is the labeling sum
// over the subtree below v when the edge from v to its parent carries label j.
Messages edge_messages(const DfsOrder& order, DerivativeCache& dp) {
  const std::size_t n = dp.variables();
  const unsigned deg = dp.degree();
  Messages messages(order.children.size(), std::vector<Polynomial>(n, Polynomial(n)));
  for (int v : order.postorder) {
    if (v == 0) continue;
    const auto& kids = order.children[static_cast<std::size_t>(v)];
    for (std::size_t j = 0; j < n; ++j) {
      Exponent base{};
      base[j] = 1;
      Polynomial acc(n);
      for_child_labelings(
          kids, messages, n, base,
          [&](const Exponent& alpha, const Polynomial& product) {
            const Polynomial& d = dp(alpha);
            if (!d.is_zero()) acc += d * product;
          },
          deg);
      messages[static_cast<std::size_t>(v)][j] = std::move(acc);
    }
  }
  return messages;
}

GaussianRational inverse_count(std::uint64_t k) { return Rational(Rational(1) / Rational(BigInt(std::to_string(k)))); }

void check_potential(const Polynomial& p) {
  if (p.variables() == 0) throw std::invalid_argument("potential needs at least one variable");
  if (p.is_zero() || !p.is_homogeneous() || *p.degree() < 2) {
    throw std::invalid_argument("potential must be a nonzero homogeneous polynomial of degree >= 2");
  }
}

void check_tree_guard(std::size_t m, const InverseOptions& options) {
  if (m > options.max_tree_vertices) {
    throw ResourceLimitError("tree formula at degree " + std::to_string(m) + " exceeds the guard of " +
                             std::to_string(options.max_tree_vertices) + " vertices");
  }
}

Polynomial q_degree_tree(const Polynomial& p, std::size_t m) {
  Polynomial acc(p.variables());
  for (const auto& t : enumerate_free(m, std::max(m, kDefaultMaxVertices))) {
    Polynomial term = q_tree(t, p);
    if (!term.is_zero()) acc += inverse_count(aut_order(t)) * term;
  }
  return acc;
}

void check_series_degree(const Polynomial& q, const Polynomial& p, std::size_t m) {
  if (q.is_zero()) return;
  const unsigned d = *p.degree() - 1;
  const unsigned expected = static_cast<unsigned>(m) * (d - 1) + 2;
  if (!q.is_homogeneous() || *q.degree() != expected) {
    throw VerificationError("Q^(" + std::to_string(m) + ") is not homogeneous of degree " + std::to_string(expected));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// DiffOperator

DiffOperator DiffOperator::identity(std::size_t n) {
  DiffOperator d(n);
  d.add_term(Exponent{}, Polynomial::constant(n, 1));
  return d;
}

void DiffOperator::add_term(const Exponent& alpha, const Polynomial& coefficient) {
  if (coefficient.variables() != n_) throw std::invalid_argument("operator coefficient has the wrong variable count");
  if (coefficient.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(alpha, coefficient);
  if (fresh) return;
  it->second += coefficient;
  if (it->second.is_zero()) terms_.erase(it);
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
  return *this;
}

DiffOperator& DiffOperator::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, coef] : terms_) coef *= c;
  return *this;
}

std::string to_string(const DiffOperator& d) {
  if (d.is_zero()) return "0\n";
  std::string out;
  for (auto it = d.terms().rbegin(); it != d.terms().rend(); ++it) {
    std::string idx;
    for (std::size_t k = 0; k < d.variables(); ++k) idx += (k ? "," : "") + std::to_string(it->first[k]);
    out += "(" + to_string(it->second) + ") * D[" + idx + "]\n";
  }
  return out;
}

Polynomial apply_dop(const DiffOperator& d, const Polynomial& q) {
  if (d.variables() != q.variables()) throw std::invalid_argument("operator and polynomial variable counts differ");
  Polynomial out(q.variables());
  for (const auto& [alpha, c] : d.terms()) {
    Polynomial dq = derivative(q, alpha);
    if (!dq.is_zero()) out += c * dq;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tree formulas

Polynomial q_tree(const FreeTree& t, const Polynomial& p) {
  const std::size_t n = p.variables();
  if (p.is_zero()) return Polynomial(n);
  if (p.degree() && max_degree(t) > *p.degree()) return Polynomial(n);
  const LabeledTreeView view = view_of(t);
  const DfsOrder order = dfs_from_root(view);
  DerivativeCache dp(p);
  const Messages messages = edge_messages(order, dp);
  Polynomial acc(n);
  for_child_labelings(
      order.children[0], messages, n, Exponent{},
      [&](const Exponent& alpha, const Polynomial& product) {
        const Polynomial& d = dp(alpha);
        if (!d.is_zero()) acc += d * product;
      },
      *p.degree());
  return acc;
}

Polynomial q_tree(const TreeVector& v, const Polynomial& p) {
  Polynomial acc(p.variables());
  for (const auto& [t, c] : v) acc += GaussianRational(c) * q_tree(t, p);
  return acc;
}

PolyMap p_tree(const RootedTree& s, const PolyMap& h) {
  const std::size_t n = h.size();
  for (const auto& hi : h) {
    if (hi.variables() != n) throw std::invalid_argument("p_tree needs a map with n components in n variables");
  }
  const LabeledTreeView view = view_of(s);
  const DfsOrder order = dfs_from_root(view);
  std::vector<std::map<Exponent, Polynomial>> cache(n);
  auto dh = [&](std::size_t a, const Exponent& alpha) -> const Polynomial& {
    auto it = cache[a].find(alpha);
    if (it == cache[a].end()) it = cache[a].emplace(alpha, derivative(h[a], alpha)).first;
    return it->second;
  };
  Messages messages(order.children.size(), std::vector<Polynomial>(n, Polynomial(n)));
  for (int v : order.postorder) {
    auto& out = messages[static_cast<std::size_t>(v)];
    for_child_labelings(
        order.children[static_cast<std::size_t>(v)], messages, n, Exponent{},
        [&](const Exponent& alpha, const Polynomial& product) {
          for (std::size_t a = 0; a < n; ++a) {
            const Polynomial& d = dh(a, alpha);
            if (!d.is_zero()) out[a] += d * product;
          }
        },
        std::nullopt);
  }
  return messages[0];
}

Polynomial p_tree(const RootedTree& s, const PolyMap& h, std::size_t i) {
  if (i >= h.size()) throw std::out_of_range("root label " + std::to_string(i + 1) + " outside 1.." + std::to_string(h.size()));
  return p_tree(s, h)[i];
}

DiffOperator dop_tree(const RootedTree& s, const Polynomial& p) {
  const std::size_t n = p.variables();
  if (s.is_singleton()) return DiffOperator::identity(n);
  DiffOperator out(n);
  if (p.is_zero()) return out;
  const LabeledTreeView view = view_of(s);
  const DfsOrder order = dfs_from_root(view);
  DerivativeCache dp(p);
  const Messages messages = edge_messages(order, dp);
  for_child_labelings(
      order.children[0], messages, n, Exponent{},
      [&](const Exponent& alpha, const Polynomial& product) { out.add_term(alpha, product); }, std::nullopt);
  return out;
}

DiffOperator dop_tree(const RootedVector& v, const Polynomial& p) {
  DiffOperator out(p.variables());
  for (const auto& [t, c] : v) {
    DiffOperator d = dop_tree(t, p);
    d *= GaussianRational(c);
    out += d;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Series

std::string to_string(InverseSeries::Source s) { return s == InverseSeries::Source::zhao ? "zhao" : "tree"; }

InverseSeries q_series_tree(const Polynomial& p, std::size_t m_max, const InverseOptions& options) {
  check_potential(p);
  check_tree_guard(m_max, options);
  InverseSeries out;
  out.potential = p;
  out.source = InverseSeries::Source::tree_formula;
  for (std::size_t m = 1; m <= m_max; ++m) {
    Polynomial q = q_degree_tree(p, m);
    check_series_degree(q, p, m);
    out.n.push_back(gradient(q));
    out.q.push_back(std::move(q));
  }
  return out;
}

InverseSeries q_series_zhao(const Polynomial& p, std::size_t m_max, const InverseOptions& options) {
  check_potential(p);
  if (m_max > options.max_series_index) {
    throw ResourceLimitError("series index " + std::to_string(m_max) + " exceeds the guard of " +
                             std::to_string(options.max_series_index));
  }
  InverseSeries out;
  out.potential = p;
  out.source = InverseSeries::Source::zhao;
  for (std::size_t m = 1; m <= m_max; ++m) {
    Polynomial q(p.variables());
    if (m == 1) {
      q = p;
    } else {
      // Pair (k, m-k) with (m-k, k) to halve the work.
      for (std::size_t k = 1; 2 * k <= m; ++k) {
        const PolyMap& a = out.n[k - 1];
        const PolyMap& b = out.n[m - k - 1];
        Polynomial term = dot(a, b);
        if (2 * k != m) term *= GaussianRational(2);
        q += term;
      }
      q *= GaussianRational(Rational(1, 2 * static_cast<long>(m - 1)));
    }
    check_series_degree(q, p, m);
    out.n.push_back(gradient(q));
    out.q.push_back(std::move(q));
  }
  return out;
}

std::vector<PolyMap> n_series_bcw(const PolyMap& h, std::size_t m_max, const InverseOptions& options) {
  if (h.empty()) throw std::invalid_argument("empty map");
  std::optional<unsigned> d;
  for (const auto& hi : h) {
    if (hi.variables() != h.size()) throw std::invalid_argument("map must have n components in n variables");
    if (!hi.is_homogeneous()) throw std::invalid_argument("map components must be homogeneous");
    if (auto k = hi.degree()) {
      if (d && *d != *k) throw std::invalid_argument("map components must share one degree");
      d = k;
    }
  }
  if (d && *d < 2) throw std::invalid_argument("map must have degree >= 2");
  check_tree_guard(m_max, options);
  std::vector<PolyMap> out;
  const std::size_t n = h.size();
  for (std::size_t m = 1; m <= m_max; ++m) {
    PolyMap acc(n, Polynomial(n));
    for (const auto& s : enumerate_rooted(m, std::max(m, kDefaultMaxVertices))) {
      const PolyMap term = p_tree(s, h);
      const GaussianRational w = inverse_count(aut_order(s));
      for (std::size_t i = 0; i < n; ++i) {
        if (!term[i].is_zero()) acc[i] += w * term[i];
      }
    }
    out.push_back(std::move(acc));
  }
  return out;
}

GapInversion gap_inversion(const Polynomial& p, std::size_t M, const InverseOptions& options) {
  if (M < 1) throw std::invalid_argument("gap parameter M must be at least 1");
  const InverseSeries series = q_series_zhao(p, 2 * M, options);
  GapInversion out;
  out.M = M;
  out.q = series.q;
  for (std::size_t m = M + 1; m <= 2 * M; ++m) {
    if (!series.q[m - 1].is_zero()) {
      out.obstruction = m;
      break;
    }
  }
  if (M + 1 <= options.max_tree_vertices) {
    if (!(q_degree_tree(p, M + 1) == series.q[M])) {
      throw VerificationError("tree formula and recursion disagree on Q^(" + std::to_string(M + 1) + ")");
    }
    out.cross_checked = true;
  }
  if (!out.obstruction) {
    PolyMap g = identity_map(p.variables());
    for (std::size_t m = 1; m <= M; ++m) g = g + series.n[m - 1];
    out.inverse = std::move(g);
  }
  return out;
}

std::optional<PolyMap> gap_invert(const Polynomial& p, std::size_t M, const InverseOptions& options) {
  return gap_inversion(p, M, options).inverse;
}

bool verify_inverse(const PolyMap& f, const PolyMap& g, unsigned trunc) {
  if (f.size() != g.size()) return false;
  const PolyMap id = identity_map(f.size());
  return compose(f, g, trunc) == id && compose(g, f, trunc) == id;
}

PolyMap special_map(const Polynomial& p) { return identity_map(p.variables()) - gradient(p); }

}  // namespace gltrees
