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

#include "gltrees/quotient.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "gltrees/digest.hpp"
#include "gltrees/errors.hpp"

namespace gltrees {

namespace {

using Combination = std::vector<std::pair<std::size_t, Rational>>;

bool in_high_degree(const FreeTree& t, std::optional<int> e) {
  return e && max_degree(t) >= static_cast<std::size_t>(*e) + 1;
}

std::optional<std::size_t> degree_cap(std::optional<int> e) {
  if (!e) return std::nullopt;
  return static_cast<std::size_t>(*e);
}

// Whether every vertex of h other than the root keeps degree <= cap once h's
// branches are grafted somewhere.
bool acting_tree_fits(const RootedTree& h, std::optional<std::size_t> cap) {
  if (!cap) return true;
  LabeledTreeView view = view_of(h);
  for (std::size_t v = 1; v < view.vertex_count(); ++v) {
    if (view.degree(static_cast<int>(v)) > *cap) return false;
  }
  return true;
}

SparseRow to_row(std::map<std::size_t, Rational>&& acc) {
  SparseRow row;
  row.entries.reserve(acc.size());
  for (auto& [c, v] : acc) {
    if (v != 0) row.entries.emplace_back(c, std::move(v));
  }
  return row;
}

struct Task {
  std::function<void(std::vector<SparseRow>&, std::vector<std::string>&)> run;
};

// Runs tasks on up to `threads` workers and concatenates outputs in task order.
void run_tasks(const std::vector<Task>& tasks, unsigned threads, std::vector<SparseRow>& rows,
               std::vector<std::string>& provenance) {
  std::vector<std::vector<SparseRow>> row_parts(tasks.size());
  std::vector<std::vector<std::string>> prov_parts(tasks.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) tasks[i].run(row_parts[i], prov_parts[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) tasks[i].run(row_parts[i], prov_parts[i]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    for (auto& r : row_parts[i]) rows.push_back(std::move(r));
    for (auto& p : prov_parts[i]) provenance.push_back(std::move(p));
  }
}

nlohmann::json rational_json(const Rational& q) { return to_string(q); }

}  // namespace

std::string to_string(SpanningMode mode) { return mode == SpanningMode::full ? "full" : "single-branch"; }

std::string format_e(std::optional<int> e) { return e ? std::to_string(*e) : "inf"; }

std::vector<FreeTree> chain_generators(int r, std::size_t m) {
  if (r < 2) throw std::invalid_argument("chain generators need r >= 2");
  std::vector<FreeTree> out;
  for (const auto& t : enumerate_free(m, std::max(m, kDefaultMaxVertices))) {
    if (has_naked_chain(t, r)) out.push_back(t);
  }
  return out;
}

std::vector<FreeTree> high_degree_trees(std::optional<int> e, std::size_t m) {
  std::vector<FreeTree> out;
  if (!e) return out;
  if (*e < 1) throw std::invalid_argument("e must be at least 1");
  for (const auto& t : enumerate_free(m, std::max(m, kDefaultMaxVertices))) {
    if (in_high_degree(t, e)) out.push_back(t);
  }
  return out;
}

std::vector<SpanningVector> spanning_set(int r, std::optional<int> e, std::size_t m, const QuotientOptions& options) {
  if (r < 2) throw std::invalid_argument("r must be at least 2");
  if (m > options.max_degree && !options.allow_large) {
    throw ResourceLimitError("degree " + std::to_string(m) + " exceeds the guard of " +
                             std::to_string(options.max_degree));
  }
  const std::size_t bound = std::max(m, kDefaultMaxVertices);
  std::vector<SpanningVector> out;
  for (const auto& t : high_degree_trees(e, m)) out.push_back({TreeVector(t), "high-degree:" + t.code()});
  for (std::size_t k = 1; k <= m; ++k) {
    auto gens = chain_generators(r, k);
    if (gens.empty()) continue;
    for (const auto& h : enumerate_rooted(m - k + 1, bound)) {
      for (const auto& g : gens) {
        if (out.size() >= options.max_rows && !options.allow_large) {
          throw ResourceLimitError("spanning set exceeds " + std::to_string(options.max_rows) + " vectors");
        }
        out.push_back({gl_act(h, g), h.code() + " * " + g.code()});
      }
    }
  }
  return out;
}

TreeVector nu(std::size_t m) {
  TreeVector out;
  for (const auto& t : enumerate_free(m, std::max(m, kDefaultMaxVertices))) {
    out.add(t, Rational(1) / Rational(BigInt(std::to_string(aut_order(t)))));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct SubmoduleTower::Impl {
  struct Degree {
    bool computed = false;
    std::vector<FreeTree> columns;  // trees outside V(e), in enumeration order
    std::unordered_map<std::string, std::size_t> column_of;
    std::size_t dim_module = 0;
    std::size_t chain_trees = 0;
    std::size_t high_degree = 0;
    std::size_t product_vectors = 0;
    RankResult rank;
    std::vector<Combination> basis;  // basis of N_m modulo V(e), over columns
    std::vector<std::string> provenance;
    double seconds = 0;
  };

  int r;
  std::optional<int> e;
  QuotientOptions options;
  std::vector<Degree> degrees;
  bool validated = false;

  Impl(int r_, std::optional<int> e_, QuotientOptions o) : r(r_), e(e_), options(std::move(o)) {
    if (r < 2) throw std::invalid_argument("r must be at least 2");
    if (e && *e < 1) throw std::invalid_argument("e must be at least 1");
    options.threads = std::max(1u, options.threads);
    degrees.resize(1);
  }

  std::size_t bound(std::size_t m) const { return std::max(m, kDefaultMaxVertices); }

  void check_degree(std::size_t m) const {
    if (m == 0) throw std::invalid_argument("degree must be at least 1");
    if (m > options.max_degree && !options.allow_large) {
      throw ResourceLimitError("degree " + std::to_string(m) + " exceeds the guard of " +
                               std::to_string(options.max_degree) + " (override to proceed)");
    }
  }

  void check_rows(std::size_t estimate, std::size_t m) const {
    if (estimate > options.max_rows && !options.allow_large) {
      throw ResourceLimitError("degree " + std::to_string(m) + " needs about " + std::to_string(estimate) +
                               " spanning vectors, above the guard of " + std::to_string(options.max_rows));
    }
  }

  Degree& ensure(std::size_t m) {
    check_degree(m);
    if (degrees.size() <= m) degrees.resize(m + 1);
    if (!degrees[m].computed) {
      if (options.mode == SpanningMode::single_branch) {
        for (std::size_t k = 1; k < m; ++k) ensure(k);
      }
      compute(m);
    }
    return degrees[m];
  }

  void setup_columns(Degree& d, std::size_t m) {
    const auto& all = enumerate_free(m, bound(m));
    d.dim_module = all.size();
    for (const auto& t : all) {
      if (in_high_degree(t, e)) {
        ++d.high_degree;
      } else {
        d.column_of.emplace(t.code(), d.columns.size());
        d.columns.push_back(t);
      }
    }
  }

  // Maps h . t (computed with the degree cap) onto columns, scaled by coef.
  void accumulate(std::map<std::size_t, Rational>& acc, const Degree& target, const TreeVector& product,
                  const Rational& coef) const {
    for (const auto& [tree, c] : product) {
      auto it = target.column_of.find(tree.code());
      if (it == target.column_of.end()) throw std::logic_error("capped product left the column set");
      acc[it->second] += coef * c;
    }
  }

  void add_chain_rows(Degree& d, std::size_t m, std::vector<SparseRow>& rows, std::vector<std::string>& prov) {
    for (const auto& g : chain_generators(r, m)) {
      ++d.chain_trees;
      auto it = d.column_of.find(g.code());
      if (it == d.column_of.end()) continue;  // already in V(e)
      SparseRow row;
      row.entries.emplace_back(it->second, Rational(1));
      rows.push_back(std::move(row));
      if (options.record_provenance) prov.push_back("chain:" + g.code());
    }
  }

  void compute(std::size_t m) {
    const auto start = std::chrono::steady_clock::now();
    Degree& d = degrees[m];
    setup_columns(d, m);
    std::vector<SparseRow> rows;
    std::vector<std::string> prov;
    add_chain_rows(d, m, rows, prov);
    const std::size_t chain_rows = rows.size();
    const auto cap = degree_cap(e);

    std::vector<Task> tasks;
    std::size_t estimate = rows.size();
    if (options.mode == SpanningMode::full) {
      for (std::size_t k = 1; k < m; ++k) {
        auto gens = std::make_shared<std::vector<FreeTree>>();
        for (const auto& g : chain_generators(r, k)) {
          if (!in_high_degree(g, e)) gens->push_back(g);
        }
        if (gens->empty()) continue;
        for (const auto& h : enumerate_rooted(m - k + 1, bound(m))) {
          if (!acting_tree_fits(h, cap)) continue;
          estimate += gens->size();
          tasks.push_back({[this, &d, h, gens, cap](std::vector<SparseRow>& out, std::vector<std::string>& pv) {
            for (const auto& g : *gens) {
              std::map<std::size_t, Rational> acc;
              accumulate(acc, d, gl_act(h, g, cap), Rational(1));
              SparseRow row = to_row(std::move(acc));
              if (row.empty()) continue;
              out.push_back(std::move(row));
              if (options.record_provenance) pv.push_back(h.code() + " * " + g.code());
            }
          }});
        }
      }
    } else {
      for (std::size_t j = 1; j < m; ++j) {
        const std::size_t k = m - j;
        const Degree& lower = degrees[k];
        if (lower.basis.empty()) continue;
        for (const auto& branch : enumerate_rooted(j, bound(m))) {
          RootedTree h = RootedTree::from_children({branch});
          if (!acting_tree_fits(h, cap)) continue;
          estimate += lower.basis.size();
          tasks.push_back({[this, &d, &lower, h, k, cap](std::vector<SparseRow>& out, std::vector<std::string>& pv) {
            std::unordered_map<std::size_t, TreeVector> products;
            auto product = [&](std::size_t col) -> const TreeVector& {
              auto it = products.find(col);
              if (it == products.end()) it = products.emplace(col, gl_act(h, lower.columns[col], cap)).first;
              return it->second;
            };
            for (std::size_t b = 0; b < lower.basis.size(); ++b) {
              std::map<std::size_t, Rational> acc;
              for (const auto& [col, coef] : lower.basis[b]) accumulate(acc, d, product(col), coef);
              SparseRow row = to_row(std::move(acc));
              if (row.empty()) continue;
              out.push_back(std::move(row));
              if (options.record_provenance) {
                pv.push_back(h.code() + " * basis[" + std::to_string(k) + "][" +
                             lower.columns[lower.basis[b].front().first].code() + "]");
              }
            }
          }});
        }
      }
    }
    check_rows(estimate, m);
    run_tasks(tasks, options.threads, rows, prov);
    d.product_vectors = rows.size() - chain_rows;

    d.rank = certified_rank(rows, d.columns.size(), options.rank_method);
    build_basis(d);
    d.provenance = std::move(prov);
    d.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    d.computed = true;
  }

  static void build_basis(Degree& d) {
    const auto& rr = d.rank;
    if (rr.free_columns.empty()) {
      for (std::size_t c = 0; c < d.columns.size(); ++c) d.basis.push_back({{c, Rational(1)}});
      return;
    }
    // Kernel of the annihilators: e_c - sum_l Y_l[c] e_{f_l} for each pivot column c.
    for (std::size_t c : rr.pivot_columns) {
      Combination v{{c, Rational(1)}};
      for (std::size_t l = 0; l < rr.free_columns.size(); ++l) {
        const Rational& y = rr.annihilators[l][c];
        if (y != 0) v.emplace_back(rr.free_columns[l], -y);
      }
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      d.basis.push_back(std::move(v));
    }
  }

  void validate_against_full() {
    if (validated) return;
    QuotientOptions full = options;
    full.mode = SpanningMode::full;
    full.validate_small_degrees = false;
    full.record_provenance = false;
    Impl reference(r, e, full);
    for (std::size_t k = 1; k <= 8; ++k) {
      const std::size_t a = ensure(k).rank.rank;
      const std::size_t b = reference.ensure(k).rank.rank;
      if (a != b) {
        throw VerificationError("single-branch and full spanning disagree at (r=" + std::to_string(r) +
                                ", e=" + format_e(e) + ", m=" + std::to_string(k) + "): rank " +
                                std::to_string(a) + " vs " + std::to_string(b));
      }
    }
    validated = true;
  }

  bool contains(const TreeVector& v, std::size_t m) {
    Degree& d = ensure(m);
    std::vector<Rational> projected(d.columns.size(), 0);
    for (const auto& [tree, c] : v) {
      if (tree.vertex_count() != m) throw std::invalid_argument("vector is not homogeneous of degree " + std::to_string(m));
      auto it = d.column_of.find(tree.code());
      if (it != d.column_of.end()) projected[it->second] = c;
    }
    for (const auto& y : d.rank.annihilators) {
      Rational s = 0;
      for (std::size_t c = 0; c < y.size(); ++c) {
        if (y[c] != 0 && projected[c] != 0) s += y[c] * projected[c];
      }
      if (s != 0) return false;
    }
    return true;
  }
};

SubmoduleTower::SubmoduleTower(int r, std::optional<int> e, QuotientOptions options)
    : impl_(std::make_unique<Impl>(r, e, std::move(options))) {}
SubmoduleTower::~SubmoduleTower() = default;
SubmoduleTower::SubmoduleTower(SubmoduleTower&&) noexcept = default;
SubmoduleTower& SubmoduleTower::operator=(SubmoduleTower&&) noexcept = default;

QuotientReport SubmoduleTower::report(std::size_t m, bool with_nu) {
  Impl& s = *impl_;
  const auto start = std::chrono::steady_clock::now();
  if (s.options.mode == SpanningMode::single_branch && s.options.validate_small_degrees && m > 8) {
    s.validate_against_full();
  }
  const auto& d = s.ensure(m);
  QuotientReport rep;
  rep.params = {s.r, s.e, m};
  rep.dim_module = d.dim_module;
  rep.chain_trees = d.chain_trees;
  rep.high_degree_trees = d.high_degree;
  rep.product_vectors = d.product_vectors;
  rep.rank = d.high_degree + d.rank.rank;
  rep.dim_quotient = rep.dim_module - rep.rank;
  rep.mode = s.options.mode;
  rep.rank_method = d.rank.method;
  rep.primes = d.rank.primes;
  for (const auto& y : d.rank.annihilators) {
    std::map<std::string, Rational> sparse;
    for (std::size_t c = 0; c < y.size(); ++c) {
      if (y[c] != 0) sparse.emplace(d.columns[c].code(), y[c]);
    }
    rep.annihilators.push_back(std::move(sparse));
  }
  rep.provenance = d.provenance;
  if (with_nu) rep.nu_in_submodule = s.contains(nu(m), m);
  const double lookup = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep.wall_clock_seconds = std::max(lookup, d.seconds);
  rep.content_hash = sha256_hex(rep.payload().dump());
  return rep;
}

bool SubmoduleTower::contains(const TreeVector& v, std::size_t m) { return impl_->contains(v, m); }

QuotientReport graded_rank(const QuotientParams& params, const QuotientOptions& options) {
  SubmoduleTower tower(params.r, params.e, options);
  return tower.report(params.m, false);
}

bool nu_in_submodule(const QuotientParams& params, const QuotientOptions& options) {
  SubmoduleTower tower(params.r, params.e, options);
  return tower.contains(nu(params.m), params.m);
}

WindowReport gap_window_check(int r, std::optional<int> e, std::size_t M, const QuotientOptions& options) {
  if (M < 1) throw std::invalid_argument("window parameter M must be at least 1");
  WindowReport out;
  out.r = r;
  out.e = e;
  out.M = M;
  SubmoduleTower tower(r, e, options);
  try {
    for (std::size_t m = M + 1; m <= 2 * M; ++m) out.degrees.push_back(tower.report(m, true));
    out.complete = true;
  } catch (const ResourceLimitError& err) {
    out.stopped_reason = err.what();
  }
  out.verdict = out.complete && std::all_of(out.degrees.begin(), out.degrees.end(),
                                            [](const QuotientReport& q) { return q.nu_in_submodule.value_or(false); });
  return out;
}

nlohmann::json QuotientReport::payload() const {
  nlohmann::json j;
  j["schema"] = "gltrees.quotient/1";
  j["params"] = {{"r", params.r}, {"e", format_e(params.e)}, {"m", params.m}};
  j["dim_module"] = dim_module;
  j["generators"] = {{"chain_trees", chain_trees},
                     {"high_degree_trees", high_degree_trees},
                     {"product_vectors", product_vectors}};
  j["rank"] = rank;
  j["dim_quotient"] = dim_quotient;
  j["nu_in_submodule"] = nu_in_submodule ? nlohmann::json(*nu_in_submodule) : nlohmann::json(nullptr);
  j["mode"] = to_string(mode);
  j["rank_method"] = rank_method;
  j["primes"] = primes;
  nlohmann::json ann = nlohmann::json::array();
  for (const auto& y : annihilators) {
    nlohmann::json obj = nlohmann::json::object();
    for (const auto& [code, v] : y) obj[code] = rational_json(v);
    ann.push_back(std::move(obj));
  }
  j["annihilators"] = std::move(ann);
  j["provenance"] = provenance;
  return j;
}

nlohmann::json QuotientReport::to_json() const {
  nlohmann::json j = payload();
  j["content_hash"] = content_hash;
  j["wall_clock_seconds"] = wall_clock_seconds;
  return j;
}

nlohmann::json WindowReport::to_json() const {
  nlohmann::json j;
  j["schema"] = "gltrees.window/1";
  j["params"] = {{"r", r}, {"e", format_e(e)}, {"M", M}};
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& q : degrees) {
    rows.push_back({{"m", q.params.m},
                    {"dim_quotient", q.dim_quotient},
                    {"nu_in_submodule", q.nu_in_submodule.value_or(false)},
                    {"content_hash", q.content_hash}});
  }
  j["degrees"] = std::move(rows);
  j["complete"] = complete;
  j["verdict"] = verdict;
  if (!stopped_reason.empty()) j["stopped_reason"] = stopped_reason;
  return j;
}

}  // namespace gltrees
