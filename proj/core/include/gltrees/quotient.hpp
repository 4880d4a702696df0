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

// Tree quotient modules.
//
// C(r) is the H-submodule of M generated by trees containing a naked r-chain,
// V(e) the span of trees with a vertex of degree >= e+1, N(r,e) = C(r)+V(e),
// and the quotient is M/N(r,e).  Everything here is graded by vertex count
// and computed one degree at a time with exact ranks.
//
// Since V(e) is itself a submodule spanned by basis trees, rows are reduced
// modulo V(e) by dropping high-degree trees before elimination; the rank of
// N(r,e)_m is |V(e)_m| plus the rank of the reduced rows.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gltrees/gl_algebra.hpp"
#include "gltrees/linalg.hpp"
#include "gltrees/trees.hpp"

namespace gltrees {

struct QuotientParams {
  int r = 3;
  std::optional<int> e;  // nullopt is infinity
  std::size_t m = 1;
};

enum class SpanningMode {
  /// h . g for every rooted tree h and every chain generator g.
  full,
  /// h . b for single-branch rooted trees h and a basis b of N(r,e) in lower
  /// degree.  Single-branch trees generate H as an algebra, so iterating this
  /// step yields the whole submodule.
  single_branch,
};

struct QuotientOptions {
  SpanningMode mode = SpanningMode::single_branch;
  RankMethod rank_method = RankMethod::automatic;
  std::size_t max_degree = 15;
  std::size_t max_rows = 2'000'000;
  bool allow_large = false;
  unsigned threads = 1;
  /// In single-branch mode, compare ranks against full mode for m <= 8
  /// before reporting any degree above 8.
  bool validate_small_degrees = true;
  bool record_provenance = true;
};

struct QuotientReport {
  QuotientParams params;
  std::size_t dim_module = 0;  // t_m
  std::size_t chain_trees = 0;
  std::size_t high_degree_trees = 0;
  std::size_t product_vectors = 0;
  std::size_t rank = 0;  // of N(r,e)_m inside M_m
  std::size_t dim_quotient = 0;
  std::optional<bool> nu_in_submodule;
  SpanningMode mode = SpanningMode::single_branch;
  std::string rank_method;
  std::vector<std::uint32_t> primes;
  /// Exact functionals on M_m (sparse, keyed by tree code) vanishing on
  /// N(r,e)_m, one per quotient dimension.
  std::vector<std::map<std::string, Rational>> annihilators;
  std::vector<std::string> provenance;
  double wall_clock_seconds = 0;
  std::string content_hash;

  /// Deterministic certificate body: no timing, no hash.
  nlohmann::json payload() const;
  nlohmann::json to_json() const;
};

std::vector<FreeTree> chain_generators(int r, std::size_t m);
std::vector<FreeTree> high_degree_trees(std::optional<int> e, std::size_t m);

struct SpanningVector {
  TreeVector vector;
  std::string provenance;
};

/// Explicit spanning set of N(r,e)_m in full mode, without reduction modulo
/// V(e).  Meant for small degrees and for cross-checks.
std::vector<SpanningVector> spanning_set(int r, std::optional<int> e, std::size_t m,
                                         const QuotientOptions& options = {});

/// nu_m = sum over free trees T with m vertices of T / |Aut T|.
TreeVector nu(std::size_t m);

/// Degree-by-degree computation of N(r,e), caching lower degrees (single
/// branch mode needs them).
class SubmoduleTower {
 public:
  SubmoduleTower(int r, std::optional<int> e, QuotientOptions options = {});
  ~SubmoduleTower();
  SubmoduleTower(SubmoduleTower&&) noexcept;
  SubmoduleTower& operator=(SubmoduleTower&&) noexcept;

  /// Report for degree m; `with_nu` fills nu_in_submodule.
  QuotientReport report(std::size_t m, bool with_nu = false);

  /// Whether the image of v (homogeneous of degree m) vanishes in the quotient.
  bool contains(const TreeVector& v, std::size_t m);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

QuotientReport graded_rank(const QuotientParams& params, const QuotientOptions& options = {});
bool nu_in_submodule(const QuotientParams& params, const QuotientOptions& options = {});

struct WindowReport {
  int r = 0;
  std::optional<int> e;
  std::size_t M = 0;
  std::vector<QuotientReport> degrees;  // m = M+1 .. 2M, possibly truncated
  bool complete = false;
  bool verdict = false;  // nu vanishes at every degree of a complete window
  std::string stopped_reason;

  nlohmann::json to_json() const;
};

/// Checks nu_m = 0 in the quotient for M+1 <= m <= 2M.  A resource guard hit
/// part-way returns the partial window with complete = false.
WindowReport gap_window_check(int r, std::optional<int> e, std::size_t M, const QuotientOptions& options = {});

std::string to_string(SpanningMode mode);
std::string format_e(std::optional<int> e);

}  // namespace gltrees
