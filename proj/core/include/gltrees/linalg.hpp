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

// Exact rank of sparse rational matrices.
//
// Two routes are available and both are exact.  The fraction-free route runs
// Bareiss elimination over arbitrary-precision integers.  The modular route
// eliminates modulo a word-size prime, which bounds the rational rank from
// below, then lifts the modular kernel to rational vectors by Chinese
// remaindering and rational reconstruction and verifies them exactly against
// every row, which bounds the rank from above.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gltrees/rational.hpp"

namespace gltrees {

/// Entries sorted by strictly increasing column, no zeros.
struct SparseRow {
  std::vector<std::pair<std::size_t, Rational>> entries;

  bool empty() const noexcept { return entries.empty(); }
};

enum class RankMethod { automatic, fraction_free, modular };

struct RankResult {
  std::size_t rank = 0;
  /// Greedy left-to-right pivot columns; the remaining columns are free.
  std::vector<std::size_t> pivot_columns;
  std::vector<std::size_t> free_columns;
  /// One vector per free column f: x[f] = 1, x[g] = 0 for the other free
  /// columns, and row . x = 0 for every row.  Spans the annihilator of the
  /// row space.
  std::vector<std::vector<Rational>> annihilators;
  std::string method;
  std::vector<std::uint32_t> primes;
};

RankResult certified_rank(std::span<const SparseRow> rows, std::size_t cols,
                          RankMethod method = RankMethod::automatic);

/// Exact check that every row is orthogonal to x.
bool annihilates(std::span<const SparseRow> rows, const std::vector<Rational>& x);

/// Rows * cols at or below which the automatic method picks fraction-free elimination.
inline constexpr std::size_t kFractionFreeCells = 40000;

/// Rank modulo p only; exposed for tests and benchmarks.
std::size_t modular_rank(std::span<const SparseRow> rows, std::size_t cols, std::uint32_t p);

/// Rational n/d with |n|, d <= sqrt(modulus / 2) congruent to a; false if none.
bool rational_reconstruct(const BigInt& a, const BigInt& modulus, Rational& out);

}  // namespace gltrees
