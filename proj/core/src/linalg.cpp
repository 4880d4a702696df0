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

#include "gltrees/linalg.hpp"

#include <algorithm>
#include <mutex>
#include <optional>
#include <stdexcept>

#include "gltrees/errors.hpp"

namespace gltrees {

namespace {

// ---------------------------------------------------------------------------
// Fraction-free route.

RankResult fraction_free(std::span<const SparseRow> rows, std::size_t cols) {
  std::vector<std::vector<BigInt>> m;
  m.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.empty()) continue;
    BigInt scale = 1;
    for (const auto& [c, v] : row.entries) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den_mpz_t());
    std::vector<BigInt> dense(cols, 0);
    for (const auto& [c, v] : row.entries) dense[c] = v.get_num() * (scale / v.get_den());
    m.push_back(std::move(dense));
  }

  RankResult result;
  result.method = "fraction-free";
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::optional<std::size_t> pivot;
    for (std::size_t i = r; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      if (!pivot || abs(m[i][c]) < abs(m[*pivot][c])) pivot = i;
    }
    if (!pivot) {
      result.free_columns.push_back(c);
      continue;
    }
    std::swap(m[r], m[*pivot]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        BigInt t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    result.pivot_columns.push_back(c);
    ++r;
  }
  result.rank = r;

  for (std::size_t f : result.free_columns) {
    std::vector<Rational> x(cols, 0);
    x[f] = 1;
    for (std::size_t k = r; k-- > 0;) {
      const std::size_t pc = result.pivot_columns[k];
      Rational s = 0;
      for (std::size_t j = pc + 1; j < cols; ++j) {
        if (x[j] != 0 && m[k][j] != 0) s += Rational(m[k][j]) * x[j];
      }
      x[pc] = -s / Rational(m[k][pc]);
    }
    result.annihilators.push_back(std::move(x));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Modular route.

using u64 = std::uint64_t;

u64 pow_mod(u64 b, u64 e, u64 p) {
  u64 r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<u64>(d) * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint32_t>& prime_pool() {
  static std::vector<std::uint32_t> pool;
  return pool;
}

std::uint32_t nth_prime(std::size_t k) {
  // Descending primes below 2^31; generated on demand.
  static std::mutex mutex;
  std::lock_guard lock(mutex);
  auto& pool = prime_pool();
  std::uint32_t candidate = pool.empty() ? 2147483647u : pool.back() - 2;
  while (pool.size() <= k) {
    while (!is_prime(candidate)) candidate -= 2;
    pool.push_back(candidate);
    candidate -= 2;
  }
  return pool[k];
}

std::optional<u64> to_mod(const Rational& q, u64 p) {
  u64 den = mpz_fdiv_ui(q.get_den_mpz_t(), static_cast<unsigned long>(p));
  if (den == 0) return std::nullopt;
  u64 num = mpz_fdiv_ui(q.get_num_mpz_t(), static_cast<unsigned long>(p));
  return num * inv_mod(den, p) % p;
}

struct ModularEchelon {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
  std::vector<std::size_t> free_columns;
  // pivot_rows[c] holds (column, value) with the leading entry 1 at column c.
  std::vector<std::vector<std::pair<std::size_t, u64>>> pivot_rows;
};

std::optional<ModularEchelon> echelon_mod(std::span<const SparseRow> rows, std::size_t cols, u64 p) {
  ModularEchelon e;
  e.pivot_rows.resize(cols);
  std::vector<bool> has_pivot(cols, false);
  std::vector<u64> acc(cols, 0);
  for (const auto& row : rows) {
    if (row.empty()) continue;
    std::size_t first = row.entries.front().first;
    for (const auto& [c, v] : row.entries) {
      auto m = to_mod(v, p);
      if (!m) return std::nullopt;
      acc[c] = *m;
    }
    for (std::size_t c = first; c < cols; ++c) {
      if (acc[c] == 0) continue;
      if (has_pivot[c]) {
        const u64 f = p - acc[c];
        for (const auto& [j, u] : e.pivot_rows[c]) acc[j] = (acc[j] + f * u) % p;
        continue;
      }
      const u64 inv = inv_mod(acc[c], p);
      auto& out = e.pivot_rows[c];
      for (std::size_t j = c; j < cols; ++j) {
        if (acc[j] != 0) {
          out.emplace_back(j, acc[j] * inv % p);
          acc[j] = 0;
        }
      }
      has_pivot[c] = true;
      ++e.rank;
      break;
    }
    std::fill(acc.begin() + static_cast<std::ptrdiff_t>(first), acc.end(), 0);
  }
  for (std::size_t c = 0; c < cols; ++c) (has_pivot[c] ? e.pivot_columns : e.free_columns).push_back(c);
  return e;
}

std::vector<std::vector<u64>> kernel_mod(const ModularEchelon& e, std::size_t cols, u64 p) {
  std::vector<std::vector<u64>> out;
  for (std::size_t f : e.free_columns) {
    std::vector<u64> x(cols, 0);
    x[f] = 1;
    for (std::size_t k = e.pivot_columns.size(); k-- > 0;) {
      const std::size_t pc = e.pivot_columns[k];
      u64 s = 0;
      for (const auto& [j, u] : e.pivot_rows[pc]) {
        if (j != pc && x[j] != 0) s = (s + u * x[j]) % p;
      }
      x[pc] = (p - s) % p;
    }
    out.push_back(std::move(x));
  }
  return out;
}

RankResult modular(std::span<const SparseRow> rows, std::size_t cols) {
  constexpr std::size_t kMaxPrimes = 400;
  std::optional<ModularEchelon> base;
  std::vector<std::uint32_t> used;
  BigInt modulus = 1;
  std::vector<std::vector<BigInt>> residues;  // CRT images of the kernel basis
  std::vector<std::vector<Rational>> previous;

  for (std::size_t k = 0; k < kMaxPrimes; ++k) {
    const u64 p = nth_prime(k);
    auto e = echelon_mod(rows, cols, p);
    if (!e) continue;  // p divides a denominator
    if (!base || e->rank > base->rank) {
      // A larger modular rank means every earlier prime was unlucky.
      base = std::move(e);
      used.assign(1, static_cast<std::uint32_t>(p));
      modulus = static_cast<unsigned long>(p);
      residues.clear();
      previous.clear();
      for (auto& x : kernel_mod(*base, cols, p)) {
        std::vector<BigInt> v(cols);
        for (std::size_t j = 0; j < cols; ++j) v[j] = static_cast<unsigned long>(x[j]);
        residues.push_back(std::move(v));
      }
    } else if (e->rank < base->rank || e->free_columns != base->free_columns) {
      continue;
    } else {
      auto kernel = kernel_mod(*e, cols, p);
      const u64 m_mod_p = mpz_fdiv_ui(modulus.get_mpz_t(), static_cast<unsigned long>(p));
      const u64 m_inv = inv_mod(m_mod_p, p);
      for (std::size_t i = 0; i < residues.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
          const u64 cur = mpz_fdiv_ui(residues[i][j].get_mpz_t(), static_cast<unsigned long>(p));
          const u64 delta = (kernel[i][j] + p - cur) % p * m_inv % p;
          residues[i][j] += modulus * static_cast<unsigned long>(delta);
        }
      }
      modulus *= static_cast<unsigned long>(p);
      used.push_back(static_cast<std::uint32_t>(p));
    }

    RankResult result;
    result.method = "modular";
    result.rank = base->rank;
    result.pivot_columns = base->pivot_columns;
    result.free_columns = base->free_columns;
    result.primes = used;
    if (result.free_columns.empty()) return result;

    std::vector<std::vector<Rational>> lifted;
    bool ok = true;
    for (const auto& v : residues) {
      std::vector<Rational> x(cols);
      for (std::size_t j = 0; j < cols && ok; ++j) ok = rational_reconstruct(v[j], modulus, x[j]);
      if (!ok) break;
      lifted.push_back(std::move(x));
    }
    if (!ok) continue;
    // Only pay for exact verification once the reconstruction is stable.
    if (lifted != previous) {
      previous = std::move(lifted);
      continue;
    }
    bool verified = true;
    for (const auto& x : previous) {
      if (!annihilates(rows, x)) {
        verified = false;
        break;
      }
    }
    if (!verified) continue;
    result.annihilators = std::move(previous);
    return result;
  }
  throw VerificationError("modular rank: kernel could not be certified after " + std::to_string(kMaxPrimes) +
                          " primes");
}

}  // namespace

bool rational_reconstruct(const BigInt& a, const BigInt& modulus, Rational& out) {
  BigInt bound;
  BigInt half = modulus / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  BigInt r0 = modulus, r1 = a % modulus;
  if (r1 < 0) r1 += modulus;
  BigInt s0 = 0, s1 = 1;
  while (r1 > bound) {
    BigInt q = r0 / r1;
    BigInt t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (abs(s1) > bound || s1 == 0) return false;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
  if (g != 1) return false;
  out = Rational(r1, s1);
  out.canonicalize();
  return true;
}

bool annihilates(std::span<const SparseRow> rows, const std::vector<Rational>& x) {
  for (const auto& row : rows) {
    Rational s = 0;
    for (const auto& [c, v] : row.entries) {
      if (x[c] != 0) s += v * x[c];
    }
    if (s != 0) return false;
  }
  return true;
}

std::size_t modular_rank(std::span<const SparseRow> rows, std::size_t cols, std::uint32_t p) {
  auto e = echelon_mod(rows, cols, p);
  if (!e) throw std::invalid_argument("prime divides a denominator");
  return e->rank;
}

RankResult certified_rank(std::span<const SparseRow> rows, std::size_t cols, RankMethod method) {
  if (method == RankMethod::automatic) {
    method = rows.size() * cols <= kFractionFreeCells ? RankMethod::fraction_free : RankMethod::modular;
  }
  return method == RankMethod::fraction_free ? fraction_free(rows, cols) : modular(rows, cols);
}

}  // namespace gltrees
