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

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace gltrees {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Reduced "p/q" form, or "p" when the denominator is one.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Parses "p" or "p/q" with optional sign; throws std::invalid_argument.
Rational parse_rational(const std::string& text);

}  // namespace gltrees
