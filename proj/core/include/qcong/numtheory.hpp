// Copyright 2026 The qcong Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

namespace qcong {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime powers sorted by strictly increasing prime; empty for n = 1.
using Factorization = std::vector<PrimePower>;

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Trial division up to 10^6, then Pollard rho (Brent variant, fixed
/// polynomial schedule) on whatever cofactor is left. Requires
/// 1 <= n <= 2^63 - 1.
Factorization factorize(std::uint64_t n);

std::uint64_t reconstruct(const Factorization& factors);

std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t euler_phi(const Factorization& factors);

std::uint64_t tau_count(std::uint64_t n);
std::uint64_t tau_count(const Factorization& factors);

/// All positive divisors in ascending order.
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::vector<std::uint64_t> divisors(const Factorization& factors);

int mobius(std::uint64_t n);
int mobius(const Factorization& factors);

/// Inverse of a modulo s in [0, s). For s = 1 the answer is 0.
/// Throws Error(kNotInvertible) when gcd(a, s) != 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t s);

/// Floor division for signed operands (b > 0).
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  const std::int64_t quot = a / b;
  return (a % b != 0 && a < 0) ? quot - 1 : quot;
}

/// a mod s mapped into [0, s) for any sign of a.
constexpr std::int64_t mod_floor(std::int64_t a, std::int64_t s) {
  const std::int64_t rem = a % s;
  return rem < 0 ? rem + s : rem;
}

struct ModulusProfile {
  std::uint64_t q = 1;
  Factorization factorization;
  std::uint64_t phi = 1;
  std::uint64_t tau = 1;
  std::uint64_t r = 1;
  bool odd = true;

  static ModulusProfile of(std::uint64_t q);
};

/// Product of p^alpha over the prime powers of q with p = 2 or alpha > 1:
/// the even-and-powerful part of q.
std::uint64_t hb_r(const ModulusProfile& profile);
std::uint64_t hb_r(const Factorization& factors);

}  // namespace qcong
