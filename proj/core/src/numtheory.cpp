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

#include "qcong/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>

#include "qcong/error.hpp"

namespace qcong {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kTrialLimit = 1'000'000;
constexpr int kRhoAttempts = 64;
constexpr u64 kRhoIterationCap = 1ULL << 24;

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Brent's cycle detection with batched gcds. Returns a nontrivial factor or
// n itself when this polynomial constant fails.
u64 rho_brent(u64 n, u64 c) {
  u64 y = 2, x = 2, ys = 2, g = 1, r = 1, q = 1;
  constexpr u64 kBatch = 128;
  auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
  u64 iterations = 0;
  do {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    u64 k = 0;
    do {
      ys = y;
      for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
        y = f(y);
        q = mul_mod(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
      k += kBatch;
      iterations += kBatch;
    } while (k < r && g == 1);
    r <<= 1;
  } while (g == 1 && iterations < kRhoIterationCap);

  if (g == n) {
    do {
      ys = f(ys);
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

void split(u64 n, std::vector<u64>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  // Perfect squares trip up rho with small constants often enough.
  const u64 root = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  for (u64 cand = root > 0 ? root - 1 : 0; cand <= root + 1; ++cand) {
    if (cand > 1 && cand * cand == n) {
      split(cand, primes);
      split(cand, primes);
      return;
    }
  }
  for (int attempt = 1; attempt <= kRhoAttempts; ++attempt) {
    const u64 d = rho_brent(n, static_cast<u64>(attempt));
    if (d != 1 && d != n) {
      split(d, primes);
      split(n / d, primes);
      return;
    }
  }
  // Unreachable for composites below 2^63 in practice; keep the cofactor
  // rather than loop forever.
  primes.push_back(n);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0 || n > static_cast<u64>(std::numeric_limits<std::int64_t>::max())) {
    throw Error(ErrorCode::kOutOfRange,
                "factorize expects 1 <= n <= 2^63-1");
  }
  Factorization out;
  auto take = [&](u64 p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  };
  take(2);
  for (u64 p = 3; p <= kTrialLimit && p * p <= n; p += 2) take(p);
  if (n == 1) return out;

  std::vector<u64> primes;
  split(n, primes);
  std::sort(primes.begin(), primes.end());
  for (u64 p : primes) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

std::uint64_t reconstruct(const Factorization& factors) {
  u64 n = 1;
  for (const auto& [p, e] : factors) {
    for (unsigned i = 0; i < e; ++i) n *= p;
  }
  return n;
}

std::uint64_t euler_phi(const Factorization& factors) {
  u64 phi = 1;
  for (const auto& [p, e] : factors) {
    phi *= p - 1;
    for (unsigned i = 1; i < e; ++i) phi *= p;
  }
  return phi;
}

std::uint64_t euler_phi(std::uint64_t n) { return euler_phi(factorize(n)); }

std::uint64_t tau_count(const Factorization& factors) {
  u64 tau = 1;
  for (const auto& pp : factors) tau *= pp.exponent + 1;
  return tau;
}

std::uint64_t tau_count(std::uint64_t n) { return tau_count(factorize(n)); }

std::vector<std::uint64_t> divisors(const Factorization& factors) {
  std::vector<u64> out{1};
  for (const auto& [p, e] : factors) {
    const std::size_t base = out.size();
    u64 power = 1;
    for (unsigned i = 1; i <= e; ++i) {
      power *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  return divisors(factorize(n));
}

int mobius(const Factorization& factors) {
  for (const auto& pp : factors) {
    if (pp.exponent > 1) return 0;
  }
  return factors.size() % 2 == 0 ? 1 : -1;
}

int mobius(std::uint64_t n) { return mobius(factorize(n)); }

std::int64_t mod_inverse(std::int64_t a, std::int64_t s) {
  if (s < 1) {
    throw Error(ErrorCode::kOutOfRange, "mod_inverse expects s >= 1");
  }
  if (s == 1) return 0;
  // Extended Euclid on (a mod s, s).
  std::int64_t old_r = mod_floor(a, s), r = s;
  std::int64_t old_x = 1, x = 0;
  while (r != 0) {
    const std::int64_t quot = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - quot * r};
    std::tie(old_x, x) = std::pair{x, old_x - quot * x};
  }
  if (old_r != 1) {
    throw Error(ErrorCode::kNotInvertible,
                std::to_string(a) + " is not invertible modulo " +
                    std::to_string(s));
  }
  return mod_floor(old_x, s);
}

std::uint64_t hb_r(const Factorization& factors) {
  u64 r = 1;
  for (const auto& [p, e] : factors) {
    if (p == 2 || e > 1) {
      for (unsigned i = 0; i < e; ++i) r *= p;
    }
  }
  return r;
}

std::uint64_t hb_r(const ModulusProfile& profile) {
  return hb_r(profile.factorization);
}

ModulusProfile ModulusProfile::of(std::uint64_t q) {
  ModulusProfile profile;
  profile.q = q;
  profile.factorization = factorize(q);
  profile.phi = euler_phi(profile.factorization);
  profile.tau = tau_count(profile.factorization);
  profile.r = hb_r(profile.factorization);
  profile.odd = profile.factorization.empty() ||
                profile.factorization.front().prime != 2;
  return profile;
}

}  // namespace qcong
