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

#include "qcong/products.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qcong/error.hpp"
#include "qcong/numtheory.hpp"

namespace qcong {
namespace {

// Integers v in [lo, hi] with v = residue (mod s).
std::int64_t count_in_class(std::int64_t lo, std::int64_t hi,
                            std::int64_t residue, std::int64_t s) {
  if (hi < lo) return 0;
  return floor_div(hi - residue, s) - floor_div(lo - 1 - residue, s);
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t s) {
  return static_cast<std::int64_t>(static_cast<__int128>(mod_floor(a, s)) *
                                   mod_floor(b, s) % s);
}

BigInt triangular(std::int64_t n) {
  return BigInt(n) * (n + 1) / 2;
}

Rational abs_diff(const Rational& a, const Rational& b) {
  const Rational d = a - b;
  return d < 0 ? Rational(-d) : d;
}

// Squarefree divisors of s with their Moebius signs.
std::vector<std::pair<std::int64_t, int>> mobius_divisors(std::int64_t s) {
  std::vector<std::pair<std::int64_t, int>> out{{1, 1}};
  for (const auto& pp : factorize(static_cast<std::uint64_t>(s))) {
    const std::size_t base = out.size();
    for (std::size_t i = 0; i < base; ++i) {
      out.emplace_back(out[i].first * static_cast<std::int64_t>(pp.prime),
                       -out[i].second);
    }
  }
  return out;
}

}  // namespace

IntervalFamily::IntervalFamily(std::int64_t s, std::int64_t X,
                               std::int64_t first_u)
    : s_(s), X_(X), first_u_(first_u) {
  if (s < 1) throw Error(ErrorCode::kOutOfRange, "family modulus must be >= 1");
  if (first_u < 1) throw Error(ErrorCode::kOutOfRange, "first u must be >= 1");
  for (std::int64_t u = first_u; u <= X; ++u) {
    entries_.push_back({u, std::gcd(u, s) == 1, 0, -1});
  }
}

void IntervalFamily::set(std::int64_t u, std::int64_t start,
                         std::int64_t length) {
  if (u < first_u_ || u > X_) {
    throw Error(ErrorCode::kOutOfRange,
                "u=" + std::to_string(u) + " outside the family range");
  }
  auto& e = entries_[static_cast<std::size_t>(u - first_u_)];
  e.start = start;
  e.length = std::max<std::int64_t>(length, -1);
}

IntervalFamily IntervalFamily::uniform(std::int64_t s, std::int64_t X,
                                       std::int64_t start,
                                       std::int64_t length) {
  IntervalFamily fam(s, X);
  for (std::int64_t u = 2; u <= X; ++u) fam.set(u, start, length);
  return fam;
}

const IntervalEntry& IntervalFamily::entry(std::int64_t u) const {
  if (u < first_u_ || u > X_) {
    throw Error(ErrorCode::kOutOfRange,
                "u=" + std::to_string(u) + " outside the family range");
  }
  return entries_[static_cast<std::size_t>(u - first_u_)];
}

std::int64_t IntervalFamily::max_length() const {
  std::int64_t best = 0;
  for (const auto& e : entries_) {
    if (e.active) best = std::max(best, e.length);
  }
  return best;
}

std::int64_t IntervalFamily::active_count() const {
  return std::count_if(entries_.begin(), entries_.end(),
                       [](const IntervalEntry& e) { return e.active; });
}

std::int64_t t_count(const IntervalFamily& family, std::int64_t a) {
  const std::int64_t s = family.modulus();
  if (a < 0 || a >= s) {
    throw Error(ErrorCode::kOutOfRange,
                "a must lie in [0, s) (got a=" + std::to_string(a) +
                    ", s=" + std::to_string(s) + ")");
  }
  std::int64_t total = 0;
  for (const auto& e : family.entries()) {
    if (!e.active || e.empty()) continue;
    const std::int64_t residue = mul_mod(a, mod_inverse(e.u, s), s);
    total += count_in_class(e.start, e.start + e.length, residue, s);
  }
  return total;
}

std::vector<std::int64_t> t_counts(const IntervalFamily& family) {
  const std::int64_t s = family.modulus();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(s), 0);
  std::int64_t every = 0;
  for (const auto& e : family.entries()) {
    if (!e.active || e.empty()) continue;
    const std::int64_t terms = e.length + 1;
    every += terms / s;
    const std::int64_t u = e.u % s;
    std::int64_t a = mul_mod(u, e.start, s);
    for (std::int64_t k = 0; k < terms % s; ++k) {
      ++counts[static_cast<std::size_t>(a)];
      a += u;
      if (a >= s) a -= s;
    }
  }
  if (every != 0) {
    for (auto& c : counts) c += every;
  }
  return counts;
}

Rational t_main_term(const IntervalFamily& family) {
  std::int64_t sum = 0;
  for (const auto& e : family.entries()) {
    if (e.active && !e.empty()) sum += e.length;
  }
  return Rational(BigInt(sum), BigInt(family.modulus()));
}

Rational t_second_moment(const IntervalFamily& family) {
  const std::int64_t s = family.modulus();
  if (s > kSecondMomentModulusLimit) {
    throw Error(ErrorCode::kOracleScaleExceeded,
                "t_second_moment is limited to s <= 10^4");
  }
  std::int64_t length_sum = 0;
  for (const auto& e : family.entries()) {
    if (e.active && !e.empty()) length_sum += e.length;
  }
  // sum_a (T_a - S/s)^2 = sum_a (s T_a - S)^2 / s^2
  BigInt acc = 0;
  for (std::int64_t t : t_counts(family)) {
    const BigInt diff = BigInt(s) * t - length_sum;
    acc += diff * diff;
  }
  return Rational(acc, BigInt(s) * s);
}

Rational CoprimeCount::deviation() const {
  return abs_diff(Rational(exact), main);
}

CoprimeCount coprime_count(std::int64_t W, std::int64_t Z, std::int64_t s) {
  if (Z < 1 || s < 1) {
    throw Error(ErrorCode::kOutOfRange, "coprime_count expects Z >= 1, s >= 1");
  }
  CoprimeCount out;
  for (const auto& [d, mu] : mobius_divisors(s)) {
    out.exact += mu * (floor_div(W + Z, d) - floor_div(W, d));
  }
  const auto phi = static_cast<std::int64_t>(euler_phi(static_cast<std::uint64_t>(s)));
  out.main = Rational(BigInt(phi) * Z, BigInt(s));
  out.error_bound =
      static_cast<std::int64_t>(tau_count(static_cast<std::uint64_t>(s)));
  return out;
}

Rational CoprimeSum::deviation() const {
  return abs_diff(Rational(exact), main);
}

Rational CoprimeSum::interval_deviation() const {
  return abs_diff(Rational(exact), interval_main);
}

CoprimeSum coprime_weighted_sum(std::int64_t W, std::int64_t Z,
                                std::int64_t s) {
  if (Z < 1 || s < 1 || W < 0) {
    throw Error(ErrorCode::kOutOfRange,
                "coprime_weighted_sum expects W >= 0, Z >= 1, s >= 1");
  }
  CoprimeSum out;
  out.exact = 0;
  // Multiples of d in (W, W+Z] sum to d * (T(hi/d) - T(W/d)).
  for (const auto& [d, mu] : mobius_divisors(s)) {
    const BigInt part =
        BigInt(d) * (triangular((W + Z) / d) - triangular(W / d));
    if (mu > 0) {
      out.exact += part;
    } else {
      out.exact -= part;
    }
  }
  const auto phi = static_cast<std::int64_t>(euler_phi(static_cast<std::uint64_t>(s)));
  out.main = Rational(BigInt(phi) * Z * (W + Z), BigInt(2) * s);
  out.interval_main = Rational(BigInt(phi) * Z * (2 * W + Z), BigInt(2) * s);
  out.envelope = 4 * (W + Z + 1) *
                 static_cast<std::int64_t>(tau_count(static_cast<std::uint64_t>(s)));
  return out;
}

ExpSumDiagnostic linear_exp_sum(std::int64_t Z, std::int64_t H, std::int64_t r,
                                std::int64_t s) {
  if (s < 1 || H < 1) {
    throw Error(ErrorCode::kOutOfRange, "linear_exp_sum expects H >= 1, s >= 1");
  }
  static_cast<void>(Z);  // a shift only rotates the sum
  std::int64_t freq = mod_floor(r, s);
  if (freq == 0) throw ZeroFrequency(H);
  if (2 * freq > s) freq -= s;

  // sin(pi * freq * H / s) with the argument reduced modulo 2s first.
  const auto twice = static_cast<__int128>(2) * s;
  __int128 top = static_cast<__int128>(freq) * H % twice;
  if (top < 0) top += twice;
  const double pi = std::numbers::pi;
  const double numer = std::sin(pi * static_cast<double>(top) / static_cast<double>(s));
  const double denom = std::sin(pi * static_cast<double>(freq) / static_cast<double>(s));

  ExpSumDiagnostic out;
  out.magnitude = std::abs(numer / denom);
  out.bound = std::min(static_cast<double>(H),
                       static_cast<double>(s) / (2.0 * std::abs(static_cast<double>(freq))));
  return out;
}

}  // namespace qcong
