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

#include "qcong/counting.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <thread>

#include "qcong/error.hpp"
#include "qcong/numtheory.hpp"

namespace qcong {
namespace {

std::int64_t square_mod(std::int64_t m, std::int64_t q) {
  const auto r = static_cast<__int128>(m % q);
  return static_cast<std::int64_t>(r * r % q);
}

// Squares of 1..limit reduced mod q.
std::vector<std::int64_t> squares_mod(std::int64_t limit, std::int64_t q) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(limit));
  for (std::int64_t k = 1; k <= limit; ++k) out[k - 1] = square_mod(k, q);
  return out;
}

void fill_slice(const std::vector<std::int64_t>& msq,
                const std::vector<std::int64_t>& nsq, std::int64_t q,
                std::size_t first, std::size_t last,
                std::vector<std::int64_t>& counts) {
  // counts is indexed by the residue 0..q-1 here; relabelled by the caller.
  for (std::size_t i = first; i < last; ++i) {
    const std::int64_t a = msq[i];
    for (std::int64_t b : nsq) {
      std::int64_t r = a - b;
      if (r < 0) r += q;
      ++counts[static_cast<std::size_t>(r)];
    }
  }
}

}  // namespace

void validate(const BoxSpec& box) {
  require_odd_modulus(box.q);
  if (box.M < 1 || box.M > box.q || box.N < 1 || box.N > box.q) {
    throw Error(ErrorCode::kOutOfRange,
                "box sides must satisfy 1 <= M, N <= q (got M=" +
                    std::to_string(box.M) + ", N=" + std::to_string(box.N) +
                    ", q=" + std::to_string(box.q) + ")");
  }
}

std::int64_t class_label(std::int64_t value, std::int64_t q) {
  const std::int64_t r = mod_floor(value, q);
  return r == 0 ? q : r;
}

void require_class(std::int64_t c, std::int64_t q) {
  if (c < 1 || c > q) {
    throw Error(ErrorCode::kOutOfRange,
                "class c must lie in [1, q] (got c=" + std::to_string(c) +
                    ", q=" + std::to_string(q) + ")");
  }
}

std::int64_t count_box_brute(const BoxSpec& box, std::int64_t c) {
  validate(box);
  require_class(c, box.q);
  const std::int64_t target = c % box.q;
  std::int64_t count = 0;
  for (std::int64_t m = 1; m <= box.M; ++m) {
    const std::int64_t a = square_mod(m, box.q);
    for (std::int64_t n = 1; n <= box.N; ++n) {
      if (mod_floor(a - square_mod(n, box.q), box.q) == target) ++count;
    }
  }
  return count;
}

std::int64_t Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

Histogram count_distribution(const BoxSpec& box, unsigned shards) {
  validate(box);
  const std::int64_t q = box.q;
  const auto msq = squares_mod(box.M, q);
  const auto nsq = squares_mod(box.N, q);

  if (shards == 0) shards = std::max(1u, std::thread::hardware_concurrency());
  shards = static_cast<unsigned>(
      std::min<std::int64_t>(shards, std::max<std::int64_t>(1, box.M)));

  std::vector<std::vector<std::int64_t>> partial(
      shards, std::vector<std::int64_t>(static_cast<std::size_t>(q), 0));
  const std::size_t rows = msq.size();
  auto bounds = [&](unsigned k) {
    return std::pair{rows * k / shards, rows * (k + 1) / shards};
  };

  if (shards == 1) {
    fill_slice(msq, nsq, q, 0, rows, partial[0]);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(shards);
    for (unsigned k = 0; k < shards; ++k) {
      workers.emplace_back([&, k] {
        const auto [first, last] = bounds(k);
        fill_slice(msq, nsq, q, first, last, partial[k]);
      });
    }
  }

  Histogram hist;
  hist.q = q;
  hist.counts.assign(static_cast<std::size_t>(q), 0);
  for (const auto& part : partial) {
    for (std::int64_t r = 0; r < q; ++r) {
      hist.counts[static_cast<std::size_t>(class_label(r, q) - 1)] +=
          part[static_cast<std::size_t>(r)];
    }
  }
  return hist;
}

std::int64_t a0_exact(std::int64_t q, std::int64_t c) {
  require_odd_modulus(q);
  require_class(c, q);
  const auto d = static_cast<std::uint64_t>(std::gcd(c, q));
  std::int64_t total = 0;
  for (std::uint64_t f : divisors(d)) {
    total += static_cast<std::int64_t>(f * euler_phi(static_cast<std::uint64_t>(q) / f));
  }
  return total;
}

std::int64_t a0_brute(std::int64_t q, std::int64_t c) {
  require_odd_modulus(q);
  require_class(c, q);
  if (q > kOracleModulusLimit) {
    throw Error(ErrorCode::kOracleScaleExceeded,
                "a0_brute is limited to q <= 10^4");
  }
  const std::int64_t target = c % q;
  std::int64_t count = 0;
  for (std::int64_t u = 1; u <= q; ++u) {
    for (std::int64_t v = 1; v <= q; ++v) {
      if (u * v % q == target) ++count;
    }
  }
  return count;
}

A0Table::A0Table(std::int64_t q) : q_(q) {
  require_odd_modulus(q);
  const auto factors = factorize(static_cast<std::uint64_t>(q));
  const auto divs = divisors(factors);
  std::map<std::uint64_t, std::uint64_t> phi_of;
  for (std::uint64_t e : divs) phi_of[e] = euler_phi(e);
  for (std::uint64_t d : divs) {
    std::int64_t total = 0;
    for (std::uint64_t f : divs) {
      if (f > d) break;
      if (d % f == 0) {
        total += static_cast<std::int64_t>(f * phi_of.at(static_cast<std::uint64_t>(q) / f));
      }
    }
    by_divisor_[static_cast<std::int64_t>(d)] = total;
  }
}

std::int64_t A0Table::operator()(std::int64_t c) const {
  require_class(c, q_);
  return by_divisor_.at(std::gcd(c, q_));
}

DeltaRecord delta(const BoxSpec& box, std::int64_t c, std::int64_t a,
                  std::int64_t a0) {
  validate(box);
  require_class(c, box.q);
  DeltaRecord rec;
  rec.c = c;
  rec.a = a;
  rec.a0 = a0;
  const BigInt q = box.q;
  rec.expected_num = BigInt(box.M) * box.N * a0;
  const BigInt diff = q * q * a - rec.expected_num;
  rec.delta_sq_num = diff * diff;
  rec.scale = q * q * q * q;
  return rec;
}

DeltaRecord delta(const BoxSpec& box, std::int64_t c, std::int64_t a) {
  validate(box);
  return delta(box, c, a, a0_exact(box.q, c));
}

std::vector<DeltaRecord> delta_records(const BoxSpec& box) {
  const Histogram hist = count_distribution(box);
  const A0Table a0(box.q);
  std::vector<DeltaRecord> out;
  out.reserve(static_cast<std::size_t>(box.q));
  for (std::int64_t c = 1; c <= box.q; ++c) {
    out.push_back(delta(box, c, hist.at(c), a0(c)));
  }
  return out;
}

namespace {

// Numerators over the common denominator q^4, grouped by gcd(c, q).
std::map<std::int64_t, BigInt> stratum_numerators(const BoxSpec& box) {
  const Histogram hist = count_distribution(box);
  const A0Table a0(box.q);
  const BigInt q2 = BigInt(box.q) * box.q;
  const BigInt mn = BigInt(box.M) * box.N;
  std::map<std::int64_t, BigInt> sums;
  for (std::uint64_t d : divisors(static_cast<std::uint64_t>(box.q))) {
    sums[static_cast<std::int64_t>(d)] = 0;
  }
  for (std::int64_t c = 1; c <= box.q; ++c) {
    const std::int64_t d = std::gcd(c, box.q);
    const BigInt diff = q2 * hist.at(c) - mn * a0.for_divisor(d);
    sums[d] += diff * diff;
  }
  return sums;
}

BigInt fourth_power(std::int64_t q) {
  const BigInt b = q;
  return b * b * b * b;
}

}  // namespace

Rational second_moment(const BoxSpec& box) {
  validate(box);
  BigInt total = 0;
  for (const auto& [d, num] : stratum_numerators(box)) total += num;
  return Rational(total, fourth_power(box.q));
}

Rational stratified_moment(const BoxSpec& box, std::int64_t d) {
  validate(box);
  if (d < 1 || box.q % d != 0) {
    throw Error(ErrorCode::kNotADivisor,
                std::to_string(d) + " does not divide q=" +
                    std::to_string(box.q));
  }
  return Rational(stratum_numerators(box).at(d), fourth_power(box.q));
}

std::map<std::int64_t, Rational> stratified_moments(const BoxSpec& box) {
  validate(box);
  const BigInt scale = fourth_power(box.q);
  std::map<std::int64_t, Rational> out;
  for (const auto& [d, num] : stratum_numerators(box)) {
    out.emplace(d, Rational(num, scale));
  }
  return out;
}

}  // namespace qcong
