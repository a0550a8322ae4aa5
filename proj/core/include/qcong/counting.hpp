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
#include <map>
#include <vector>

#include "qcong/rational.hpp"

namespace qcong {

/// The box 1 <= m <= M, 1 <= n <= N together with an odd modulus q.
/// Valid boxes satisfy 1 <= M, N <= q.
struct BoxSpec {
  std::int64_t M = 1;
  std::int64_t N = 1;
  std::int64_t q = 1;

  friend bool operator==(const BoxSpec&, const BoxSpec&) = default;
};

/// Throws EvenModulus for even q and OutOfRange for M or N outside [1, q].
void validate(const BoxSpec& box);

/// Residue classes are labelled c = 1..q with c = q standing for 0.
std::int64_t class_label(std::int64_t value, std::int64_t q);

/// Throws OutOfRange unless 1 <= c <= q.
void require_class(std::int64_t c, std::int64_t q);

/// Exhaustive O(M N) count of m^2 - n^2 = c (mod q) in the box.
std::int64_t count_box_brute(const BoxSpec& box, std::int64_t c);

/// counts[c-1] holds the number of box points in class c.
struct Histogram {
  std::int64_t q = 1;
  std::vector<std::int64_t> counts;

  std::int64_t at(std::int64_t c) const { return counts.at(c - 1); }
  std::int64_t total() const;
};

/// One pass over the box for every class at once. The m-range is split into
/// `shards` disjoint slices (0 picks the hardware concurrency) whose
/// histograms are added together, so the result does not depend on the
/// shard count.
Histogram count_distribution(const BoxSpec& box, unsigned shards = 0);

/// Complete-box count via the divisor sum over f | gcd(c, q) of f*phi(q/f).
std::int64_t a0_exact(std::int64_t q, std::int64_t c);

/// Counts uv = c (mod q) over the full q x q grid. Oracle only, q <= 10^4.
std::int64_t a0_brute(std::int64_t q, std::int64_t c);

inline constexpr std::int64_t kOracleModulusLimit = 10'000;

/// a0_exact for every class of one modulus, evaluated once per divisor.
class A0Table {
 public:
  explicit A0Table(std::int64_t q);

  std::int64_t operator()(std::int64_t c) const;
  std::int64_t for_divisor(std::int64_t d) const { return by_divisor_.at(d); }
  std::int64_t modulus() const { return q_; }

 private:
  std::int64_t q_;
  std::map<std::int64_t, std::int64_t> by_divisor_;
};

/// Exact per-class deviation data. The squared deviation is
/// delta_sq_num / scale with scale = q^4.
struct DeltaRecord {
  std::int64_t c = 0;
  std::int64_t a = 0;
  std::int64_t a0 = 0;
  BigInt expected_num;
  BigInt delta_sq_num;
  BigInt scale;

  Rational delta_sq() const { return Rational(delta_sq_num, scale); }
};

DeltaRecord delta(const BoxSpec& box, std::int64_t c, std::int64_t a);
DeltaRecord delta(const BoxSpec& box, std::int64_t c, std::int64_t a,
                  std::int64_t a0);

/// All DeltaRecords of a box, in class order, from one histogram pass.
std::vector<DeltaRecord> delta_records(const BoxSpec& box);

/// Sum over c = 1..q of Delta(M, N; q, c)^2.
Rational second_moment(const BoxSpec& box);

/// Sum of Delta^2 over the classes with gcd(c, q) = d.
Rational stratified_moment(const BoxSpec& box, std::int64_t d);

/// Every stratum of the box keyed by d | q, from a single histogram pass.
std::map<std::int64_t, Rational> stratified_moments(const BoxSpec& box);

}  // namespace qcong
