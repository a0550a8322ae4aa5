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

#include "qcong/rational.hpp"

namespace qcong {

/// One row of an interval family: v runs over the integers in
/// [start, start + length]. length = -1 marks an empty interval.
struct IntervalEntry {
  std::int64_t u = 0;
  bool active = false;  // gcd(u, s) == 1
  std::int64_t start = 0;
  std::int64_t length = -1;

  bool empty() const { return length < 0; }
};

/// Per-u intervals for counting products u*v = a (mod s) with
/// first_u <= u <= X. The classical setting starts at u = 2; strata that
/// reach x = f need first_u = 1.
class IntervalFamily {
 public:
  IntervalFamily() = default;
  IntervalFamily(std::int64_t s, std::int64_t X, std::int64_t first_u = 2);

  /// Sets the interval of u; lengths below -1 are clamped to -1.
  void set(std::int64_t u, std::int64_t start, std::int64_t length);

  /// Same interval for every u.
  static IntervalFamily uniform(std::int64_t s, std::int64_t X,
                                std::int64_t start, std::int64_t length);

  std::int64_t modulus() const { return s_; }
  std::int64_t limit() const { return X_; }
  std::int64_t first_u() const { return first_u_; }
  const std::vector<IntervalEntry>& entries() const { return entries_; }
  const IntervalEntry& entry(std::int64_t u) const;

  /// Largest nonnegative length over active u, 0 when there is none.
  std::int64_t max_length() const;
  std::int64_t active_count() const;

 private:
  std::int64_t s_ = 1;
  std::int64_t X_ = 1;
  std::int64_t first_u_ = 2;
  std::vector<IntervalEntry> entries_;
};

/// Number of (u, v) with u active and v in its interval and u*v = a (mod s).
/// Closed form per u; intervals longer than s are fine.
std::int64_t t_count(const IntervalFamily& family, std::int64_t a);

/// T for every a in [0, s) in one sweep over the intervals.
std::vector<std::int64_t> t_counts(const IntervalFamily& family);

/// (1/s) * sum of the nonnegative lengths over active u.
Rational t_main_term(const IntervalFamily& family);

inline constexpr std::int64_t kSecondMomentModulusLimit = 10'000;

/// Sum over a = 1..s of (T(a) - main term)^2. Requires s <= 10^4.
Rational t_second_moment(const IntervalFamily& family);

/// Integers coprime to s in (W, W + Z].
struct CoprimeCount {
  std::int64_t exact = 0;
  Rational main;  // phi(s) Z / s
  std::int64_t error_bound = 0;  // tau(s)

  Rational deviation() const;
  bool within_bound() const { return deviation() <= error_bound; }
};

CoprimeCount coprime_count(std::int64_t W, std::int64_t Z, std::int64_t s);

/// Sum of the integers coprime to s in (W, W + Z].
/// `main` is the stated form phi(s) Z (W + Z) / (2s), which is only the
/// right size when W = 0. `interval_main` is phi(s) ((W+Z)^2 - W^2) / (2s),
/// what partial summation of the coprime count actually gives.
struct CoprimeSum {
  BigInt exact;
  Rational main;
  Rational interval_main;
  std::int64_t envelope = 0;  // 4 (W + Z + 1) tau(s)

  Rational deviation() const;
  Rational interval_deviation() const;
  bool within_envelope() const { return deviation() <= envelope; }
  bool interval_within_envelope() const {
    return interval_deviation() <= envelope;
  }
};

CoprimeSum coprime_weighted_sum(std::int64_t W, std::int64_t Z, std::int64_t s);

struct ExpSumDiagnostic {
  double magnitude = 0.0;
  double bound = 0.0;  // min(H, s / (2|r|)) with r reduced to (-s/2, s/2]
};

/// |sum_{v=Z}^{Z+H-1} e(r v / s)| via the geometric closed form. Throws
/// ZeroFrequency when r = 0 (mod s).
ExpSumDiagnostic linear_exp_sum(std::int64_t Z, std::int64_t H, std::int64_t r,
                                std::int64_t s);

}  // namespace qcong
