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
#include <utility>

#include "qcong/counting.hpp"
#include "qcong/products.hpp"
#include "qcong/rational.hpp"

namespace qcong {

// Change of variables x = m + n, y = m - n = theta_x + 2v. Points of the box
// correspond one-to-one to pairs (x, v) with 2 <= x <= M + N and
// lower_x <= v <= upper_x.

/// x mod 2.
int theta_parity(std::int64_t x);

struct VRange {
  std::int64_t lower = 0;
  std::int64_t upper = -1;

  bool empty() const { return upper < lower; }
  /// upper - lower, the interval length used by the main terms.
  std::int64_t length() const { return upper - lower; }
  /// Number of integers in the range.
  std::int64_t size() const { return empty() ? 0 : upper - lower + 1; }
};

/// Bounds on v for a fixed x:
///   lower = max(1 - (x + theta)/2, (x - theta)/2 - N)
///   upper = min((x - theta)/2 - 1, M - (x + theta)/2)
/// upper < lower is a legal empty range.
VRange lu_bounds(std::int64_t x, std::int64_t M, std::int64_t N);

struct VPoint {
  std::int64_t x = 0;
  int theta = 0;
  std::int64_t v = 0;
  std::int64_t lower = 0;
  std::int64_t upper = 0;
};

VPoint encode_point(std::int64_t m, std::int64_t n, std::int64_t M,
                    std::int64_t N);

/// Inverse of encode_point: returns (m, n).
std::pair<std::int64_t, std::int64_t> decode_point(std::int64_t x,
                                                   std::int64_t v);

/// Box count for one class in O((M + N) log q): for each x with
/// f = gcd(x, q) dividing c the admissible v form one residue class mod q/f.
std::int64_t count_via_xv(const BoxSpec& box, std::int64_t c);

/// Number of (x, v) solutions whose x satisfies gcd(x, q) = f.
std::int64_t b_count(const BoxSpec& box, std::int64_t c, std::int64_t f);

/// h with 2h = theta (mod q_f), 0 <= h < q_f.
std::int64_t h_shift(int theta, std::int64_t q_f);

/// Quantities of one divisor stratum.
struct StratumContext {
  std::int64_t f = 1;
  std::int64_t d = 1;     // gcd(c, q)
  std::int64_t c_f = 0;   // c / f
  std::int64_t q_f = 1;   // q / f
  std::int64_t X_f = 0;   // floor((M + N) / f)
  std::int64_t M_f = 0;   // ceil(M / f)
  std::int64_t N_f = 0;   // ceil(N / f)
  std::int64_t a = 0;     // 2^{-1} c_f mod q_f

  static StratumContext make(const BoxSpec& box, std::int64_t c,
                             std::int64_t f);
};

/// Box with M >= N. Swapping the sides maps class c to -c.
struct NormalizedBox {
  BoxSpec box;
  std::int64_t c = 0;
  bool swapped = false;
};

NormalizedBox normalize(const BoxSpec& box, std::int64_t c);

/// Intervals of the stratum x = f u: s = q/f, u up to floor((M+N)/f),
/// start = h + lower_{fu}, length = upper_{fu} - lower_{fu}. The family starts
/// at u = 1 when f > 1 because x = f is itself a valid abscissa.
IntervalFamily build_interval_family(const BoxSpec& box, std::int64_t f);

struct MainTerm {
  Rational exact;        // (1/q_f) * sum_{u=2..X_f, gcd(u,q_f)=1} (U - L)
  Rational closed_form;  // f M N phi(q_f) / q^2
};

MainTerm w_main_term(const BoxSpec& box, std::int64_t f);

struct ReductionReport {
  std::int64_t b = 0;
  std::int64_t t = 0;
  bool equal = false;
  bool swapped = false;  // box was normalized to M >= N
  std::int64_t a = 0;
};

/// Computes the stratum count directly and as a product count over the
/// interval family; throws ReductionMismatch if they differ.
ReductionReport verify_reduction(const BoxSpec& box, std::int64_t c,
                                 std::int64_t f);

}  // namespace qcong
