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

#include "qcong/transform.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qcong/error.hpp"
#include "qcong/numtheory.hpp"

namespace qcong {
namespace {

std::int64_t half_inverse(std::int64_t s) { return s == 1 ? 0 : (s + 1) / 2; }

std::int64_t count_in_class(const VRange& range, std::int64_t residue,
                            std::int64_t s) {
  if (range.empty()) return 0;
  return floor_div(range.upper - residue, s) -
         floor_div(range.lower - 1 - residue, s);
}

// Residue of v mod q/f solving u(theta + 2v) = c/f for x = f u.
std::int64_t v_residue(std::int64_t x, std::int64_t f, std::int64_t c,
                       std::int64_t q) {
  const std::int64_t q_f = q / f;
  const std::int64_t u = x / f;
  const std::int64_t target = mod_floor(c / f, q_f);
  const auto y = static_cast<__int128>(target) * mod_inverse(u, q_f) % q_f;
  const std::int64_t y_minus_theta =
      mod_floor(static_cast<std::int64_t>(y) - theta_parity(x), q_f);
  return static_cast<std::int64_t>(
      static_cast<__int128>(y_minus_theta) * half_inverse(q_f) % q_f);
}

void require_divides(std::int64_t f, std::int64_t n, const char* what) {
  if (f < 1 || n % f != 0) {
    throw Error(ErrorCode::kNotADivisor,
                std::to_string(f) + " does not divide " + what + "=" +
                    std::to_string(n));
  }
}

}  // namespace

int theta_parity(std::int64_t x) { return static_cast<int>(mod_floor(x, 2)); }

VRange lu_bounds(std::int64_t x, std::int64_t M, std::int64_t N) {
  const int theta = theta_parity(x);
  const std::int64_t plus = (x + theta) / 2;
  const std::int64_t minus = (x - theta) / 2;
  return {std::max(1 - plus, minus - N), std::min(minus - 1, M - plus)};
}

VPoint encode_point(std::int64_t m, std::int64_t n, std::int64_t M,
                    std::int64_t N) {
  VPoint p;
  p.x = m + n;
  p.theta = theta_parity(p.x);
  p.v = (m - n - p.theta) / 2;
  const VRange range = lu_bounds(p.x, M, N);
  p.lower = range.lower;
  p.upper = range.upper;
  return p;
}

std::pair<std::int64_t, std::int64_t> decode_point(std::int64_t x,
                                                   std::int64_t v) {
  const std::int64_t y = theta_parity(x) + 2 * v;
  return {(x + y) / 2, (x - y) / 2};
}

std::int64_t count_via_xv(const BoxSpec& box, std::int64_t c) {
  validate(box);
  require_class(c, box.q);
  std::int64_t total = 0;
  for (std::int64_t x = 2; x <= box.M + box.N; ++x) {
    const std::int64_t f = std::gcd(x, box.q);
    if (c % f != 0) continue;
    total += count_in_class(lu_bounds(x, box.M, box.N),
                            v_residue(x, f, c, box.q), box.q / f);
  }
  return total;
}

std::int64_t b_count(const BoxSpec& box, std::int64_t c, std::int64_t f) {
  validate(box);
  require_class(c, box.q);
  require_divides(f, std::gcd(c, box.q), "gcd(c,q)");
  std::int64_t total = 0;
  for (std::int64_t x = f; x <= box.M + box.N; x += f) {
    if (x < 2 || std::gcd(x, box.q) != f) continue;
    total += count_in_class(lu_bounds(x, box.M, box.N),
                            v_residue(x, f, c, box.q), box.q / f);
  }
  return total;
}

std::int64_t h_shift(int theta, std::int64_t q_f) {
  require_odd_modulus(q_f);
  if (theta == 0) return 0;
  return q_f == 1 ? 0 : (q_f + 1) / 2;
}

StratumContext StratumContext::make(const BoxSpec& box, std::int64_t c,
                                    std::int64_t f) {
  validate(box);
  require_class(c, box.q);
  StratumContext ctx;
  ctx.d = std::gcd(c, box.q);
  require_divides(f, ctx.d, "gcd(c,q)");
  ctx.f = f;
  ctx.c_f = c / f;
  ctx.q_f = box.q / f;
  ctx.X_f = (box.M + box.N) / f;
  ctx.M_f = (box.M + f - 1) / f;
  ctx.N_f = (box.N + f - 1) / f;
  ctx.a = static_cast<std::int64_t>(static_cast<__int128>(ctx.c_f % ctx.q_f) *
                                    half_inverse(ctx.q_f) % ctx.q_f);
  return ctx;
}

NormalizedBox normalize(const BoxSpec& box, std::int64_t c) {
  validate(box);
  require_class(c, box.q);
  if (box.M >= box.N) return {box, c, false};
  return {BoxSpec{box.N, box.M, box.q}, class_label(-c, box.q), true};
}

IntervalFamily build_interval_family(const BoxSpec& box, std::int64_t f) {
  validate(box);
  require_divides(f, box.q, "q");
  const std::int64_t s = box.q / f;
  const std::int64_t limit = (box.M + box.N) / f;
  IntervalFamily family(s, limit, f == 1 ? 2 : 1);
  for (std::int64_t u = family.first_u(); u <= limit; ++u) {
    const VRange range = lu_bounds(f * u, box.M, box.N);
    const std::int64_t h = h_shift(theta_parity(u), s);
    family.set(u, h + range.lower, range.length());
  }
  return family;
}

MainTerm w_main_term(const BoxSpec& box, std::int64_t f) {
  validate(box);
  require_divides(f, box.q, "q");
  const std::int64_t q_f = box.q / f;
  const std::int64_t limit = (box.M + box.N) / f;
  std::int64_t sum = 0;
  for (std::int64_t u = 2; u <= limit; ++u) {
    if (std::gcd(u, q_f) != 1) continue;
    const VRange range = lu_bounds(f * u, box.M, box.N);
    if (!range.empty()) sum += range.length();
  }
  MainTerm out;
  out.exact = Rational(BigInt(sum), BigInt(q_f));
  const auto phi = euler_phi(static_cast<std::uint64_t>(q_f));
  out.closed_form = Rational(BigInt(f) * box.M * box.N * phi,
                             BigInt(box.q) * box.q);
  return out;
}

ReductionReport verify_reduction(const BoxSpec& box, std::int64_t c,
                                 std::int64_t f) {
  validate(box);
  require_class(c, box.q);
  require_divides(f, std::gcd(c, box.q), "gcd(c,q)");
  const NormalizedBox norm = normalize(box, c);
  const StratumContext ctx = StratumContext::make(norm.box, norm.c, f);

  ReductionReport report;
  report.swapped = norm.swapped;
  report.a = ctx.a;
  report.b = b_count(norm.box, norm.c, f);
  report.t = t_count(build_interval_family(norm.box, f), ctx.a);
  report.equal = report.b == report.t;
  if (!report.equal) throw ReductionMismatch(report.b, report.t);
  return report;
}

}  // namespace qcong
