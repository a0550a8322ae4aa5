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

#include "qcong/suites.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "qcong/counting.hpp"
#include "qcong/error.hpp"
#include "qcong/experiments.hpp"
#include "qcong/numtheory.hpp"
#include "qcong/products.hpp"
#include "qcong/transform.hpp"

namespace qcong {
namespace {

constexpr std::size_t kMaxFailureLines = 20;

using Rng = std::mt19937_64;

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

std::int64_t random_odd(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return 2 * uniform(rng, (lo - 1) / 2, (hi - 1) / 2) + 1;
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[static_cast<std::size_t>(
      uniform(rng, 0, static_cast<std::int64_t>(items.size()) - 1))];
}

std::vector<std::int64_t> divisors_of(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::uint64_t d : divisors(static_cast<std::uint64_t>(n))) {
    out.push_back(static_cast<std::int64_t>(d));
  }
  return out;
}

std::string box_text(const BoxSpec& box) {
  return "M=" + std::to_string(box.M) + " N=" + std::to_string(box.N) +
         " q=" + std::to_string(box.q);
}

std::int64_t or_default(std::int64_t value, std::int64_t fallback) {
  return value > 0 ? value : fallback;
}

// Direct complex summation of e(r v / s) over v = Z..Z+H-1.
double direct_exp_sum(std::int64_t Z, std::int64_t H, std::int64_t r,
                      std::int64_t s) {
  std::complex<double> acc{0.0, 0.0};
  const double step = 2.0 * std::numbers::pi / static_cast<double>(s);
  for (std::int64_t v = Z; v < Z + H; ++v) {
    const auto phase = static_cast<std::int64_t>(
        static_cast<__int128>(mod_floor(r, s)) * mod_floor(v, s) % s);
    acc += std::polar(1.0, step * static_cast<double>(phase));
  }
  return std::abs(acc);
}

SuiteResult a0_suite(const SuiteOptions& opt) {
  SuiteResult res{"a0"};
  const std::int64_t qmax = or_default(opt.qmax, 99);
  for (std::int64_t q = 1; q <= qmax; q += 2) {
    for (std::int64_t c = 1; c <= q; ++c) {
      ++res.checks;
      const std::int64_t exact = a0_exact(q, c);
      const std::int64_t brute = a0_brute(q, c);
      if (exact != brute) {
        res.fail("q=" + std::to_string(q) + " c=" + std::to_string(c) +
                 " exact=" + std::to_string(exact) +
                 " brute=" + std::to_string(brute));
      }
    }
  }
  res.lines.push_back("odd q <= " + std::to_string(qmax) +
                      ", every class c in [1,q]");
  return res;
}

SuiteResult sieve_suite(const SuiteOptions& opt) {
  SuiteResult res{"sieve"};
  Rng rng(opt.seed);
  const std::int64_t cases = or_default(opt.cases, 10'000);
  Rational worst_count = 0;
  Rational worst_sum = 0;
  Rational worst_interval = 0;
  std::int64_t interval_violations = 0;
  for (std::int64_t i = 0; i < cases; ++i) {
    const std::int64_t W = uniform(rng, 0, 10'000);
    const std::int64_t Z = uniform(rng, 1, 10'000);
    const std::int64_t s = uniform(rng, 1, 2'000);
    const CoprimeCount cnt = coprime_count(W, Z, s);
    const CoprimeSum sum = coprime_weighted_sum(W, Z, s);
    const std::string where = "W=" + std::to_string(W) +
                              " Z=" + std::to_string(Z) +
                              " s=" + std::to_string(s);
    res.checks += 2;
    if (!cnt.within_bound()) res.fail("count deviation above tau(s): " + where);
    if (!sum.within_envelope()) res.fail("weighted sum above envelope: " + where);
    worst_count = std::max(worst_count, cnt.deviation() / cnt.error_bound);
    const Rational unit = Rational(sum.envelope) / 4;
    worst_sum = std::max(worst_sum, sum.deviation() / unit);
    worst_interval = std::max(worst_interval, sum.interval_deviation() / unit);
    ++res.checks;
    if (!sum.interval_within_envelope()) {
      ++interval_violations;
      res.fail("interval-form weighted sum above envelope: " + where);
    }

    // Every 16th case is rechecked against a literal gcd scan.
    if (i % 16 == 0) {
      std::int64_t scan = 0;
      BigInt scan_sum = 0;
      for (std::int64_t k = W + 1; k <= W + Z; ++k) {
        if (std::gcd(k, s) == 1) {
          ++scan;
          scan_sum += k;
        }
      }
      res.checks += 2;
      if (scan != cnt.exact) res.fail("count disagrees with gcd scan: " + where);
      if (scan_sum != sum.exact) res.fail("sum disagrees with gcd scan: " + where);
    }
  }
  res.lines.push_back("max |exact - phi(s)Z/s| / tau(s) = " +
                      format_decimal(to_double(worst_count)));
  res.lines.push_back("max |exact - phi(s)Z(W+Z)/(2s)| / ((W+Z+1) tau(s)) = " +
                      format_decimal(to_double(worst_sum)));
  res.lines.push_back(
      "max |exact - phi(s)((W+Z)^2-W^2)/(2s)| / ((W+Z+1) tau(s)) = " +
      format_decimal(to_double(worst_interval)) + ", violations " +
      std::to_string(interval_violations));
  return res;
}

SuiteResult counter(const SuiteOptions& opt) {
  SuiteResult res{"counter"};
  Rng rng(opt.seed);
  const std::int64_t qmax = or_default(opt.qmax, 999);
  const std::int64_t cases = or_default(opt.cases, 500);
  for (std::int64_t i = 0; i < cases; ++i) {
    const std::int64_t q = random_odd(rng, 3, qmax);
    const BoxSpec box{uniform(rng, 1, q), uniform(rng, 1, q), q};
    const std::int64_t c = uniform(rng, 1, q);
    ++res.checks;
    const std::int64_t fast = count_via_xv(box, c);
    const std::int64_t brute = count_box_brute(box, c);
    if (fast != brute) {
      res.fail(box_text(box) + " c=" + std::to_string(c) +
               " xv=" + std::to_string(fast) +
               " brute=" + std::to_string(brute));
    }
  }
  return res;
}

SuiteResult bijection(const SuiteOptions& opt) {
  SuiteResult res{"bijection"};
  Rng rng(opt.seed);
  const std::int64_t qmax = or_default(opt.qmax, 201);
  const std::int64_t cases = or_default(opt.cases, 50);
  for (std::int64_t i = 0; i < cases; ++i) {
    const std::int64_t q = random_odd(rng, 3, qmax);
    const BoxSpec box{uniform(rng, 1, q), uniform(rng, 1, q), q};
    bool ok = true;
    for (std::int64_t m = 1; m <= box.M && ok; ++m) {
      for (std::int64_t n = 1; n <= box.N && ok; ++n) {
        const VPoint p = encode_point(m, n, box.M, box.N);
        const auto back = decode_point(p.x, p.v);
        ok = back == std::pair{m, n} && p.lower <= p.v && p.v <= p.upper &&
             p.x >= 2 && p.x <= box.M + box.N;
      }
    }
    std::int64_t covered = 0;
    for (std::int64_t x = 2; x <= box.M + box.N; ++x) {
      covered += lu_bounds(x, box.M, box.N).size();
    }
    ++res.checks;
    if (!ok || covered != box.M * box.N) {
      res.fail(box_text(box) + " covered=" + std::to_string(covered));
    }
  }
  return res;
}

SuiteResult strata(const SuiteOptions& opt) {
  SuiteResult res{"strata"};
  Rng rng(opt.seed);
  const std::int64_t qmax = or_default(opt.qmax, 201);
  std::vector<std::int64_t> pool;
  for (std::int64_t q = 3; q <= qmax; q += 2) pool.push_back(q);
  std::shuffle(pool.begin(), pool.end(), rng);
  const auto count = static_cast<std::size_t>(
      std::min<std::int64_t>(or_default(opt.cases, 50),
                             static_cast<std::int64_t>(pool.size())));
  pool.resize(count);
  std::sort(pool.begin(), pool.end());

  for (std::int64_t q : pool) {
    const BoxSpec box{uniform(rng, 1, q), uniform(rng, 1, q), q};
    const Histogram hist = count_distribution(box, 1);
    for (std::int64_t c = 1; c <= q; ++c) {
      std::int64_t total = 0;
      for (std::int64_t f : divisors_of(std::gcd(c, q))) {
        total += b_count(box, c, f);
      }
      ++res.checks;
      if (total != hist.at(c)) {
        res.fail(box_text(box) + " c=" + std::to_string(c) +
                 " sum_B=" + std::to_string(total) +
                 " A=" + std::to_string(hist.at(c)));
      }
    }
  }
  res.lines.push_back(std::to_string(pool.size()) + " moduli, every class");
  return res;
}

SuiteResult reduction(const SuiteOptions& opt) {
  SuiteResult res{"reduction"};
  Rng rng(opt.seed);
  const std::int64_t qmax = or_default(opt.qmax, 999);
  const std::int64_t cases = or_default(opt.cases, 200);
  std::int64_t nontrivial = 0;
  for (std::int64_t i = 0; i < cases; ++i) {
    const std::int64_t q = random_odd(rng, 3, qmax);
    const BoxSpec box{uniform(rng, 1, q), uniform(rng, 1, q), q};
    // Bias c towards multiples of a divisor so that f > 1 strata show up.
    const std::int64_t g = pick(rng, divisors_of(q));
    const std::int64_t c = g * uniform(rng, 1, q / g);
    const std::int64_t f = pick(rng, divisors_of(std::gcd(c, q)));
    if (f > 1) ++nontrivial;
    ++res.checks;
    try {
      verify_reduction(box, c, f);
    } catch (const ReductionMismatch& e) {
      res.fail(box_text(box) + " c=" + std::to_string(c) +
               " f=" + std::to_string(f) + " B=" + std::to_string(e.b()) +
               " T=" + std::to_string(e.t()));
    }
  }
  res.lines.push_back(std::to_string(nontrivial) + " strata with f > 1");
  return res;
}

SuiteResult products_suite(const SuiteOptions& opt) {
  SuiteResult res{"products"};
  Rng rng(opt.seed);
  const std::int64_t cases = std::max<std::int64_t>(or_default(opt.cases, 60), 2);
  std::uniform_real_distribution<double> log_s(std::log(11.0), std::log(2000.0));
  std::vector<std::pair<double, double>> points;
  double worst = 0.0;
  for (std::int64_t i = 0; i < cases; ++i) {
    const auto s = static_cast<std::int64_t>(std::lround(std::exp(log_s(rng))));
    const std::int64_t X = uniform(rng, 2, s);
    IntervalFamily fam(s, X);
    if (i % 2 == 0) {
      const std::int64_t Y = uniform(rng, 0, s);
      const std::int64_t Z = uniform(rng, 0, s - 1);
      for (std::int64_t u = 2; u <= X; ++u) fam.set(u, Z, Y);
    } else {
      for (std::int64_t u = 2; u <= X; ++u) {
        fam.set(u, uniform(rng, -s, s), uniform(rng, 0, s));
      }
    }
    const Rational moment = t_second_moment(fam);
    const std::int64_t scale = X * (X + fam.max_length());
    const double ratio = to_double(moment / scale);
    worst = std::max(worst, ratio);
    points.emplace_back(static_cast<double>(s), ratio);
  }
  ++res.checks;
  try {
    const PowerFit fit = fit_exponent(points);
    res.lines.push_back("fitted exponent of moment/(X(X+Y)) vs s = " +
                        format_decimal(fit.slope) + " over " +
                        std::to_string(fit.points) + " families");
    if (fit.slope > kResidualExponentThreshold) {
      res.fail("fitted exponent " + format_decimal(fit.slope) + " > 0.5");
    }
  } catch (const Error& e) {
    res.fail(std::string("fit failed: ") + e.what());
  }
  res.lines.push_back("max moment/(X(X+Y)) = " + format_decimal(worst));
  return res;
}

SuiteResult expsum(const SuiteOptions& opt) {
  SuiteResult res{"expsum"};
  Rng rng(opt.seed);
  const std::int64_t cases = or_default(opt.cases, 1'000);
  const std::int64_t smax = or_default(opt.qmax, 10'000);
  double worst_gap = 0.0;
  for (std::int64_t i = 0; i < cases; ++i) {
    const std::int64_t s = uniform(rng, 2, smax);
    std::int64_t r = 0;
    while (r == 0) r = uniform(rng, -s / 2, s / 2);
    const std::int64_t Z = uniform(rng, -1'000'000, 1'000'000);
    const std::int64_t H = uniform(rng, 1, 3 * s);
    const ExpSumDiagnostic diag = linear_exp_sum(Z, H, r, s);
    const double direct = direct_exp_sum(Z, H, r, s);
    const double gap = std::abs(direct - diag.magnitude);
    worst_gap = std::max(worst_gap, gap);
    res.checks += 2;
    const std::string where = "Z=" + std::to_string(Z) + " H=" +
                              std::to_string(H) + " r=" + std::to_string(r) +
                              " s=" + std::to_string(s);
    if (gap > 1e-9) res.fail("closed form off by " + format_decimal(gap) + ": " + where);
    if (diag.magnitude > diag.bound + 1e-9) res.fail("bound violated: " + where);
  }
  res.lines.push_back("max |closed - direct| = " + format_decimal(worst_gap));
  return res;
}

SuiteResult moments(const SuiteOptions& opt) {
  SuiteResult res{"moments"};
  Rng rng(opt.seed);
  const std::int64_t qmax = or_default(opt.qmax, 201);
  const std::int64_t cases = or_default(opt.cases, 20);
  for (std::int64_t i = 0; i < cases; ++i) {
    const std::int64_t q = random_odd(rng, 3, qmax);
    const BoxSpec box{uniform(rng, 1, q), uniform(rng, 1, q), q};
    const Rational V = second_moment(box);

    std::vector<Rational> per_class;
    for (std::int64_t c = 1; c <= q; ++c) {
      per_class.push_back(delta(box, c, count_box_brute(box, c)).delta_sq());
    }
    Rational forward = 0, backward = 0;
    for (const auto& v : per_class) forward += v;
    for (auto it = per_class.rbegin(); it != per_class.rend(); ++it) {
      backward += *it;
    }
    Rational strata_total = 0;
    for (const auto& [d, s] : stratified_moments(box)) strata_total += s;
    const Histogram hist = count_distribution(box);

    res.checks += 4;
    if (V != forward) res.fail(box_text(box) + " histogram V != brute sum");
    if (forward != backward) res.fail(box_text(box) + " order dependence");
    if (strata_total != V) res.fail(box_text(box) + " strata do not sum to V");
    if (hist.total() != box.M * box.N) res.fail(box_text(box) + " histogram mass");
  }
  return res;
}

}  // namespace

void SuiteResult::fail(std::string line) {
  passed = false;
  ++failures;
  if (static_cast<std::size_t>(failures) <= kMaxFailureLines) {
    lines.push_back("FAIL " + std::move(line));
  }
}

const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names{
      "a0", "sieve", "counter", "bijection", "strata",
      "reduction", "products", "expsum", "moments"};
  return names;
}

SuiteResult run_suite(std::string_view name, const SuiteOptions& options) {
  if (name == "a0") return a0_suite(options);
  if (name == "sieve") return sieve_suite(options);
  if (name == "counter") return counter(options);
  if (name == "bijection") return bijection(options);
  if (name == "strata") return strata(options);
  if (name == "reduction") return reduction(options);
  if (name == "products") return products_suite(options);
  if (name == "expsum") return expsum(options);
  if (name == "moments") return moments(options);
  throw Error(ErrorCode::kOutOfRange,
              "unknown suite '" + std::string(name) + "'");
}

std::string render(const SuiteResult& result) {
  std::ostringstream out;
  out << "suite " << result.name << ": " << (result.passed ? "PASS" : "FAIL")
      << " (checks=" << result.checks << ", failures=" << result.failures
      << ")\n";
  for (const auto& line : result.lines) out << "  " << line << '\n';
  return out.str();
}

}  // namespace qcong
