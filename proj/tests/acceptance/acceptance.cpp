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

// Acceptance run: one PASS/FAIL line per criterion. With no arguments every
// criterion runs; `--criterion K` (repeatable) selects a subset.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli/cli.hpp"
#include "qcong/counting.hpp"
#include "qcong/error.hpp"
#include "qcong/experiments.hpp"
#include "qcong/numtheory.hpp"
#include "qcong/products.hpp"
#include "qcong/transform.hpp"

using namespace qcong;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Verdict {
  bool passed = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double time_limit_s;  // 0 = no stated limit
  std::function<Verdict()> run;
};

using Rng = std::mt19937_64;

std::int64_t rand_in(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

std::int64_t random_odd(Rng& rng, std::int64_t hi) {
  return 2 * rand_in(rng, 1, (hi - 1) / 2) + 1;
}

std::vector<std::int64_t> divisors_of(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (auto d : divisors(static_cast<std::uint64_t>(n))) {
    out.push_back(static_cast<std::int64_t>(d));
  }
  return out;
}

template <typename T>
T pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(rand_in(rng, 0, static_cast<std::int64_t>(v.size()) - 1))];
}

std::string fmt(double v) { return format_decimal(v); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Verdict a0_exactness() {
  std::int64_t checks = 0, bad = 0;
  for (std::int64_t q = 1; q <= 99; q += 2) {
    for (std::int64_t c = 1; c <= q; ++c) {
      ++checks;
      bad += a0_exact(q, c) != a0_brute(q, c);
    }
  }
  return {bad == 0, std::to_string(checks) + " (q,c) pairs, " +
                        std::to_string(bad) + " mismatches"};
}

Verdict counter_equivalence() {
  Rng rng(kSeed);
  std::int64_t bad = 0;
  for (int i = 0; i < 500; ++i) {
    const std::int64_t q = random_odd(rng, 999);
    const BoxSpec box{rand_in(rng, 1, q), rand_in(rng, 1, q), q};
    const std::int64_t c = rand_in(rng, 1, q);
    bad += count_via_xv(box, c) != count_box_brute(box, c);
  }
  return {bad == 0, "500 tuples, " + std::to_string(bad) + " mismatches"};
}

Verdict stratification_identity() {
  Rng rng(kSeed);
  std::int64_t moduli = 0, checks = 0, bad = 0;
  for (std::int64_t q = 1; q <= 201; q += 2) {
    ++moduli;
    const BoxSpec box{rand_in(rng, 1, q), rand_in(rng, 1, q), q};
    for (std::int64_t c = 1; c <= q; ++c) {
      std::int64_t total = 0;
      for (std::int64_t f : divisors_of(std::gcd(c, q))) total += b_count(box, c, f);
      ++checks;
      bad += total != count_box_brute(box, c);
    }
  }
  return {bad == 0, std::to_string(moduli) + " moduli, " + std::to_string(checks) +
                        " classes, " + std::to_string(bad) + " mismatches"};
}

Verdict reduction_identity() {
  Rng rng(kSeed);
  std::int64_t bad = 0, nontrivial = 0;
  for (int i = 0; i < 200; ++i) {
    const std::int64_t q = random_odd(rng, 999);
    const BoxSpec box{rand_in(rng, 1, q), rand_in(rng, 1, q), q};
    const std::int64_t g = pick(rng, divisors_of(q));
    const std::int64_t c = g * rand_in(rng, 1, q / g);
    const std::int64_t f = pick(rng, divisors_of(std::gcd(c, q)));
    nontrivial += f > 1;
    try {
      bad += !verify_reduction(box, c, f).equal;
    } catch (const ReductionMismatch&) {
      ++bad;
    }
  }
  return {bad == 0, "200 strata (" + std::to_string(nontrivial) + " with f>1), " +
                        std::to_string(bad) + " mismatches"};
}

Verdict sieve_envelopes() {
  Rng rng(kSeed);
  std::int64_t count_bad = 0, weighted_bad = 0, interval_bad = 0;
  Rational worst_weighted = 0, worst_interval = 0;
  for (int i = 0; i < 10'000; ++i) {
    const std::int64_t W = rand_in(rng, 0, 10'000);
    const std::int64_t Z = rand_in(rng, 1, 10'000);
    const std::int64_t s = rand_in(rng, 1, 2'000);
    const auto tau = static_cast<std::int64_t>(tau_count(static_cast<std::uint64_t>(s)));
    const auto phi = static_cast<std::int64_t>(euler_phi(static_cast<std::uint64_t>(s)));

    const CoprimeCount cnt = coprime_count(W, Z, s);
    const Rational count_main(BigInt(phi) * Z, BigInt(s));
    count_bad += abs(Rational(cnt.exact) - count_main) > tau;

    const CoprimeSum sum = coprime_weighted_sum(W, Z, s);
    const Rational stated_main(BigInt(phi) * Z * (W + Z), BigInt(2) * s);
    const Rational unit(BigInt((W + Z + 1) * tau));
    const Rational dev = abs(Rational(sum.exact) - stated_main);
    weighted_bad += dev > 4 * unit;
    worst_weighted = std::max<Rational>(worst_weighted, dev / unit);

    const Rational interval_dev = abs(Rational(sum.exact) - sum.interval_main);
    interval_bad += interval_dev > 4 * unit;
    worst_interval = std::max<Rational>(worst_interval, interval_dev / unit);
  }
  return {count_bad == 0 && weighted_bad == 0,
          "coprime-count violations " + std::to_string(count_bad) +
              "; weighted-sum violations with main phi(s)Z(W+Z)/(2s): " +
              std::to_string(weighted_bad) + " (max constant " + fmt(to_double(worst_weighted)) +
              "); with main phi(s)((W+Z)^2-W^2)/(2s): " + std::to_string(interval_bad) +
              " (max constant " + fmt(to_double(worst_interval)) + ")"};
}

Verdict exp_sum_diagnostic() {
  Rng rng(kSeed);
  std::int64_t bad_match = 0, bad_bound = 0;
  double worst = 0.0;
  for (int i = 0; i < 1'000; ++i) {
    const std::int64_t s = rand_in(rng, 2, 10'000);
    std::int64_t r = 0;
    while (r == 0) r = rand_in(rng, -s / 2, s / 2);
    const std::int64_t Z = rand_in(rng, -100'000, 100'000);
    const std::int64_t H = rand_in(rng, 1, 3 * s);
    std::complex<double> direct{0.0, 0.0};
    for (std::int64_t v = Z; v < Z + H; ++v) {
      const std::int64_t phase = mod_floor(r * v, s);
      direct += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(phase) /
                                    static_cast<double>(s));
    }
    const auto diag = linear_exp_sum(Z, H, r, s);
    const double gap = std::abs(std::abs(direct) - diag.magnitude);
    worst = std::max(worst, gap);
    bad_match += gap > 1e-9;
    const double bound = std::min(static_cast<double>(H),
                                  static_cast<double>(s) / (2.0 * std::abs(static_cast<double>(r))));
    bad_bound += diag.magnitude > bound + 1e-9;
  }
  return {bad_match == 0 && bad_bound == 0,
          "1000 triples, max |closed-direct| " + fmt(worst) + ", bound violations " +
              std::to_string(bad_bound)};
}

Verdict products_envelope() {
  Rng rng(kSeed);
  std::uniform_real_distribution<double> log_s(std::log(11.0), std::log(2000.0));
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < 60; ++i) {
    const auto s = static_cast<std::int64_t>(std::lround(std::exp(log_s(rng))));
    const std::int64_t X = rand_in(rng, 2, s);
    IntervalFamily fam(s, X);
    const bool constant = i % 2 == 0;
    const std::int64_t Y0 = rand_in(rng, 0, s), Z0 = rand_in(rng, 0, s);
    for (std::int64_t u = 2; u <= X; ++u) {
      if (constant) {
        fam.set(u, Z0, Y0);
      } else {
        fam.set(u, rand_in(rng, -s, s), rand_in(rng, 0, s));
      }
    }
    const Rational m2 = t_second_moment(fam);
    pts.emplace_back(static_cast<double>(s),
                     to_double(m2 / (X * (X + fam.max_length()))));
  }
  const PowerFit fit = fit_exponent(pts);
  return {fit.slope <= 0.5, "60 families, fitted exponent " + fmt(fit.slope) +
                                " (threshold 0.5, " + std::to_string(fit.points) + " points)"};
}

std::vector<std::int64_t> sweep_moduli_list() {
  std::set<std::int64_t> qs;
  for (int i = 0; i < 20; ++i) {
    const double q = 501.0 * std::pow(99'999.0 / 501.0, i / 19.0);
    qs.insert(static_cast<std::int64_t>(std::llround(q)) | 1);
  }
  return {qs.begin(), qs.end()};
}

Verdict moment_envelope() {
  SweepConfig cfg;
  cfg.q_list = sweep_moduli_list();
  cfg.box_rule = BoxRule::kTwoThirds;
  const auto recs = run_sweep(cfg);
  const BoundReport rep = bound_report(recs);
  if (rep.degenerate) return {false, "degenerate sweep"};
  const double v_exp = rep.moment_fit->slope;
  const double residual = rep.residual_fit->slope;
  const bool ok = residual <= 0.5 && v_exp >= 1.0 && v_exp <= 1.7;
  return {ok, std::to_string(recs.size()) + " moduli in [501,99999]; exponent of V " +
                  fmt(v_exp) + " (want [1.0,1.7]); exponent of V/(M+N)^2 " +
                  fmt(residual) + " (want <= 0.5); max V/(M+N)^2 " +
                  fmt(rep.max_ratio_theorem) + "; max V/(q^(4/3)r^3) " +
                  fmt(rep.max_ratio_hb.value_or(0.0)) + " (context only)"};
}

Verdict exactness_plumbing() {
  Rng rng(kSeed);
  std::int64_t bad = 0;
  for (int i = 0; i < 20; ++i) {
    const std::int64_t q = random_odd(rng, 201);
    const BoxSpec box{rand_in(rng, 1, q), rand_in(rng, 1, q), q};
    Rational brute = 0;
    for (std::int64_t c = 1; c <= q; ++c) {
      brute += delta(box, c, count_box_brute(box, c)).delta_sq();
    }
    bad += second_moment(box) != brute;
    bad += count_distribution(box).total() != box.M * box.N;
  }

  SweepConfig cfg;
  for (std::int64_t q = 101; q <= 401; q += 20) cfg.q_list.push_back(q);
  cfg.stratify = true;
  std::int64_t strata_bad = 0;
  for (const auto& rec : run_sweep(cfg)) {
    Rational total = 0;
    for (const auto& [d, s] : *rec.strata) total += s;
    strata_bad += total != rec.V;
  }
  return {bad == 0 && strata_bad == 0,
          "20 boxes: " + std::to_string(bad) + " moment/mass mismatches; " +
              std::to_string(cfg.q_list.size()) + " stratified records: " +
              std::to_string(strata_bad) + " mismatches"};
}

Verdict determinism() {
  const fs::path dir = fs::temp_directory_path() / "qcong_acceptance";
  fs::create_directories(dir);
  const fs::path cfg = dir / "sweep.json";
  {
    std::ofstream out(cfg);
    out << R"({"q_list":[501,751,1001,1251],"box_rule":"two-thirds","seed":42,"stratify":true})";
  }
  std::vector<std::string> mismatched;
  auto twice = [&](const std::string& label, std::vector<std::string> args,
                   const std::string& ext) {
    std::string first;
    for (int k = 0; k < 2; ++k) {
      const fs::path out = dir / (label + std::to_string(k) + ext);
      fs::remove(out);
      auto argv = args;
      argv.push_back("--out");
      argv.push_back(out.string());
      cli::run_command(argv);
      const std::string text = slurp(out);
      if (text.empty() || (k == 1 && text != first)) mismatched.push_back(label);
      first = text;
    }
  };
  for (const char* suite : {"counter", "reduction", "products", "expsum", "strata"}) {
    twice(std::string("verify_") + suite,
          {"verify", "--suite", suite, "--seed", "42", "--cases", "50"}, ".txt");
  }
  twice("sweep_csv", {"sweep", "--config", cfg.string()}, ".csv");
  twice("sweep_json", {"sweep", "--config", cfg.string()}, ".json");
  std::string detail = "7 commands run twice";
  for (const auto& m : mismatched) detail += "; differs: " + m;
  return {mismatched.empty(), detail};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "Complete-box exactness (A0 divisor sum = grid count, odd q <= 99)", 10, a0_exactness},
      {2, "Counter equivalence (count_via_xv = brute, 500 tuples)", 60, counter_equivalence},
      {3, "Stratification identity (A = sum_f B, odd q <= 201)", 0, stratification_identity},
      {4, "Reduction identity (B = T, 200 strata)", 0, reduction_identity},
      {5, "Sieve envelopes (coprime count const 1, weighted sum const 4, 10^4 cases)", 0, sieve_envelopes},
      {6, "Exponential-sum diagnostic (closed form, min(H, s/2|r|) bound)", 0, exp_sum_diagnostic},
      {7, "Products second-moment envelope (fitted exponent <= 0.5)", 300, products_envelope},
      {8, "Second-moment envelope (V/(M+N)^2 exponent <= 0.5, V exponent in [1,1.7])", 600,
       moment_envelope},
      {9, "Exactness plumbing (histogram moment, strata sums, mass)", 0, exactness_plumbing},
      {10, "Determinism (verify/sweep outputs byte-identical)", 0, determinism},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected.insert(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: qcong_acceptance [--criterion K]...\n";
      return 2;
    }
  }

  int failed = 0, ran = 0;
  for (const auto& c : criteria()) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && secs > c.time_limit_s) {
      v.passed = false;
      v.detail += "; exceeded time limit " + fmt(c.time_limit_s) + "s";
    }
    std::printf("[%s] C%d %s: %s (%.2fs)\n", v.passed ? "PASS" : "FAIL", c.id, c.title,
                v.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !v.passed;
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
