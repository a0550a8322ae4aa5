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

#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "qcong/counting.hpp"
#include "qcong/error.hpp"
#include "qcong/experiments.hpp"
#include "qcong/numtheory.hpp"
#include "qcong/suites.hpp"
#include "qcong/transform.hpp"

namespace qcong::cli {
namespace {

struct Args {
  std::int64_t q = 0;
  std::int64_t M = 0;
  std::int64_t N = 0;
  std::int64_t c = 0;
  bool brute = false;
  bool stratify = false;
  std::string suite;
  std::int64_t qmax = 0;
  std::int64_t cases = 0;
  std::uint64_t seed = 42;
  std::string config;
  std::string out;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text)) {
    throw Error(ErrorCode::kIoError, "cannot write " + path);
  }
}

std::string factor_text(const Factorization& factors) {
  if (factors.empty()) return "1";
  std::string out;
  for (const auto& [p, e] : factors) {
    if (!out.empty()) out += '*';
    out += std::to_string(p);
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out;
}

CommandOutcome do_count(const Args& a) {
  const BoxSpec box{a.M, a.N, a.q};
  validate(box);
  require_class(a.c, a.q);
  const std::int64_t count = count_via_xv(box, a.c);
  const DeltaRecord rec = delta(box, a.c, count);
  std::ostringstream out;
  out << "q=" << a.q << " M=" << a.M << " N=" << a.N << " c=" << a.c
      << " A=" << rec.a << " A0=" << rec.a0
      << " delta_sq=" << to_string(rec.delta_sq()) << '\n';
  int code = 0;
  if (a.brute) {
    const std::int64_t brute = count_box_brute(box, a.c);
    out << "brute A=" << brute << (brute == count ? " (match)" : " (MISMATCH)")
        << '\n';
    if (brute != count) code = 1;
  }
  return {code, out.str(), {}};
}

CommandOutcome do_a0(const Args& a) {
  const std::int64_t exact = a0_exact(a.q, a.c);
  std::ostringstream out;
  out << "q=" << a.q << " c=" << a.c << " d=" << std::gcd(a.c, a.q)
      << " A0=" << exact << '\n';
  int code = 0;
  if (a.brute) {
    const std::int64_t brute = a0_brute(a.q, a.c);
    out << "brute A0=" << brute << (brute == exact ? " (match)" : " (MISMATCH)")
        << '\n';
    if (brute != exact) code = 1;
  }
  return {code, out.str(), {}};
}

CommandOutcome do_moment(const Args& a) {
  const BoxSpec box{a.M, a.N, a.q};
  validate(box);
  std::ostringstream out;
  out << "q=" << a.q << " M=" << a.M << " N=" << a.N << '\n';
  if (a.stratify) {
    const auto strata = stratified_moments(box);
    Rational total = 0;
    out << "d,S_d,S_d_decimal\n";
    for (const auto& [d, s] : strata) {
      out << d << ',' << to_string(s) << ',' << format_decimal(to_double(s))
          << '\n';
      total += s;
    }
    out << "V=" << to_string(total) << " (" << format_decimal(to_double(total))
        << ")\n";
  } else {
    const Rational V = second_moment(box);
    out << "V=" << to_string(V) << " (" << format_decimal(to_double(V)) << ")\n";
  }
  const std::int64_t base = (a.M + a.N) * (a.M + a.N);
  out << "(M+N)^2=" << base << '\n';
  return {0, out.str(), {}};
}

CommandOutcome do_verify(const Args& a) {
  SuiteOptions opt;
  opt.qmax = a.qmax;
  opt.cases = a.cases;
  opt.seed = a.seed;
  std::vector<std::string_view> names;
  if (a.suite == "all") {
    names = suite_names();
  } else {
    names.push_back(a.suite);
  }
  std::string text;
  bool passed = true;
  for (auto name : names) {
    const SuiteResult res = run_suite(name, opt);
    text += render(res);
    passed = passed && res.passed;
  }
  if (!a.out.empty()) write_file(a.out, text);
  return {passed ? 0 : 1, text, {}};
}

CommandOutcome do_sweep(const Args& a) {
  SweepConfig cfg = load_sweep_config(a.config);
  if (!a.out.empty()) cfg.output_path = a.out;
  std::string log;
  const auto records = run_sweep(cfg, [&](const MomentRecord& rec) {
    log += rec.warning ? "q=" + std::to_string(rec.q) + " skipped: " + *rec.warning + "\n"
                       : "q=" + std::to_string(rec.q) + " V=" +
                             format_decimal(rec.V_float) + "\n";
  });

  std::ostringstream out;
  if (cfg.output_path.empty()) {
    write_csv(out, records);
  } else {
    write_sweep_output(cfg.output_path, records);
    out << "wrote " << records.size() << " records to " << cfg.output_path
        << '\n';
  }
  const auto usable = std::count_if(records.begin(), records.end(),
                                    [](const auto& r) { return !r.warning; });
  if (usable >= 2) out << bound_report(records).render();
  return {0, out.str(), log};
}

CommandOutcome do_bounds(const Args& a) {
  const ModulusProfile p = ModulusProfile::of(static_cast<std::uint64_t>(a.q));
  std::ostringstream out;
  out << "q=" << p.q << " factorization=" << factor_text(p.factorization)
      << " phi=" << p.phi << " tau=" << p.tau << " r=" << p.r
      << " odd=" << (p.odd ? "yes" : "no") << '\n'
      << "q^(4/3)*r^3=" << format_decimal(hb_bound_value(a.q, static_cast<std::int64_t>(p.r)))
      << '\n';
  return {0, out.str(), {}};
}

}  // namespace

CommandOutcome run_command(const std::vector<std::string>& argv) {
  CLI::App app{"Counting m^2 - n^2 = c (mod q) in boxes and checking the "
               "second-moment bounds",
               "qcong"};
  app.require_subcommand(1);
  Args a;

  auto* count = app.add_subcommand("count", "A, A0 and Delta^2 for one class");
  count->add_option("--q", a.q, "odd modulus")->required();
  count->add_option("--M", a.M, "box side for m")->required();
  count->add_option("--N", a.N, "box side for n")->required();
  count->add_option("--c", a.c, "class in [1,q]")->required();
  count->add_flag("--brute", a.brute, "cross-check by enumeration");

  auto* a0 = app.add_subcommand("a0", "complete-box count from the divisor sum");
  a0->add_option("--q", a.q, "odd modulus")->required();
  a0->add_option("--c", a.c, "class in [1,q]")->required();
  a0->add_flag("--brute", a.brute, "cross-check over the q x q grid");

  auto* moment = app.add_subcommand("moment", "second moment over all classes");
  moment->add_option("--q", a.q, "odd modulus")->required();
  moment->add_option("--M", a.M, "box side for m")->required();
  moment->add_option("--N", a.N, "box side for n")->required();
  moment->add_flag("--stratify", a.stratify, "split by d = gcd(c,q)");

  std::vector<std::string> suites{"all"};
  for (auto n : suite_names()) suites.emplace_back(n);
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", a.suite, "suite name")
      ->required()
      ->check(CLI::IsMember(suites));
  verify->add_option("--qmax", a.qmax, "largest modulus (suite default if 0)")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--cases", a.cases, "number of random cases")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", a.seed, "random seed")->capture_default_str();
  verify->add_option("--out", a.out, "also write the report here");

  auto* sweep = app.add_subcommand("sweep", "second moments across moduli");
  sweep->add_option("--config", a.config, "JSON sweep config")->required();
  sweep->add_option("--out", a.out, "CSV or .json output (overrides config)");

  auto* bounds = app.add_subcommand("bounds", "factorization, phi, tau, r");
  bounds->add_option("--q", a.q, "modulus")->required()->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {0, app.help(), {}};
  } catch (const CLI::ParseError& e) {
    return {2, {}, std::string(e.what()) + "\n" + app.help()};
  }

  try {
    if (*count) return do_count(a);
    if (*a0) return do_a0(a);
    if (*moment) return do_moment(a);
    if (*verify) return do_verify(a);
    if (*sweep) return do_sweep(a);
    if (*bounds) return do_bounds(a);
  } catch (const Error& e) {
    const int code = e.code() == ErrorCode::kReductionMismatch ? 1 : 2;
    std::string usage;
    for (auto* sub : app.get_subcommands()) usage = sub->help();
    return {code, {}, std::string("error: ") + e.what() + "\n" + usage};
  }
  return {2, {}, app.help()};
}

}  // namespace qcong::cli
