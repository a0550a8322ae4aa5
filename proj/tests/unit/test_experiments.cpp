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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qcong/error.hpp"
#include "qcong/experiments.hpp"
#include "qcong/numtheory.hpp"

using namespace qcong;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qcong_unit";
  fs::create_directories(dir);
  return dir / name;
}

Rational brute_moment(const BoxSpec& box) {
  Rational total = 0;
  for (std::int64_t c = 1; c <= box.q; ++c) {
    total += delta(box, c, count_box_brute(box, c)).delta_sq();
  }
  return total;
}

}  // namespace

TEST_CASE("fit_exponent") {
  using P = std::pair<double, double>;
  std::vector<P> square{{10, 100}, {100, 10'000}};
  CHECK(fit_exponent(square).slope == doctest::Approx(2.0));
  std::vector<P> flat{{10, 5}, {100, 5}};
  CHECK(fit_exponent(flat).slope == doctest::Approx(0.0));
  std::vector<P> cube{{2, 8}, {4, 64}, {8, 512}};
  const auto fit = fit_exponent(cube);
  CHECK(fit.slope == doctest::Approx(3.0));
  CHECK(fit.intercept == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fit.points == 3);

  std::vector<P> with_zero{{2, 8}, {3, 0}, {4, 64}};
  CHECK(fit_exponent(with_zero).points == 2);

  std::vector<P> one{{2, 8}};
  std::vector<P> zeros{{2, 0}, {3, 0}, {4, 1}};
  std::vector<P> same_x{{2, 1}, {2, 5}};
  for (const auto* pts : {&one, &zeros, &same_x}) {
    try {
      fit_exponent(*pts);
      FAIL("expected DegenerateFit");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kDegenerateFit);
    }
  }
}

TEST_CASE("ceil_two_thirds against a float-free scan") {
  for (std::int64_t q = 1; q <= 20'000; q += 7) {
    std::int64_t m = 0;
    while (m * m * m < q * q) ++m;
    REQUIRE(ceil_two_thirds(q) == m);
  }
  CHECK(ceil_two_thirds(99'999) == 2155);
  CHECK(ceil_two_thirds(27) == 9);
}

TEST_CASE("config parsing") {
  const auto cfg = parse_sweep_config(
      R"({"q_list":[15,3,9],"box_rule":"fixed","M":2,"N":2,"seed":7,"stratify":true,"output":"x.csv"})");
  CHECK(sweep_moduli(cfg) == std::vector<std::int64_t>{3, 9, 15});
  CHECK(cfg.box_rule == BoxRule::kFixed);
  CHECK(cfg.seed == 7);
  CHECK(cfg.stratify);
  CHECK(cfg.output_path == "x.csv");

  const auto range = parse_sweep_config(
      R"({"q_min":501,"q_max":1001,"q_step":250})");
  CHECK(range.box_rule == BoxRule::kTwoThirds);
  CHECK(sweep_moduli(range) == std::vector<std::int64_t>{501, 751, 1001});

  const auto even_steps = parse_sweep_config(
      R"({"q_min":10,"q_max":20,"q_step":1})");
  CHECK(sweep_moduli(even_steps) ==
        std::vector<std::int64_t>{11, 13, 15, 17, 19});

  const auto ratio = parse_sweep_config(
      R"({"q_list":[101],"box_rule":"ratio","rho_m":"1/2","rho_n":"1/3"})");
  CHECK(box_sides(ratio, 101) == std::pair<std::int64_t, std::int64_t>{51, 34});

  for (const char* bad :
       {"[]", "{", R"({"box_rule":"fixed"})", R"({"q_list":[3],"box_rule":"fixed"})",
        R"({"q_list":[3],"box_rule":"ratio","rho_m":"1/0","rho_n":"1"})",
        R"({"q_list":[3],"box_rule":"square"})", R"({"q_list":"3"})"}) {
    try {
      parse_sweep_config(bad);
      FAIL("accepted " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInvalidConfig);
    }
  }
  CHECK_THROWS_AS(load_sweep_config("/nonexistent/qcong.json"), Error);
}

TEST_CASE("box rules clamp to [1, q]") {
  SweepConfig cfg;
  cfg.box_rule = BoxRule::kFixed;
  cfg.M = 50;
  cfg.N = 2;
  CHECK(box_sides(cfg, 11) == std::pair<std::int64_t, std::int64_t>{11, 2});
  cfg.box_rule = BoxRule::kTwoThirds;
  CHECK(box_sides(cfg, 3) == std::pair<std::int64_t, std::int64_t>{3, 3});
}

TEST_CASE("run_sweep examples") {
  SweepConfig cfg;
  cfg.q_list = {3};
  cfg.box_rule = BoxRule::kFixed;
  cfg.M = cfg.N = 2;
  const auto recs = run_sweep(cfg);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].V == Rational(128, 27));
  CHECK(recs[0].theorem_base == 16);
  CHECK(recs[0].ratio_theorem == doctest::Approx(128.0 / 27.0 / 16.0));
  CHECK(recs[0].ratio_hb.has_value());

  cfg.q_list = {9};
  cfg.M = cfg.N = 9;
  CHECK(run_sweep(cfg)[0].V == 0);
}

TEST_CASE("two-thirds sweep rechecked against per-class brute force") {
  SweepConfig cfg = parse_sweep_config(
      R"({"q_min":501,"q_max":1001,"q_step":250,"stratify":true})");
  const auto recs = run_sweep(cfg);
  REQUIRE(recs.size() == 3);
  for (const auto& rec : recs) {
    CHECK(rec.M == ceil_two_thirds(rec.q));
    CHECK(rec.V == brute_moment(BoxSpec{rec.M, rec.N, rec.q}));
    REQUIRE(rec.strata.has_value());
    Rational total = 0;
    for (const auto& [d, s] : *rec.strata) total += s;
    CHECK(total == rec.V);
    CHECK(rec.theorem_base == (rec.M + rec.N) * (rec.M + rec.N));
    const auto r = hb_r(factorize(static_cast<std::uint64_t>(rec.q)));
    CHECK(rec.hb_r == static_cast<std::int64_t>(r));
    CHECK(rec.hb_bound == hb_bound_value(rec.q, rec.hb_r));
  }
}

TEST_CASE("even moduli become warning records") {
  SweepConfig cfg;
  cfg.q_list = {4, 5};
  cfg.box_rule = BoxRule::kFixed;
  cfg.M = cfg.N = 2;
  const auto recs = run_sweep(cfg);
  REQUIRE(recs.size() == 2);
  REQUIRE(recs[0].warning.has_value());
  CHECK(recs[0].warning->find("EvenModulus") != std::string::npos);
  CHECK_FALSE(recs[1].warning.has_value());

  std::ostringstream csv;
  write_csv(csv, recs);
  CHECK(csv.str().find("\n4,") == std::string::npos);
  std::ostringstream js;
  write_json(js, recs);
  const auto doc = nlohmann::json::parse(js.str());
  CHECK(doc[0]["q"] == 4);
  CHECK(doc[0].contains("warning"));
}

TEST_CASE("CSV layout") {
  SweepConfig cfg;
  cfg.q_list = {3, 11};
  cfg.box_rule = BoxRule::kFixed;
  cfg.M = 3;
  cfg.N = 2;
  std::ostringstream csv;
  write_csv(csv, run_sweep(cfg));
  std::istringstream lines(csv.str());
  std::string header, row;
  std::getline(lines, header);
  CHECK(header == "q,M,N,V,theorem_base,ratio_theorem,r,hb_bound,ratio_hb");
  std::getline(lines, row);
  CHECK(row.rfind("3,3,2,", 0) == 0);
  CHECK(row.back() == ',');  // ratio_hb empty when M != N
  CHECK(format_decimal(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("sweep output is deterministic and independent of workers") {
  SweepConfig cfg = parse_sweep_config(
      R"({"q_list":[101,103,105,201,243,255],"stratify":true})");
  cfg.workers = 1;
  const auto serial = run_sweep(cfg);
  cfg.workers = 4;
  const auto parallel = run_sweep(cfg);

  for (const char* name : {"a.csv", "b.csv", "a.json", "b.json"}) {
    const bool first = name[0] == 'a';
    write_sweep_output(scratch(name), first ? serial : parallel);
  }
  CHECK(slurp(scratch("a.csv")) == slurp(scratch("b.csv")));
  CHECK(slurp(scratch("a.json")) == slurp(scratch("b.json")));
  const auto doc = nlohmann::json::parse(slurp(scratch("a.json")));
  CHECK(doc.size() == 6);
  CHECK(doc[0].contains("strata"));
  CHECK_THROWS_AS(write_sweep_output("/nonexistent/dir/x.csv", serial), Error);
}

TEST_CASE("bound_report") {
  SweepConfig cfg = parse_sweep_config(R"({"q_list":[301,501,701,901,1101]})");
  const auto recs = run_sweep(cfg);
  const auto report = bound_report(recs);
  CHECK_FALSE(report.degenerate);
  REQUIRE(report.residual_fit.has_value());
  REQUIRE(report.hb_fit.has_value());
  CHECK(report.theorem_verdict == "consistent at desk scale");
  CHECK(report.render().find("exponent of V vs q") != std::string::npos);

  try {
    bound_report(std::span(recs).first(1));
    FAIL("expected DegenerateFit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateFit);
  }

  SweepConfig full;
  full.q_list = {3, 5, 7};
  full.box_rule = BoxRule::kRatio;
  full.rho_m = full.rho_n = Fraction{1, 1};
  const auto zero = bound_report(run_sweep(full));
  CHECK(zero.degenerate);
  CHECK(zero.theorem_verdict == "degenerate: zero moments");
}
