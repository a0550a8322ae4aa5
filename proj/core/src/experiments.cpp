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

#include "qcong/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qcong/error.hpp"
#include "qcong/numtheory.hpp"

namespace qcong {
namespace {

using nlohmann::json;

[[noreturn]] void bad_config(const std::string& why) {
  throw Error(ErrorCode::kInvalidConfig, "invalid sweep config: " + why);
}

std::int64_t clamp_side(std::int64_t value, std::int64_t q) {
  return std::clamp<std::int64_t>(value, 1, q);
}

// ceil(q * num / den) for nonnegative operands.
std::int64_t scaled_ceil(std::int64_t q, const Fraction& rho) {
  const auto prod = static_cast<__int128>(q) * rho.num;
  return static_cast<std::int64_t>((prod + rho.den - 1) / rho.den);
}

MomentRecord warning_record(std::int64_t q, const std::string& why) {
  MomentRecord rec;
  rec.q = q;
  rec.warning = why;
  return rec;
}

}  // namespace

Fraction Fraction::parse(const std::string& text) {
  Fraction out;
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      out.num = std::stoll(text, &used);
      if (used != text.size()) bad_config("malformed fraction '" + text + "'");
      out.den = 1;
    } else {
      const std::string num = text.substr(0, slash);
      const std::string den = text.substr(slash + 1);
      out.num = std::stoll(num, &used);
      if (used != num.size()) bad_config("malformed fraction '" + text + "'");
      out.den = std::stoll(den, &used);
      if (used != den.size()) bad_config("malformed fraction '" + text + "'");
    }
  } catch (const std::logic_error&) {
    bad_config("malformed fraction '" + text + "'");
  }
  if (out.den <= 0 || out.num <= 0) {
    bad_config("fraction must be positive: '" + text + "'");
  }
  return out;
}

SweepConfig parse_sweep_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad_config(e.what());
  }
  if (!doc.is_object()) bad_config("top level must be an object");

  SweepConfig cfg;
  try {
    if (doc.contains("q_list")) {
      cfg.q_list = doc.at("q_list").get<std::vector<std::int64_t>>();
      if (cfg.q_list.empty()) bad_config("q_list is empty");
    } else if (doc.contains("q_min") && doc.contains("q_max")) {
      ModulusRange range;
      range.min = doc.at("q_min").get<std::int64_t>();
      range.max = doc.at("q_max").get<std::int64_t>();
      range.step = doc.value("q_step", std::int64_t{2});
      if (range.step < 1) bad_config("q_step must be positive");
      if (range.max < range.min) bad_config("q_max < q_min");
      cfg.range = range;
    } else {
      bad_config("need q_list or q_min/q_max");
    }

    const std::string rule = doc.value("box_rule", std::string("two-thirds"));
    if (rule == "two-thirds") {
      cfg.box_rule = BoxRule::kTwoThirds;
    } else if (rule == "fixed") {
      cfg.box_rule = BoxRule::kFixed;
      if (!doc.contains("M") || !doc.contains("N")) {
        bad_config("box_rule 'fixed' requires M and N");
      }
      cfg.M = doc.at("M").get<std::int64_t>();
      cfg.N = doc.at("N").get<std::int64_t>();
      if (cfg.M < 1 || cfg.N < 1) bad_config("M and N must be positive");
    } else if (rule == "ratio") {
      cfg.box_rule = BoxRule::kRatio;
      if (!doc.contains("rho_m") || !doc.contains("rho_n")) {
        bad_config("box_rule 'ratio' requires rho_m and rho_n");
      }
      cfg.rho_m = Fraction::parse(doc.at("rho_m").get<std::string>());
      cfg.rho_n = Fraction::parse(doc.at("rho_n").get<std::string>());
    } else {
      bad_config("unknown box_rule '" + rule + "'");
    }

    cfg.seed = doc.value("seed", std::uint64_t{42});
    cfg.stratify = doc.value("stratify", false);
    cfg.output_path = doc.value("output", std::string());
    cfg.workers = doc.value("workers", 0u);
  } catch (const json::exception& e) {
    bad_config(e.what());
  }
  return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot read config " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_sweep_config(buf.str());
}

std::vector<std::int64_t> sweep_moduli(const SweepConfig& config) {
  std::vector<std::int64_t> out;
  if (!config.q_list.empty()) {
    out = config.q_list;
  } else if (config.range) {
    for (std::int64_t q = config.range->min; q <= config.range->max;
         q += config.range->step) {
      if (q % 2 != 0 && q >= 3) out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::int64_t ceil_two_thirds(std::int64_t q) {
  const auto target = static_cast<__int128>(q) * q;
  auto m = static_cast<std::int64_t>(std::cbrt(static_cast<double>(target)));
  auto cube = [](std::int64_t k) { return static_cast<__int128>(k) * k * k; };
  while (m > 0 && cube(m - 1) >= target) --m;
  while (cube(m) < target) ++m;
  return m;
}

std::pair<std::int64_t, std::int64_t> box_sides(const SweepConfig& config,
                                                std::int64_t q) {
  switch (config.box_rule) {
    case BoxRule::kTwoThirds: {
      const std::int64_t side = clamp_side(ceil_two_thirds(q), q);
      return {side, side};
    }
    case BoxRule::kFixed:
      return {clamp_side(config.M, q), clamp_side(config.N, q)};
    case BoxRule::kRatio:
      return {clamp_side(scaled_ceil(q, config.rho_m), q),
              clamp_side(scaled_ceil(q, config.rho_n), q)};
  }
  return {1, 1};
}

double hb_bound_value(std::int64_t q, std::int64_t r) {
  const double rd = static_cast<double>(r);
  return std::pow(static_cast<double>(q), 4.0 / 3.0) * rd * rd * rd;
}

MomentRecord make_moment_record(const BoxSpec& box, bool stratify) {
  validate(box);
  MomentRecord rec;
  rec.q = box.q;
  rec.M = box.M;
  rec.N = box.N;
  if (stratify) {
    rec.strata = stratified_moments(box);
    rec.V = 0;
    for (const auto& [d, s] : *rec.strata) rec.V += s;
  } else {
    rec.V = second_moment(box);
  }
  rec.V_float = to_double(rec.V);
  rec.theorem_base = (box.M + box.N) * (box.M + box.N);
  rec.hb_r = static_cast<std::int64_t>(
      hb_r(factorize(static_cast<std::uint64_t>(box.q))));
  rec.hb_bound = hb_bound_value(box.q, rec.hb_r);
  rec.ratio_theorem = to_double(rec.V / rec.theorem_base);
  if (box.M == box.N) rec.ratio_hb = rec.V_float / rec.hb_bound;
  return rec;
}

std::vector<MomentRecord> run_sweep(const SweepConfig& config,
                                    const SweepProgress& progress) {
  const auto moduli = sweep_moduli(config);
  std::vector<MomentRecord> records(moduli.size());

  auto compute = [&](std::size_t i) {
    const std::int64_t q = moduli[i];
    if (q < 3 || q % 2 == 0) {
      records[i] = warning_record(
          q, q % 2 == 0 ? "EvenModulus: modulus must be odd"
                        : "OutOfRange: modulus must be >= 3");
      return;
    }
    const auto [M, N] = box_sides(config, q);
    records[i] = make_moment_record(BoxSpec{M, N, q}, config.stratify);
  };

  unsigned workers = config.workers != 0
                         ? config.workers
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, std::max<std::size_t>(1, moduli.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      compute(i);
      if (progress) progress(records[i]);
    }
    return records;
  }

  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < moduli.size(); i = next++) compute(i);
      });
    }
  }
  if (progress) {
    for (const auto& rec : records) progress(rec);
  }
  return records;
}

std::string format_decimal(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_csv(std::ostream& out, std::span<const MomentRecord> records) {
  out << kCsvHeader << '\n';
  for (const auto& rec : records) {
    if (rec.warning) continue;
    out << rec.q << ',' << rec.M << ',' << rec.N << ','
        << format_decimal(rec.V_float) << ',' << rec.theorem_base << ','
        << format_decimal(rec.ratio_theorem) << ',' << rec.hb_r << ','
        << format_decimal(rec.hb_bound) << ','
        << (rec.ratio_hb ? format_decimal(*rec.ratio_hb) : std::string())
        << '\n';
  }
}

void write_json(std::ostream& out, std::span<const MomentRecord> records) {
  json arr = json::array();
  for (const auto& rec : records) {
    json obj;
    obj["q"] = rec.q;
    if (rec.warning) {
      obj["warning"] = *rec.warning;
      arr.push_back(std::move(obj));
      continue;
    }
    obj["M"] = rec.M;
    obj["N"] = rec.N;
    obj["V"] = rec.V_float;
    obj["V_exact"] = to_string(rec.V);
    obj["theorem_base"] = rec.theorem_base;
    obj["ratio_theorem"] = rec.ratio_theorem;
    obj["r"] = rec.hb_r;
    obj["hb_bound"] = rec.hb_bound;
    obj["ratio_hb"] = rec.ratio_hb ? json(*rec.ratio_hb) : json(nullptr);
    if (rec.strata) {
      json strata = json::object();
      for (const auto& [d, s] : *rec.strata) {
        strata[std::to_string(d)] = to_string(s);
      }
      obj["strata"] = std::move(strata);
    }
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

void write_sweep_output(const std::filesystem::path& path,
                        std::span<const MomentRecord> records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  }
  if (path.extension() == ".json") {
    write_json(out, records);
  } else {
    write_csv(out, records);
  }
  out.flush();
  if (!out) {
    throw Error(ErrorCode::kIoError, "write failed for " + path.string());
  }
}

PowerFit fit_exponent(std::span<const std::pair<double, double>> points) {
  std::vector<std::pair<double, double>> logs;
  for (const auto& [x, y] : points) {
    if (x > 0.0 && y > 0.0) logs.emplace_back(std::log(x), std::log(y));
  }
  if (logs.size() < 2) {
    throw Error(ErrorCode::kDegenerateFit,
                "need at least two points with positive coordinates");
  }
  const double n = static_cast<double>(logs.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [lx, ly] : logs) {
    mx += lx;
    my += ly;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [lx, ly] : logs) {
    sxx += (lx - mx) * (lx - mx);
    sxy += (lx - mx) * (ly - my);
  }
  if (sxx == 0.0) {
    throw Error(ErrorCode::kDegenerateFit, "all x coordinates coincide");
  }
  PowerFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = logs.size();
  return fit;
}

namespace {

std::string verdict_for(const PowerFit& fit) {
  if (fit.slope <= kResidualExponentThreshold) {
    return "consistent at desk scale";
  }
  return "exceeds envelope: residual exponent " + format_decimal(fit.slope) +
         " > " + format_decimal(kResidualExponentThreshold);
}

}  // namespace

BoundReport bound_report(std::span<const MomentRecord> records) {
  std::vector<const MomentRecord*> usable;
  for (const auto& rec : records) {
    if (!rec.warning) usable.push_back(&rec);
  }
  if (usable.size() < 2) {
    throw Error(ErrorCode::kDegenerateFit,
                "bound report needs at least two records");
  }

  BoundReport report;
  std::vector<std::pair<double, double>> moment_pts, residual_pts, hb_pts;
  for (const MomentRecord* rec : usable) {
    const double q = static_cast<double>(rec->q);
    moment_pts.emplace_back(q, rec->V_float);
    residual_pts.emplace_back(q, rec->ratio_theorem);
    report.max_ratio_theorem =
        std::max(report.max_ratio_theorem, rec->ratio_theorem);
    if (rec->ratio_hb) {
      hb_pts.emplace_back(q, *rec->ratio_hb);
      report.max_ratio_hb = std::max(report.max_ratio_hb.value_or(0.0),
                                     *rec->ratio_hb);
    }
  }

  const auto nonzero = std::count_if(
      usable.begin(), usable.end(),
      [](const MomentRecord* r) { return r->V != 0; });
  if (nonzero < 2) {
    report.degenerate = true;
    report.theorem_verdict = "degenerate: zero moments";
    report.hb_verdict = "degenerate: zero moments";
    return report;
  }

  report.moment_fit = fit_exponent(moment_pts);
  report.residual_fit = fit_exponent(residual_pts);
  report.theorem_verdict = verdict_for(*report.residual_fit);
  try {
    report.hb_fit = fit_exponent(hb_pts);
    report.hb_verdict = verdict_for(*report.hb_fit);
  } catch (const Error&) {
    report.hb_verdict = "not applicable: fewer than two records with M = N";
  }
  return report;
}

std::string BoundReport::render() const {
  std::ostringstream out;
  if (moment_fit) {
    out << "exponent of V vs q: " << format_decimal(moment_fit->slope) << '\n';
  }
  if (residual_fit) {
    out << "exponent of V/(M+N)^2 vs q: " << format_decimal(residual_fit->slope)
        << '\n';
  }
  if (hb_fit) {
    out << "exponent of V/(q^(4/3) r^3) vs q: " << format_decimal(hb_fit->slope)
        << '\n';
  }
  out << "max V/(M+N)^2: " << format_decimal(max_ratio_theorem) << '\n';
  if (max_ratio_hb) {
    out << "max V/(q^(4/3) r^3): " << format_decimal(*max_ratio_hb) << '\n';
  }
  out << "(M+N)^2 bound: " << theorem_verdict << '\n';
  out << "q^(4/3) r^3 bound: " << hb_verdict << '\n';
  return out.str();
}

}  // namespace qcong
