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
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcong/counting.hpp"
#include "qcong/rational.hpp"

namespace qcong {

enum class BoxRule { kTwoThirds, kFixed, kRatio };

struct Fraction {
  std::int64_t num = 1;
  std::int64_t den = 1;

  /// Parses "num/den" (or a bare integer). Throws InvalidConfig.
  static Fraction parse(const std::string& text);
};

struct ModulusRange {
  std::int64_t min = 3;
  std::int64_t max = 3;
  std::int64_t step = 2;
};

struct SweepConfig {
  std::vector<std::int64_t> q_list;
  std::optional<ModulusRange> range;  // used when q_list is empty
  BoxRule box_rule = BoxRule::kTwoThirds;
  std::int64_t M = 0;  // kFixed
  std::int64_t N = 0;
  Fraction rho_m;  // kRatio
  Fraction rho_n;
  std::uint64_t seed = 42;
  bool stratify = false;
  std::string output_path;
  unsigned workers = 0;  // 0 = hardware concurrency
};

SweepConfig parse_sweep_config(const std::string& json_text);
SweepConfig load_sweep_config(const std::filesystem::path& path);

/// Moduli of the sweep in increasing order. Even values in an explicit list
/// are kept (they become warning records); even values of a range are
/// skipped.
std::vector<std::int64_t> sweep_moduli(const SweepConfig& config);

/// Smallest integer M with M^3 >= q^2, i.e. ceil(q^(2/3)).
std::int64_t ceil_two_thirds(std::int64_t q);

/// Box sides for modulus q under the configured rule, clamped to [1, q].
std::pair<std::int64_t, std::int64_t> box_sides(const SweepConfig& config,
                                                std::int64_t q);

/// q^(4/3) r^3.
double hb_bound_value(std::int64_t q, std::int64_t r);

struct MomentRecord {
  std::int64_t q = 0;
  std::int64_t M = 0;
  std::int64_t N = 0;
  Rational V;
  double V_float = 0.0;
  std::int64_t theorem_base = 0;  // (M + N)^2
  std::int64_t hb_r = 1;
  double hb_bound = 0.0;
  double ratio_theorem = 0.0;
  std::optional<double> ratio_hb;  // only when M == N
  std::optional<std::map<std::int64_t, Rational>> strata;
  std::optional<std::string> warning;  // set for skipped moduli
};

MomentRecord make_moment_record(const BoxSpec& box, bool stratify);

using SweepProgress = std::function<void(const MomentRecord&)>;

/// One record per modulus, ordered by q. Moduli are processed concurrently
/// but the output never depends on the worker count.
std::vector<MomentRecord> run_sweep(const SweepConfig& config,
                                    const SweepProgress& progress = {});

inline constexpr const char* kCsvHeader =
    "q,M,N,V,theorem_base,ratio_theorem,r,hb_bound,ratio_hb";

/// Warning records are omitted from the CSV.
void write_csv(std::ostream& out, std::span<const MomentRecord> records);
void write_json(std::ostream& out, std::span<const MomentRecord> records);

/// JSON when the path ends in ".json", CSV otherwise. Throws IoError.
void write_sweep_output(const std::filesystem::path& path,
                        std::span<const MomentRecord> records);

/// Decimal with 12 significant digits.
std::string format_decimal(double value);

struct PowerFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

/// Least squares line through (log x, log y). Points with y <= 0 are dropped.
/// Throws DegenerateFit with fewer than two usable points.
PowerFit fit_exponent(std::span<const std::pair<double, double>> points);

inline constexpr double kResidualExponentThreshold = 0.5;

struct BoundReport {
  bool degenerate = false;
  std::optional<PowerFit> moment_fit;    // V vs q
  std::optional<PowerFit> residual_fit;  // V / (M+N)^2 vs q
  std::optional<PowerFit> hb_fit;        // V / (q^(4/3) r^3) vs q, M == N
  double max_ratio_theorem = 0.0;
  std::optional<double> max_ratio_hb;
  std::string theorem_verdict;
  std::string hb_verdict;

  std::string render() const;
};

/// Throws DegenerateFit for fewer than two usable records.
BoundReport bound_report(std::span<const MomentRecord> records);

}  // namespace qcong
